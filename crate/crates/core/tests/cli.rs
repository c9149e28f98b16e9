use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lsmc-stability"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

#[test]
fn print_defaults_matches_fixture() {
    let want = std::fs::read_to_string(fixture("defaults.txt")).unwrap();
    assert_eq!(stdout(&["experiment", "fig1", "--print-defaults"]), want);
}

#[test]
fn bound_worked_example() {
    let out = stdout(&["bound", "--theta", "2", "--C", "1", "--vmax", "3", "--m", "3", "--s", "1"]);
    assert_eq!(
        out,
        "theta,r,C,v_max,m,s,N_required,target\n2,0.3333333333333333,1,3,3,1,132,0.037037037037037035\n"
    );
    let g = stdout(&["bound", "--N", "4", "--C", "1", "--vmax", "3", "--m", "3", "--s", "1"]);
    assert!(g.lines().nth(1).unwrap().ends_with(",none"));
}

#[test]
fn sequence_csv() {
    assert_eq!(
        stdout(&["sequence", "--kind", "vdc", "--base", "2", "--n", "4"]),
        "index,x1\n0,0\n1,0.5\n2,0.25\n3,0.75\n"
    );
    let halton = stdout(&["sequence", "--kind", "halton", "--bases", "2,3", "--n", "2", "--skip", "1"]);
    assert_eq!(halton, "index,x1,x2\n1,0.5,0.3333333333333333\n2,0.25,0.6666666666666666\n");
}

#[test]
fn gram_summary() {
    let out = stdout(&["gram", "--kind", "vdc", "--base", "2", "--n", "4096", "--m", "3"]);
    let row: Vec<&str> = out.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(&row[..3], ["4096", "3", "1"]);
    let kappa: f64 = row[3].parse().unwrap();
    assert!(kappa > 1.0 && kappa < 1.01);
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        &["sequence", "--kind", "random", "--s", "3", "--seed", "5", "--n", "50"][..],
        &["experiment", "fig4", "--n-end", "300", "--stride", "50"][..],
        &["variation", "--m", "6"][..],
    ] {
        assert_eq!(stdout(args), stdout(args));
    }
}

#[test]
fn lsmc_run_from_file() {
    let path = fixture("pipeline.cfg");
    let out = stdout(&["lsmc", "run", path.to_str().unwrap()]);
    let mut lines = out.lines();
    assert!(lines.next().unwrap().starts_with("N,m,s,kappa,rmse,max_abs_error,beta_hat_1"));
    assert!(lines.next().unwrap().starts_with("1024,3,1,"));
}

#[test]
fn exit_codes() {
    let cap = run(&["bound", "--theta", "1.0000000001", "--C", "1e6", "--vmax", "1e6", "--m", "1000", "--s", "4"]);
    assert_eq!(cap.status.code(), Some(5));
    assert!(String::from_utf8_lossy(&cap.stderr).contains("cap"));
    let bad = run(&["sequence", "--kind", "halton", "--bases", "2,4", "--n", "3"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(!run(&["no-such-command"]).status.success());
}

#[test]
fn experiment_writes_files() {
    let dir = std::env::temp_dir().join(format!("lsmc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let csv = dir.join("fig3.csv");
    let svg = dir.join("fig3.svg");
    stdout(&[
        "experiment", "fig3", "--m-end", "8", "--out", csv.to_str().unwrap(), "--svg", svg.to_str().unwrap(),
    ]);
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("m,v_max\n1,0\n"));
    assert_eq!(text.lines().count(), 9);
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));
    std::fs::remove_dir_all(&dir).ok();
}
