//! κ against the basis size at N = 200. Writes `fig2.csv`.

use lsmc_stability::experiments::{fig2_csv, run_fig2, ExperimentConfig, ExperimentId};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let rows = run_fig2(&ExperimentConfig::defaults(ExperimentId::Fig2))?;
    std::fs::write("fig2.csv", fig2_csv(&rows))?;
    for r in rows.iter().step_by(5) {
        println!("m={:<3} kappa={:<12.4e} kappa/m={:.4e} {}", r.m, r.kappa, r.quotient_by_m, r.status);
    }
    Ok(())
}
