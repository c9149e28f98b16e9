//! V_max of the graded 1D basis as m grows. Writes `fig3.csv`.

use lsmc_stability::experiments::{fig3_csv, run_fig3, ExperimentConfig, ExperimentId, Range};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = ExperimentConfig {
        m_range: Range::new(1, 30, 1),
        include_expanded: true,
        ..ExperimentConfig::defaults(ExperimentId::Fig3)
    };
    let rows = run_fig3(&cfg)?;
    std::fs::write("fig3.csv", fig3_csv(&rows))?;
    for r in &rows {
        println!("m={:<3} v_max={:<14.6} monomial route={:.3e}", r.m, r.v_max, r.v_max_expanded.unwrap_or(f64::NAN));
    }
    Ok(())
}
