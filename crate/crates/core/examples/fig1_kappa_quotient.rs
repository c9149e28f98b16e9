//! κ - 1 against N for van der Corput base 2 and three basis functions,
//! with the quotient by the rate ln N / N. Writes `fig1.csv` and `fig1.svg`.

use lsmc_stability::experiments::{fig1_csv, run_fig1, ExperimentConfig, ExperimentId};
use lsmc_stability::plot::LinePlot;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let rows = run_fig1(&ExperimentConfig::defaults(ExperimentId::Fig1))?;
    std::fs::write("fig1.csv", fig1_csv(&rows))?;
    let plot = LinePlot::new("condition number, vdC base 2, m = 3", "N", "value")
        .log_y()
        .add("kappa - 1", rows.iter().map(|r| (r.n as f64, r.kappa_minus_1)).collect())
        .add("quotient", rows.iter().map(|r| (r.n as f64, r.quotient)).collect());
    std::fs::write("fig1.svg", plot.to_svg())?;
    for r in rows.iter().filter(|r| [10, 100, 1000, 5000].contains(&r.n)) {
        println!("N={:<5} kappa-1={:.5} quotient={:.3}", r.n, r.kappa_minus_1, r.quotient);
    }
    Ok(())
}
