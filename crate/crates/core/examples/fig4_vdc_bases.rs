//! κ - 1 against N for several van der Corput bases. Writes `fig4.csv` and
//! `fig4.svg`.

use std::collections::BTreeMap;

use lsmc_stability::experiments::{fig4_csv, run_fig4, ExperimentConfig, ExperimentId};
use lsmc_stability::plot::LinePlot;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let rows = run_fig4(&ExperimentConfig::defaults(ExperimentId::Fig4))?;
    std::fs::write("fig4.csv", fig4_csv(&rows))?;
    let mut traces: BTreeMap<u64, Vec<(f64, f64)>> = BTreeMap::new();
    for r in &rows {
        traces.entry(r.base).or_default().push((r.n as f64, r.kappa_minus_1));
    }
    let mut plot = LinePlot::new("kappa - 1 by van der Corput base", "N", "kappa - 1").log_y();
    for (base, points) in &traces {
        let last = points.last().unwrap().1;
        println!("base {base:>2}: kappa-1 at N=5000 = {last:.5}");
        plot = plot.add(&format!("base {base}"), points.clone());
    }
    std::fs::write("fig4.svg", plot.to_svg())?;
    Ok(())
}
