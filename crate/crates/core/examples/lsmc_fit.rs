//! Toy least-squares Monte Carlo: recover a polynomial response surface from
//! noisy inner simulations.

use lsmc_stability::lsmc::{run_pipeline, PipelineConfig};

const CONFIG: &str = "\
generator = sobol
s = 2
m = 10
n_inner = 4
sigma = 0.2
seed = 1
validation_n = 2000
out_of_span_exp = 0.05
";

fn main() -> lsmc_stability::Result<()> {
    println!("{:>6} {:>10} {:>12} {:>12}", "N", "kappa", "rmse", "max error");
    for n in [64, 256, 1024, 4096, 16384] {
        let cfg = PipelineConfig::parse(&format!("{CONFIG}N = {n}\n"))?;
        let r = run_pipeline(&cfg)?;
        println!(
            "{n:>6} {:>10.4} {:>12.3e} {:>12.3e}",
            r.fit.kappa_used, r.validation.rmse, r.validation.max_abs_error
        );
    }
    Ok(())
}
