//! How many scenarios guarantee a target condition number, and what a
//! given scenario count guarantees.

use lsmc_stability::basis::TensorBasis;
use lsmc_stability::bounds::{guaranteed_theta, required_n};
use lsmc_stability::gram::GramReport;
use lsmc_stability::sequences::{empirical_c, generate, GeneratorSpec};
use lsmc_stability::variation::v_max;

fn main() -> lsmc_stability::Result<()> {
    let spec = GeneratorSpec::van_der_corput(2);
    let c = empirical_c(&spec, &(3..=4096).collect::<Vec<_>>())?;
    for m in [2, 3, 4, 6] {
        let basis = TensorBasis::graded(1, m)?;
        let vm = v_max(&basis).v_max;
        for theta in [1.5, 2.0, 10.0] {
            let b = required_n(theta, c, vm, m, 1)?;
            let n = b.n_required;
            let measured = if n <= 1 << 20 {
                format!("{:.4}", GramReport::compute(&generate(&spec, n as usize)?, &basis, None)?.kappa)
            } else {
                "-".into()
            };
            println!("m={m} theta={theta:<4} N_required={n:<9} measured kappa={measured}");
        }
    }

    let basis = TensorBasis::graded(1, 3)?;
    let vm = v_max(&basis).v_max;
    for n in [100u64, 1_000, 10_000, 100_000] {
        match guaranteed_theta(n, c, vm, 3, 1)? {
            Some(t) => println!("N={n:<7} guaranteed kappa <= {t:.4}"),
            None => println!("N={n:<7} no guarantee"),
        }
    }
    Ok(())
}
