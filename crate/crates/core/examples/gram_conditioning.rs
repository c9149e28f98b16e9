//! Conditioning of the scaled Gram matrix against the Koksma–Hlawka bound.

use lsmc_stability::basis::TensorBasis;
use lsmc_stability::gram::{GramReport, KhInputs, GRAM_CSV_HEADER};
use lsmc_stability::sequences::{empirical_c, generate, GeneratorSpec};
use lsmc_stability::variation::v_max;

fn main() -> lsmc_stability::Result<()> {
    let spec = GeneratorSpec::van_der_corput(2);
    let basis = TensorBasis::graded(1, 3)?;
    let c = empirical_c(&spec, &(3..=4096).collect::<Vec<_>>())?;
    let vm = v_max(&basis).v_max;
    let all = generate(&spec, 4096)?;

    println!("{GRAM_CSV_HEADER}");
    for k in 4..=12 {
        let r = GramReport::compute(&all.prefix(1 << k), &basis, Some(KhInputs { c, v_max: vm }))?;
        println!("{}", r.csv_row());
    }

    let r = GramReport::compute(&all.prefix(64), &basis, None)?;
    println!("\nN = 64 Gram matrix:\n{}", r.matrix_csv());
    for (l, d) in r.eigenvalues.iter().zip(&r.gershgorin) {
        println!("lambda = {l:.6}   disc centre {:.6} radius {:.6}", d.center, d.radius);
    }
    Ok(())
}
