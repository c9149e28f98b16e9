//! Low-discrepancy point sets and their star discrepancy.
//!
//! `cargo run --example sequences`

use lsmc_stability::sequences::{empirical_c, generate, star_discrepancy, GeneratorSpec};

fn main() -> lsmc_stability::Result<()> {
    let specs = [
        ("van der Corput, base 2", GeneratorSpec::van_der_corput(2)),
        ("van der Corput, base 16", GeneratorSpec::van_der_corput(16)),
        ("pseudo-random", GeneratorSpec::pseudo_random(1, 1)),
    ];
    for (name, spec) in &specs {
        let ps = generate(spec, 4096)?;
        let d: Vec<String> = [64, 512, 4096]
            .iter()
            .map(|&n| Ok(format!("D*_{n} = {:.2e}", star_discrepancy(&ps.prefix(n))?.d_star)))
            .collect::<lsmc_stability::Result<_>>()?;
        let grid: Vec<usize> = (3..=4096).collect();
        println!("{name:<26} {}   C_emp = {:.3}", d.join("  "), empirical_c(spec, &grid)?);
    }

    // small 2D sets go through the brute-force box search
    let sobol = generate(&GeneratorSpec::sobol(2), 64)?;
    let halton = generate(&GeneratorSpec::halton(vec![2, 3]), 64)?;
    println!("\n2D, N = 64: Sobol D* = {:.4}, Halton D* = {:.4}",
        star_discrepancy(&sobol)?.d_star, star_discrepancy(&halton)?.d_star);
    print!("\nfirst Sobol points:\n{}", sobol.prefix(5).to_csv());
    Ok(())
}
