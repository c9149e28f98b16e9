//! Shifted Legendre polynomials and graded tensor bases.

use lsmc_stability::basis::{shifted_legendre, TensorBasis};

fn main() -> lsmc_stability::Result<()> {
    for n in 0..=4 {
        let p = shifted_legendre(n)?;
        let c: Vec<String> = p.coefficients().iter().map(|c| format!("{c:+.4}")).collect();
        println!("p_{n}: [{}]  ||p_{n}||^2 = {}", c.join(", "), p.inner_product_exact(&p));
    }

    let basis = TensorBasis::graded(2, 10)?;
    print!("\n{}", basis.metadata_csv());

    let mut worst = 0.0f64;
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            let delta = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((basis.inner_product_exact(i, j)? - delta).abs());
        }
    }
    println!("\nmax |<phi_i, phi_j> - delta_ij| = {worst:e}");
    Ok(())
}
