//! Hardy–Krause variation of basis products, computed two ways.
//!
//! The recurrence route stays accurate at every degree. Multiplying the
//! factors out into monomials first is exact in exact arithmetic but loses everything
//! to rounding once the degree passes ~30.

use lsmc_stability::basis::TensorBasis;
use lsmc_stability::variation::{v_max, v_max_expanded};

fn main() -> lsmc_stability::Result<()> {
    let basis = TensorBasis::graded(1, 30)?;
    let stable = v_max(&basis);
    let expanded = v_max_expanded(&basis)?;
    println!("{:>3} {:>14} {:>14}", "m", "recurrence", "monomial");
    for m in [1, 2, 3, 5, 10, 15, 20, 25, 30] {
        let lead = |r: &lsmc_stability::variation::VariationReport| {
            (0..m).flat_map(|i| (0..m).map(move |j| (i, j))).map(|(i, j)| r.get(i, j)).fold(0.0, f64::max)
        };
        println!("{m:>3} {:>14.6} {:>14.6e}", lead(&stable), lead(&expanded));
    }

    let two_d = v_max(&TensorBasis::graded(2, 6)?);
    println!("\n2D graded basis, m = 6: V_max = {}", two_d.v_max);
    Ok(())
}
