//! Hardy–Krause variation of tensor-product polynomials.
//!
//! For `f(x) = ∏_k g_k(x_k)` the mixed partial anchored at 1 factorises, so
//! `V(f) = Σ_{u ≠ ∅} ∏_{k ∈ u} TV(g_k) · ∏_{k ∉ u} |g_k(1)|`, where `TV` is
//! the classical 1D total variation on `[0, 1]`. One-dimensional variations
//! are sums of jumps between consecutive critical points.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::basis::{Poly1D, ShiftedLegendre, TensorBasis};
use crate::error::Result;

/// Minimum number of grid cells scanned for sign changes of the derivative.
pub const MIN_GRID: usize = 4096;
/// Bisection stops once the bracket is narrower than this.
pub const BISECTION_WIDTH: f64 = 1e-13;

/// A smooth function on `[0, 1]` with a known derivative.
pub trait Smooth1D {
    fn value(&self, x: f64) -> f64;
    fn derivative(&self, x: f64) -> f64;
    /// Polynomial degree, used to size the critical-point grid.
    fn degree(&self) -> usize;
}

/// `p_a · p_b` evaluated through the Legendre recurrence rather than from
/// monomial coefficients, which lose all accuracy past degree ~20.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LegendreProduct {
    pub a: u32,
    pub b: u32,
}

impl Smooth1D for LegendreProduct {
    fn value(&self, x: f64) -> f64 {
        ShiftedLegendre.value(self.a, x) * ShiftedLegendre.value(self.b, x)
    }

    fn derivative(&self, x: f64) -> f64 {
        let (pa, da) = ShiftedLegendre.value_and_derivative(self.a, x);
        let (pb, db) = ShiftedLegendre.value_and_derivative(self.b, x);
        da * pb + pa * db
    }

    fn degree(&self) -> usize {
        (self.a + self.b) as usize
    }
}

/// Horner evaluation of a polynomial and its derivative.
struct Expanded<'a> {
    p: &'a Poly1D,
    dp: Poly1D,
}

impl Smooth1D for Expanded<'_> {
    fn value(&self, x: f64) -> f64 {
        self.p.eval(x)
    }

    fn derivative(&self, x: f64) -> f64 {
        self.dp.eval(x)
    }

    fn degree(&self) -> usize {
        self.p.degree()
    }
}

impl Smooth1D for Poly1D {
    fn value(&self, x: f64) -> f64 {
        self.eval(x)
    }

    // Differentiates on every call; use `total_variation_1d` for sweeps.
    fn derivative(&self, x: f64) -> f64 {
        Poly1D::derivative(self).eval(x)
    }

    fn degree(&self) -> usize {
        Poly1D::degree(self)
    }
}

fn grid_size(degree: usize) -> usize {
    MIN_GRID.max(degree * degree)
}

/// Roots of `f'` in the open interval, isolated by sign changes on a grid.
pub fn critical_points(f: &impl Smooth1D) -> Vec<f64> {
    let cells = grid_size(f.degree());
    let h = 1.0 / cells as f64;
    let mut out = Vec::new();
    let mut left = f.derivative(0.0);
    for i in 0..cells {
        let x0 = i as f64 * h;
        let x1 = if i + 1 == cells { 1.0 } else { (i + 1) as f64 * h };
        let right = f.derivative(x1);
        if left == 0.0 {
            if i > 0 {
                out.push(x0);
            }
        } else if right != 0.0 && (left < 0.0) != (right < 0.0) {
            out.push(bisect(f, x0, x1, left));
        }
        left = right;
    }
    out
}

fn bisect(f: &impl Smooth1D, mut lo: f64, mut hi: f64, lo_val: f64) -> f64 {
    let lo_neg = lo_val < 0.0;
    while hi - lo > BISECTION_WIDTH {
        let mid = 0.5 * (lo + hi);
        let v = f.derivative(mid);
        if v == 0.0 {
            return mid;
        }
        if (v < 0.0) == lo_neg {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Total variation of `f` on `[0, 1]`: sum of `|f(c_{k+1}) - f(c_k)|` over
/// the endpoints and the interior critical points.
pub fn total_variation(f: &impl Smooth1D) -> f64 {
    let mut prev = f.value(0.0);
    let mut tv = 0.0;
    for c in critical_points(f).into_iter().chain(std::iter::once(1.0)) {
        let v = f.value(c);
        tv += (v - prev).abs();
        prev = v;
    }
    tv
}

/// Total variation of a polynomial evaluated from its monomial coefficients.
pub fn total_variation_1d(p: &Poly1D) -> f64 {
    total_variation(&Expanded {
        p,
        dp: p.derivative(),
    })
}

/// Hardy–Krause variation of `∏_k g_k(x_k)` anchored at 1.
pub fn hk_variation_tensor<F: Smooth1D>(factors: &[F]) -> f64 {
    let parts: Vec<(f64, f64)> = factors
        .iter()
        .map(|g| (total_variation(g), g.value(1.0).abs()))
        .collect();
    hk_from_parts(&parts)
}

/// Sum over nonempty subsets given `(TV(g_k), |g_k(1)|)` per coordinate.
/// Expanded one coordinate at a time so every term stays nonnegative.
pub fn hk_from_parts(parts: &[(f64, f64)]) -> f64 {
    let mut nonempty = 0.0;
    let mut anchored = 1.0;
    for &(tv, end) in parts {
        nonempty = nonempty * (tv + end) + anchored * tv;
        anchored *= end;
    }
    nonempty
}

#[derive(Debug, Clone, PartialEq)]
pub struct VariationReport {
    pub m: usize,
    /// Row-major `m × m`, symmetric.
    pub pair_variation: Vec<f64>,
    pub v_max: f64,
}

impl VariationReport {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.pair_variation[i * self.m + j]
    }

    /// `i,j,variation` for every pair (positions from 1), then a
    /// `# v_max=` summary line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,j,variation\n");
        for i in 0..self.m {
            for j in 0..self.m {
                let _ = writeln!(out, "{},{},{}", i + 1, j + 1, self.get(i, j));
            }
        }
        let _ = writeln!(out, "# v_max={}", self.v_max);
        out
    }
}

/// Variation of `φ_i φ_j` for every pair and the maximum over pairs.
///
/// Coordinate factors `p_{i_k} p_{j_k}` are evaluated with the Legendre
/// recurrence.
pub fn v_max(basis: &TensorBasis) -> VariationReport {
    let table = factor_table(basis, |a, b| {
        let g = LegendreProduct { a, b };
        Ok((total_variation(&g), g.value(1.0).abs()))
    })
    .expect("recurrence route cannot fail");
    assemble(basis, &table)
}

/// Same as [`v_max`] but each coordinate factor is first multiplied out in
/// the monomial basis and evaluated by Horner's rule.
///
/// Exact in exact arithmetic. In double precision the monomial coefficients
/// of `p_a p_b` grow exponentially with degree and their rounding swamps the
/// true values once `a + b` passes ~30; the reported variation then measures
/// rounding noise.
pub fn v_max_expanded(basis: &TensorBasis) -> Result<VariationReport> {
    let family = basis.family();
    let table = factor_table(basis, |a, b| {
        let g = &family.poly(a)? * &family.poly(b)?;
        Ok((total_variation_1d(&g), g.eval(1.0).abs()))
    })?;
    Ok(assemble(basis, &table))
}

type FactorTable = BTreeMap<(u32, u32), (f64, f64)>;

fn factor_table<F>(basis: &TensorBasis, compute: F) -> Result<FactorTable>
where
    F: Fn(u32, u32) -> Result<(f64, f64)> + Sync,
{
    let mut keys: Vec<(u32, u32)> = Vec::new();
    let set = basis.index_set();
    for (i, a) in set.iter().enumerate() {
        for b in &set[i..] {
            for (&x, &y) in a.indices().iter().zip(b.indices()) {
                keys.push((x.min(y), x.max(y)));
            }
        }
    }
    keys.sort_unstable();
    keys.dedup();
    let values = keys
        .par_iter()
        .map(|&(a, b)| compute(a, b))
        .collect::<Result<Vec<_>>>()?;
    Ok(keys.into_iter().zip(values).collect())
}

fn assemble(basis: &TensorBasis, table: &FactorTable) -> VariationReport {
    let m = basis.len();
    let set = basis.index_set();
    let mut pair_variation = vec![0.0; m * m];
    let mut parts = Vec::with_capacity(basis.dimension());
    for i in 0..m {
        for j in i..m {
            parts.clear();
            for (&x, &y) in set[i].indices().iter().zip(set[j].indices()) {
                parts.push(table[&(x.min(y), x.max(y))]);
            }
            let v = hk_from_parts(&parts);
            pair_variation[i * m + j] = v;
            pair_variation[j * m + i] = v;
        }
    }
    let v_max = pair_variation.iter().copied().fold(0.0, f64::max);
    VariationReport {
        m,
        pair_variation,
        v_max,
    }
}
