use crate::error::{Error, Result};

use super::{generate, GeneratorSpec, PointSet};

/// Default cap on `N` for the brute-force enumeration.
pub const DEFAULT_ORACLE_LIMIT: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiscrepancyMethod {
    ClosedForm1d,
    BruteForceNd,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscrepancyResult {
    pub n: usize,
    pub d_star: f64,
    pub method: DiscrepancyMethod,
}

/// Exact 1D star-discrepancy via the sorted-points closed form
/// `1/(2N) + max_i |x_(i) - (2i-1)/(2N)|`.
pub fn star_discrepancy_1d(ps: &PointSet) -> Result<DiscrepancyResult> {
    if ps.dimension() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            actual: ps.dimension(),
        });
    }
    if ps.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let mut xs = ps.axis(0);
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    let two_n = 2.0 * n as f64;
    let worst = xs
        .iter()
        .enumerate()
        .map(|(i, &x)| (x - (2 * i + 1) as f64 / two_n).abs())
        .fold(0.0, f64::max);
    Ok(DiscrepancyResult {
        n,
        d_star: 1.0 / two_n + worst,
        method: DiscrepancyMethod::ClosedForm1d,
    })
}

/// Star-discrepancy straight from the definition, with the default limit.
pub fn star_discrepancy_nd_bruteforce(ps: &PointSet) -> Result<DiscrepancyResult> {
    star_discrepancy_nd_bruteforce_with_limit(ps, DEFAULT_ORACLE_LIMIT)
}

/// Enumerates every anchored box `[0, a)` whose upper corner takes, on each
/// axis, a point coordinate or 1. At each corner both the half-open count
/// (points strictly inside) and the closed count (points with `x <= a`) are
/// compared against the volume, which covers the one-sided limits where the
/// supremum is attained.
pub fn star_discrepancy_nd_bruteforce_with_limit(
    ps: &PointSet,
    limit: usize,
) -> Result<DiscrepancyResult> {
    let n = ps.len();
    if n == 0 {
        return Err(Error::EmptyPointSet);
    }
    if n > limit {
        return Err(Error::OracleLimit { n, limit });
    }
    let s = ps.dimension();
    let candidates: Vec<Vec<f64>> = (0..s)
        .map(|axis| {
            let mut c = ps.axis(axis);
            c.push(1.0);
            c.sort_by(f64::total_cmp);
            c.dedup();
            c
        })
        .collect();
    let all: Vec<usize> = (0..n).collect();
    let mut search = BoxSearch {
        ps,
        candidates: &candidates,
        inv_n: 1.0 / n as f64,
        best: 0.0,
    };
    search.descend(0, &all, &all, 1.0);
    Ok(DiscrepancyResult {
        n,
        d_star: search.best,
        method: DiscrepancyMethod::BruteForceNd,
    })
}

struct BoxSearch<'a> {
    ps: &'a PointSet,
    candidates: &'a [Vec<f64>],
    inv_n: f64,
    best: f64,
}

impl BoxSearch<'_> {
    fn descend(&mut self, axis: usize, open: &[usize], closed: &[usize], volume: f64) {
        if axis == self.candidates.len() {
            let below = volume - open.len() as f64 * self.inv_n;
            let above = closed.len() as f64 * self.inv_n - volume;
            self.best = self.best.max(below).max(above);
            return;
        }
        for &a in &self.candidates[axis] {
            let open_next: Vec<usize> = open
                .iter()
                .copied()
                .filter(|&i| self.ps.point(i)[axis] < a)
                .collect();
            let closed_next: Vec<usize> = closed
                .iter()
                .copied()
                .filter(|&i| self.ps.point(i)[axis] <= a)
                .collect();
            self.descend(axis + 1, &open_next, &closed_next, volume * a);
        }
    }
}

/// Closed form in 1D, brute force otherwise.
pub fn star_discrepancy(ps: &PointSet) -> Result<DiscrepancyResult> {
    if ps.dimension() == 1 {
        star_discrepancy_1d(ps)
    } else {
        star_discrepancy_nd_bruteforce(ps)
    }
}

/// Empirical low-discrepancy constant `max_N N * D*_N / (ln N)^s` over the
/// prefixes of one generated sequence.
pub fn empirical_c(spec: &GeneratorSpec, n_grid: &[usize]) -> Result<f64> {
    if n_grid.is_empty() {
        return Err(Error::InvalidArgument("empty N grid".into()));
    }
    if let Some(&bad) = n_grid.iter().find(|&&n| n <= 2) {
        return Err(Error::InvalidArgument(format!(
            "grid values must exceed 2, got {bad}"
        )));
    }
    let largest = *n_grid.iter().max().expect("grid is nonempty");
    let all = generate(spec, largest)?;
    let s = spec.dimension as i32;
    let mut c = 0.0f64;
    for &n in n_grid {
        let d = star_discrepancy(&all.prefix(n))?.d_star;
        let nf = n as f64;
        c = c.max(nf * d / nf.ln().powi(s));
    }
    Ok(c)
}

impl PointSet {
    /// The first `n` points (all of them if `n` exceeds the length).
    pub fn prefix(&self, n: usize) -> PointSet {
        let n = n.min(self.len());
        PointSet {
            dimension: self.dimension,
            coords: self.coords[..n * self.dimension].to_vec(),
            provenance: self.provenance.clone(),
        }
    }
}
