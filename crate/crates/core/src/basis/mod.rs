//! Orthonormal tensor-product polynomial bases of `L²([0,1]^s)`.
//!
//! Each basis function is `φ(x) = ∏_k p_{i_k}(x_k)` for a multi-index
//! `(i_1, …, i_s)` and the shifted Legendre family `p_n`. Basis positions
//! follow graded-lexicographic order: total degree first, then lexicographic
//! within a degree.

mod legendre;
mod poly;

use std::collections::HashSet;
use std::fmt;
use std::fmt::Write as _;

use crate::error::{Error, Result};

pub use legendre::{shifted_legendre, ShiftedLegendre, MAX_DEGREE};
pub use poly::{inner_product_tensor_exact, Poly1D};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn new(indices: impl Into<Vec<u32>>) -> Self {
        Self(indices.into())
    }

    pub fn zero(dimension: usize) -> Self {
        Self(vec![0; dimension])
    }

    pub fn dimension(&self) -> usize {
        self.0.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn indices(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str(")")
    }
}

/// All multi-indices of length `s` and total degree `degree`, lexicographic.
fn degree_block(s: usize, degree: u32) -> Vec<MultiIndex> {
    fn fill(prefix: &mut Vec<u32>, left: usize, remaining: u32, out: &mut Vec<MultiIndex>) {
        if left == 1 {
            prefix.push(remaining);
            out.push(MultiIndex(prefix.clone()));
            prefix.pop();
            return;
        }
        for first in 0..=remaining {
            prefix.push(first);
            fill(prefix, left - 1, remaining - first, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    fill(&mut Vec::with_capacity(s), s, degree, &mut out);
    out
}

/// Graded-lexicographic multi-indices.
///
/// With only `m`, returns the first `m`. With only `max_degree`, returns every
/// index of total degree up to the cap. With both, returns the first `m` and
/// fails if the cap leaves fewer than `m`.
pub fn graded_index_set(
    s: usize,
    m: Option<usize>,
    max_degree: Option<u32>,
) -> Result<Vec<MultiIndex>> {
    if s == 0 {
        return Err(Error::InvalidArgument("dimension must be at least 1".into()));
    }
    if m == Some(0) {
        return Err(Error::InvalidArgument("basis size must be at least 1".into()));
    }
    if m.is_none() && max_degree.is_none() {
        return Err(Error::InvalidArgument(
            "either a basis size or a degree cap is required".into(),
        ));
    }
    let mut out = Vec::new();
    let mut degree = 0u32;
    loop {
        if max_degree.is_some_and(|cap| degree > cap) {
            break;
        }
        if m.is_some_and(|m| out.len() >= m) {
            break;
        }
        if degree > MAX_DEGREE {
            return Err(Error::DegreeTooHigh(degree));
        }
        out.extend(degree_block(s, degree));
        degree += 1;
    }
    if let Some(m) = m {
        if out.len() < m {
            return Err(Error::IndexSetExhausted {
                requested: m,
                available: out.len(),
                cap: max_degree.unwrap_or(MAX_DEGREE),
            });
        }
        out.truncate(m);
    }
    Ok(out)
}

/// An ordered family `φ_1, …, φ_m` of orthonormal tensor polynomials.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorBasis {
    dimension: usize,
    index_set: Vec<MultiIndex>,
    family: ShiftedLegendre,
    max_axis_degree: u32,
}

impl TensorBasis {
    /// Validates that indices match `dimension`, are unique and are listed
    /// in nondecreasing total degree.
    pub fn new(dimension: usize, index_set: Vec<MultiIndex>) -> Result<Self> {
        if index_set.is_empty() {
            return Err(Error::InvalidArgument("basis must not be empty".into()));
        }
        let mut seen = HashSet::with_capacity(index_set.len());
        for (k, mi) in index_set.iter().enumerate() {
            if mi.dimension() != dimension {
                return Err(Error::DimensionMismatch {
                    expected: dimension,
                    actual: mi.dimension(),
                });
            }
            if let Some(&d) = mi.0.iter().find(|&&d| d > MAX_DEGREE) {
                return Err(Error::DegreeTooHigh(d));
            }
            if !seen.insert(mi) {
                return Err(Error::InvalidArgument(format!("duplicate multi-index {mi}")));
            }
            if k > 0 && index_set[k - 1].total_degree() > mi.total_degree() {
                return Err(Error::InvalidArgument(
                    "index set must be ordered by total degree".into(),
                ));
            }
        }
        let max_axis_degree = index_set
            .iter()
            .flat_map(|mi| mi.0.iter().copied())
            .max()
            .unwrap_or(0);
        Ok(Self {
            dimension,
            index_set,
            family: ShiftedLegendre,
            max_axis_degree,
        })
    }

    /// First `m` graded functions in dimension `s`.
    pub fn graded(s: usize, m: usize) -> Result<Self> {
        Self::new(s, graded_index_set(s, Some(m), None)?)
    }

    /// Every function of total degree at most `max_degree`.
    pub fn total_degree(s: usize, max_degree: u32) -> Result<Self> {
        Self::new(s, graded_index_set(s, None, Some(max_degree))?)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.index_set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index_set.is_empty()
    }

    pub fn index_set(&self) -> &[MultiIndex] {
        &self.index_set
    }

    pub fn family(&self) -> ShiftedLegendre {
        self.family
    }

    pub fn max_axis_degree(&self) -> u32 {
        self.max_axis_degree
    }

    /// `φ_j(x)`.
    pub fn eval(&self, j: usize, x: &[f64]) -> Result<f64> {
        let mi = self.index_set.get(j).ok_or(Error::IndexOutOfRange {
            index: j,
            size: self.len(),
        })?;
        if x.len() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                actual: x.len(),
            });
        }
        Ok(mi
            .0
            .iter()
            .zip(x)
            .map(|(&n, &xk)| self.family.value(n, xk))
            .product())
    }

    /// Writes `φ_1(x), …, φ_m(x)` into `out`, reusing one table of 1D values
    /// per coordinate. Caller guarantees `x.len() == dimension`.
    pub(crate) fn eval_all_into(&self, x: &[f64], table: &mut Vec<Vec<f64>>, out: &mut [f64]) {
        table.resize_with(self.dimension, Vec::new);
        for (row, &xk) in table.iter_mut().zip(x) {
            self.family.values_upto(self.max_axis_degree, xk, row);
        }
        for (slot, mi) in out.iter_mut().zip(&self.index_set) {
            *slot = mi
                .0
                .iter()
                .enumerate()
                .map(|(k, &n)| table[k][n as usize])
                .product();
        }
    }

    /// `φ_1(x), …, φ_m(x)`.
    pub fn eval_all(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                actual: x.len(),
            });
        }
        let mut out = vec![0.0; self.len()];
        self.eval_all_into(x, &mut Vec::new(), &mut out);
        Ok(out)
    }

    /// Exact monomial factors of `φ_j`, one per coordinate.
    pub fn factors(&self, j: usize) -> Result<Vec<Poly1D>> {
        let mi = self.index_set.get(j).ok_or(Error::IndexOutOfRange {
            index: j,
            size: self.len(),
        })?;
        mi.0.iter().map(|&n| self.family.poly(n)).collect()
    }

    /// `⟨φ_i, φ_j⟩` computed exactly from the factors.
    pub fn inner_product_exact(&self, i: usize, j: usize) -> Result<f64> {
        inner_product_tensor_exact(&self.factors(i)?, &self.factors(j)?)
    }

    /// `position,multi_index,total_degree`, positions starting at 1.
    pub fn metadata_csv(&self) -> String {
        let mut out = String::from("position,multi_index,total_degree\n");
        for (j, mi) in self.index_set.iter().enumerate() {
            let _ = writeln!(out, "{},\"{}\",{}", j + 1, mi, mi.total_degree());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    #[test]
    fn graded_order_1d() {
        let set = graded_index_set(1, Some(3), None).unwrap();
        assert_eq!(set, vec![mi(&[0]), mi(&[1]), mi(&[2])]);
    }

    #[test]
    fn graded_order_2d() {
        let set = graded_index_set(2, Some(4), None).unwrap();
        assert_eq!(set, vec![mi(&[0, 0]), mi(&[0, 1]), mi(&[1, 0]), mi(&[0, 2])]);
        let capped = graded_index_set(2, None, Some(1)).unwrap();
        assert_eq!(capped, vec![mi(&[0, 0]), mi(&[0, 1]), mi(&[1, 0])]);
    }

    #[test]
    fn cap_too_small() {
        let err = graded_index_set(2, Some(4), Some(1)).unwrap_err();
        assert!(matches!(err, Error::IndexSetExhausted { requested: 4, available: 3, .. }));
    }

    #[test]
    fn degree_block_counts() {
        // C(d + s - 1, s - 1)
        assert_eq!(degree_block(3, 4).len(), 15);
        assert_eq!(degree_block(1, 7), vec![mi(&[7])]);
    }

    #[test]
    fn eval_examples() {
        let b = TensorBasis::new(2, vec![mi(&[0, 0]), mi(&[1, 0])]).unwrap();
        assert_eq!(b.eval(0, &[0.3, 0.9]).unwrap(), 1.0);
        assert_eq!(b.eval(1, &[0.5, 0.3]).unwrap(), 0.0);
        let b1 = TensorBasis::graded(1, 3).unwrap();
        assert!((b1.eval(2, &[1.0]).unwrap() - 5f64.sqrt()).abs() < 1e-14);
        assert_eq!(
            b1.eval(3, &[0.1]).unwrap_err(),
            Error::IndexOutOfRange { index: 3, size: 3 }
        );
    }

    #[test]
    fn eval_all_matches_eval() {
        let b = TensorBasis::total_degree(3, 3).unwrap();
        let x = [0.13, 0.77, 0.42];
        let all = b.eval_all(&x).unwrap();
        for (j, v) in all.iter().enumerate() {
            assert!((v - b.eval(j, &x).unwrap()).abs() < 1e-13);
        }
    }

    #[test]
    fn rejects_bad_index_sets() {
        assert!(TensorBasis::new(1, vec![mi(&[0]), mi(&[0])]).is_err());
        assert!(TensorBasis::new(1, vec![mi(&[1]), mi(&[0])]).is_err());
        assert!(TensorBasis::new(2, vec![mi(&[0])]).is_err());
        assert!(TensorBasis::new(1, vec![]).is_err());
    }

    #[test]
    fn metadata_layout() {
        let csv = TensorBasis::graded(2, 3).unwrap().metadata_csv();
        assert_eq!(
            csv,
            "position,multi_index,total_degree\n1,\"(0,0)\",0\n2,\"(0,1)\",1\n3,\"(1,0)\",1\n"
        );
    }
}
