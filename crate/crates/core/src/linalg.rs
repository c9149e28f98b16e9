//! Small dense linear algebra: cyclic Jacobi eigenvalues, Gershgorin discs,
//! Cholesky and Householder QR solves.

use crate::error::{Error, Result};

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    actual: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_diagonal(d: &[f64]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, &v) in d.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    pub(crate) fn from_raw(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Largest `|a_ij - a_ji|`.
    pub fn max_asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in i + 1..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)]).abs());
            }
        }
        worst
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Pairwise (cascade) summation with a fixed split: the result depends only
/// on the sequence of values, not on how callers schedule the work.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    const LEAF: usize = 8;
    if values.len() <= LEAF {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

/// Symmetry tolerance accepted by [`sym_eigenvalues`].
pub const SYMMETRY_TOL: f64 = 1e-12;
/// Off-diagonal Frobenius norm, relative to `max(1, ‖A‖_F)`, at which Jacobi stops.
pub const JACOBI_TOL: f64 = 1e-12;
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
pub fn sym_eigenvalues(a: &Matrix) -> Result<Vec<f64>> {
    a.require_square()?;
    let asym = a.max_asymmetry();
    if asym > SYMMETRY_TOL {
        return Err(Error::NotSymmetric(asym));
    }
    let n = a.rows;
    let mut w = a.clone();
    // symmetrise so rotations operate on an exactly symmetric matrix
    for i in 0..n {
        for j in i + 1..n {
            let v = 0.5 * (w[(i, j)] + w[(j, i)]);
            w[(i, j)] = v;
            w[(j, i)] = v;
        }
    }
    let scale = frobenius(&w).max(1.0);
    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&w);
        if off <= JACOBI_TOL * scale {
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: off,
            });
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut w, p, q);
            }
        }
        sweeps += 1;
    }
    let mut eig: Vec<f64> = (0..n).map(|i| w[(i, i)]).collect();
    eig.sort_by(f64::total_cmp);
    Ok(eig)
}

fn frobenius(a: &Matrix) -> f64 {
    a.data.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn off_diagonal_norm(a: &Matrix) -> f64 {
    let mut s = 0.0;
    for i in 0..a.rows {
        for j in 0..a.cols {
            if i != j {
                s += a[(i, j)] * a[(i, j)];
            }
        }
    }
    s.sqrt()
}

/// Annihilates `a[p][q]` with one plane rotation (Rutishauser's form).
fn rotate(a: &mut Matrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    if apq == 0.0 {
        return;
    }
    let app = a[(p, p)];
    let aqq = a[(q, q)];
    let theta = (aqq - app) / (2.0 * apq);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let tau = s / (1.0 + c);
    let n = a.rows;
    a[(p, p)] = app - t * apq;
    a[(q, q)] = aqq + t * apq;
    a[(p, q)] = 0.0;
    a[(q, p)] = 0.0;
    for r in 0..n {
        if r == p || r == q {
            continue;
        }
        let arp = a[(r, p)];
        let arq = a[(r, q)];
        let new_rp = arp - s * (arq + tau * arp);
        let new_rq = arq + s * (arp - tau * arq);
        a[(r, p)] = new_rp;
        a[(p, r)] = new_rp;
        a[(r, q)] = new_rq;
        a[(q, r)] = new_rq;
    }
}

/// A Gershgorin disc: every eigenvalue lies in the union of these.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disc {
    pub center: f64,
    pub radius: f64,
}

impl Disc {
    pub fn contains(&self, x: f64, slack: f64) -> bool {
        (x - self.center).abs() <= self.radius + slack
    }
}

/// Row discs `(a_jj, Σ_{k≠j} |a_jk|)`.
pub fn gershgorin_discs(a: &Matrix) -> Result<Vec<Disc>> {
    a.require_square()?;
    Ok((0..a.rows)
        .map(|j| Disc {
            center: a[(j, j)],
            radius: a
                .row(j)
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != j)
                .map(|(_, v)| v.abs())
                .sum(),
        })
        .collect())
}

/// Solves `A x = b` for symmetric positive-definite `A` via `A = L Lᵀ`.
pub fn cholesky_solve(a: &Matrix, b: &[f64]) -> Result<Vec<f64>> {
    a.require_square()?;
    let n = a.rows;
    if b.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: b.len(),
        });
    }
    let mut l = Matrix::zeros(n, n);
    for j in 0..n {
        let mut d = a[(j, j)];
        for k in 0..j {
            d -= l[(j, k)] * l[(j, k)];
        }
        if d <= 0.0 || !d.is_finite() {
            return Err(Error::NotPositiveDefinite(d));
        }
        let ljj = d.sqrt();
        l[(j, j)] = ljj;
        for i in j + 1..n {
            let mut v = a[(i, j)];
            for k in 0..j {
                v -= l[(i, k)] * l[(j, k)];
            }
            l[(i, j)] = v / ljj;
        }
    }
    let mut y = vec![0.0; n];
    for i in 0..n {
        let mut v = b[i];
        for k in 0..i {
            v -= l[(i, k)] * y[k];
        }
        y[i] = v / l[(i, i)];
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut v = y[i];
        for k in i + 1..n {
            v -= l[(k, i)] * x[k];
        }
        x[i] = v / l[(i, i)];
    }
    Ok(x)
}

/// Least-squares solution of `X β ≈ y` by Householder QR of `X`.
pub fn qr_least_squares(x: &Matrix, y: &[f64]) -> Result<Vec<f64>> {
    let (n, m) = (x.rows, x.cols);
    if y.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: y.len(),
        });
    }
    if n < m {
        return Err(Error::InvalidArgument(
            "least squares needs at least as many rows as columns".into(),
        ));
    }
    let mut r = x.clone();
    let mut qty = y.to_vec();
    let mut v = vec![0.0; n];
    for k in 0..m {
        let norm = (k..n).map(|i| r[(i, k)] * r[(i, k)]).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::NotPositiveDefinite(0.0));
        }
        let alpha = if r[(k, k)] > 0.0 { -norm } else { norm };
        for i in k..n {
            v[i] = r[(i, k)];
        }
        v[k] -= alpha;
        let vnorm2: f64 = (k..n).map(|i| v[i] * v[i]).sum();
        if vnorm2 > 0.0 {
            for j in k..m {
                let dot: f64 = (k..n).map(|i| v[i] * r[(i, j)]).sum();
                let f = 2.0 * dot / vnorm2;
                for i in k..n {
                    r[(i, j)] -= f * v[i];
                }
            }
            let dot: f64 = (k..n).map(|i| v[i] * qty[i]).sum();
            let f = 2.0 * dot / vnorm2;
            for i in k..n {
                qty[i] -= f * v[i];
            }
        }
    }
    let mut beta = vec![0.0; m];
    for i in (0..m).rev() {
        let mut s = qty[i];
        for j in i + 1..m {
            s -= r[(i, j)] * beta[j];
        }
        if r[(i, i)] == 0.0 {
            return Err(Error::NotPositiveDefinite(0.0));
        }
        beta[i] = s / r[(i, i)];
    }
    Ok(beta)
}
