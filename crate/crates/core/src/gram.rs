//! Design and Gram matrices, their spectra and the Gershgorin view of how far
//! `(1/N) XᵀX` sits from the identity.

use crate::basis::TensorBasis;
use crate::error::{Error, Result};
use crate::linalg::{gershgorin_discs, pairwise_sum, sym_eigenvalues, Disc, Matrix};
use crate::sequences::PointSet;

/// `X_ij = φ_j(t^i)`, shape `N × m`.
#[derive(Debug, Clone, PartialEq)]
pub struct DesignMatrix {
    matrix: Matrix,
    dimension: usize,
}

impl DesignMatrix {
    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn n_rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn n_cols(&self) -> usize {
        self.matrix.cols()
    }

    /// Dimension `s` of the points the rows were evaluated at.
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn row(&self, i: usize) -> &[f64] {
        self.matrix.row(i)
    }

    fn column(&self, j: usize) -> Vec<f64> {
        (0..self.n_rows()).map(|i| self.matrix[(i, j)]).collect()
    }
}

pub fn build_design(ps: &PointSet, basis: &TensorBasis) -> Result<DesignMatrix> {
    if ps.dimension() != basis.dimension() {
        return Err(Error::DimensionMismatch {
            expected: basis.dimension(),
            actual: ps.dimension(),
        });
    }
    if ps.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let m = basis.len();
    let mut data = vec![0.0; ps.len() * m];
    let mut table = Vec::new();
    for (row, x) in data.chunks_exact_mut(m).zip(ps.iter()) {
        basis.eval_all_into(x, &mut table, row);
    }
    Ok(DesignMatrix {
        matrix: Matrix::from_raw(ps.len(), m, data),
        dimension: ps.dimension(),
    })
}

/// `(1/N) XᵀX`, each entry a pairwise sum over rows. The upper triangle is
/// mirrored so the result is bitwise symmetric.
pub fn gram_matrix(x: &DesignMatrix) -> Matrix {
    let n = x.n_rows();
    let m = x.n_cols();
    let columns: Vec<Vec<f64>> = (0..m).map(|j| x.column(j)).collect();
    let mut g = Matrix::zeros(m, m);
    let mut products = vec![0.0; n];
    let inv_n = 1.0 / n as f64;
    for i in 0..m {
        for j in i..m {
            for (p, (a, b)) in products.iter_mut().zip(columns[i].iter().zip(&columns[j])) {
                *p = a * b;
            }
            let v = pairwise_sum(&products) * inv_n;
            g[(i, j)] = v;
            g[(j, i)] = v;
        }
    }
    g
}

/// `λ_max / λ_min` of a symmetric positive-definite matrix.
pub fn condition_number(a: &Matrix) -> Result<f64> {
    let eig = sym_eigenvalues(a)?;
    kappa_from_sorted(&eig)
}

fn kappa_from_sorted(eig: &[f64]) -> Result<f64> {
    let (Some(&lo), Some(&hi)) = (eig.first(), eig.last()) else {
        return Err(Error::InvalidArgument("empty matrix".into()));
    };
    if lo <= 0.0 {
        return Err(Error::NotPositiveDefinite(lo));
    }
    Ok(hi / lo)
}

/// `max_ij |A_ij - δ_ij|`.
pub fn identity_deviation(a: &Matrix) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((a[(i, j)] - target).abs());
        }
    }
    worst
}

/// Inputs for the Koksma–Hlawka deviation bound `V_max · C · (ln N)^s / N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KhInputs {
    pub c: f64,
    pub v_max: f64,
}

/// Spectral summary of `(1/N) XᵀX`.
#[derive(Debug, Clone, PartialEq)]
pub struct GramReport {
    pub n: usize,
    pub m: usize,
    pub s: usize,
    pub gram: Matrix,
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// `λ_max / λ_min`, or `+∞` when the Gram matrix is numerically singular
    /// or indefinite.
    pub kappa: f64,
    pub gershgorin: Vec<Disc>,
    pub identity_deviation: f64,
    pub kh_bound: Option<f64>,
}

pub const GRAM_CSV_HEADER: &str =
    "N,m,s,kappa,lambda_min,lambda_max,identity_deviation,kh_bound";

impl GramReport {
    pub fn from_design(x: &DesignMatrix, kh: Option<KhInputs>) -> Result<Self> {
        let gram = gram_matrix(x);
        let eigenvalues = sym_eigenvalues(&gram)?;
        let kappa = kappa_from_sorted(&eigenvalues).unwrap_or(f64::INFINITY);
        let gershgorin = gershgorin_discs(&gram)?;
        let n = x.n_rows();
        let s = x.dimension();
        let kh_bound = kh.map(|k| {
            let nf = n as f64;
            k.v_max * k.c * nf.ln().powi(s as i32) / nf
        });
        Ok(Self {
            n,
            m: x.n_cols(),
            s,
            identity_deviation: identity_deviation(&gram),
            gram,
            eigenvalues,
            kappa,
            gershgorin,
            kh_bound,
        })
    }

    /// Builds the design matrix for `ps` and `basis`, then summarises.
    pub fn compute(ps: &PointSet, basis: &TensorBasis, kh: Option<KhInputs>) -> Result<Self> {
        Self::from_design(&build_design(ps, basis)?, kh)
    }

    pub fn lambda_min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn lambda_max(&self) -> f64 {
        self.eigenvalues[self.eigenvalues.len() - 1]
    }

    /// `log₁₀ κ`, roughly the number of trailing digits at risk.
    pub fn log10_kappa(&self) -> f64 {
        self.kappa.log10()
    }

    pub fn is_positive_definite(&self) -> bool {
        self.lambda_min() > 0.0
    }

    /// Largest `|λ - 1|` over the spectrum.
    pub fn max_eigen_deviation(&self) -> f64 {
        self.eigenvalues
            .iter()
            .map(|l| (l - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// One row matching [`GRAM_CSV_HEADER`]; `kh_bound` is empty when absent.
    pub fn csv_row(&self) -> String {
        let kh = self.kh_bound.map(|v| v.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{}",
            self.n,
            self.m,
            self.s,
            self.kappa,
            self.lambda_min(),
            self.lambda_max(),
            self.identity_deviation,
            kh
        )
    }

    /// The Gram matrix itself, one CSV row per matrix row.
    pub fn matrix_csv(&self) -> String {
        let mut out = String::new();
        for i in 0..self.m {
            let row: Vec<String> = self.gram.row(i).iter().map(f64::to_string).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}
