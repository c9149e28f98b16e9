//! Toy least-squares Monte Carlo: noisy responses on outer scenarios, a fit
//! through the scaled normal equations and out-of-sample validation.

mod config;

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::basis::{MultiIndex, ShiftedLegendre, TensorBasis};
use crate::error::{Error, Result};
use crate::gram::{gram_matrix, DesignMatrix};
use crate::linalg::{cholesky_solve, pairwise_sum, qr_least_squares, sym_eigenvalues};
use crate::sequences::PointSet;

pub use config::{run_pipeline, PipelineConfig, PipelineResult};

/// Smooth term outside any polynomial span, added to the truth on request.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OutOfSpan {
    /// `amplitude · exp(x_1 + … + x_s)`.
    Exponential { amplitude: f64 },
}

impl OutOfSpan {
    fn value(&self, x: &[f64]) -> f64 {
        match *self {
            OutOfSpan::Exponential { amplitude } => amplitude * x.iter().sum::<f64>().exp(),
        }
    }
}

/// The true response surface and the inner-scenario noise model.
#[derive(Debug, Clone, PartialEq)]
pub struct TruthSpec {
    pub coefficients: BTreeMap<MultiIndex, f64>,
    pub out_of_span: Option<OutOfSpan>,
    pub noise_sigma: f64,
    pub n_inner: u32,
    pub seed: u64,
}

impl TruthSpec {
    pub fn noiseless(coefficients: BTreeMap<MultiIndex, f64>) -> Self {
        Self {
            coefficients,
            out_of_span: None,
            noise_sigma: 0.0,
            n_inner: 1,
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_inner == 0 {
            return Err(Error::InvalidArgument("n_inner must be at least 1".into()));
        }
        if !(self.noise_sigma >= 0.0 && self.noise_sigma.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "noise sigma must be finite and nonnegative, got {}",
                self.noise_sigma
            )));
        }
        Ok(())
    }

    /// `f*(x)`.
    pub fn eval(&self, x: &[f64]) -> f64 {
        let family = ShiftedLegendre;
        let spanned: f64 = self
            .coefficients
            .iter()
            .map(|(mi, beta)| {
                beta * mi
                    .indices()
                    .iter()
                    .zip(x)
                    .map(|(&n, &xk)| family.value(n, xk))
                    .product::<f64>()
            })
            .sum();
        spanned + self.out_of_span.map_or(0.0, |t| t.value(x))
    }

    /// Coefficient vector aligned with `basis` (zeros where the truth has
    /// no entry).
    pub fn coefficients_on(&self, basis: &TensorBasis) -> Vec<f64> {
        basis
            .index_set()
            .iter()
            .map(|mi| self.coefficients.get(mi).copied().unwrap_or(0.0))
            .collect()
    }
}

/// `y_i = f*(t^i) + mean of n_inner draws of N(0, σ²)`.
///
/// Point `i` draws from ChaCha8 seeded with `truth.seed` on stream `i`, so
/// the responses do not depend on evaluation order.
pub fn simulate_responses(truth: &TruthSpec, ps: &PointSet) -> Result<Vec<f64>> {
    truth.validate()?;
    let sigma = truth.noise_sigma;
    let inner = truth.n_inner;
    Ok((0..ps.len())
        .into_par_iter()
        .map(|i| {
            let x = ps.point(i);
            let clean = truth.eval(x);
            if sigma == 0.0 {
                return clean;
            }
            let mut rng = ChaCha8Rng::seed_from_u64(truth.seed);
            rng.set_stream(i as u64);
            let total: f64 = (0..inner)
                .map(|_| -> f64 { StandardNormal.sample(&mut rng) })
                .sum();
            clean + sigma * total / f64::from(inner)
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FitMethod {
    /// Cholesky solve of `((1/N) XᵀX) β = (1/N) Xᵀy`.
    NormalEquations,
    /// Householder QR of `X`; kept as an independent cross-check.
    OrthogonalFactorization,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitOptions {
    pub method: FitMethod,
    /// Fits are refused when `κ((1/N) XᵀX)` exceeds this.
    pub refusal_threshold: f64,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self {
            method: FitMethod::NormalEquations,
            refusal_threshold: 1e12,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub beta_hat: Vec<f64>,
    pub kappa_used: f64,
    pub residual_norm: f64,
    pub method: FitMethod,
}

impl FitResult {
    /// Surrogate `Σ_j β̂_j φ_j(x)`.
    pub fn predict(&self, basis: &TensorBasis, x: &[f64]) -> Result<f64> {
        if basis.len() != self.beta_hat.len() {
            return Err(Error::DimensionMismatch {
                expected: self.beta_hat.len(),
                actual: basis.len(),
            });
        }
        Ok(basis
            .eval_all(x)?
            .iter()
            .zip(&self.beta_hat)
            .map(|(phi, b)| phi * b)
            .sum())
    }
}

/// Normal-equations fit with the default refusal threshold.
pub fn fit(x: &DesignMatrix, y: &[f64]) -> Result<FitResult> {
    fit_with(x, y, &FitOptions::default())
}

pub fn fit_with(x: &DesignMatrix, y: &[f64], options: &FitOptions) -> Result<FitResult> {
    let n = x.n_rows();
    if y.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: y.len(),
        });
    }
    let gram = gram_matrix(x);
    let eig = sym_eigenvalues(&gram)?;
    let (lo, hi) = (eig[0], eig[eig.len() - 1]);
    if lo <= 0.0 {
        return Err(Error::NotPositiveDefinite(lo));
    }
    let kappa = hi / lo;
    if kappa > options.refusal_threshold {
        return Err(Error::IllConditioned {
            kappa,
            threshold: options.refusal_threshold,
        });
    }
    let beta_hat = match options.method {
        FitMethod::NormalEquations => {
            let inv_n = 1.0 / n as f64;
            let mut products = vec![0.0; n];
            let rhs: Vec<f64> = (0..x.n_cols())
                .map(|j| {
                    for (i, p) in products.iter_mut().enumerate() {
                        *p = x.row(i)[j] * y[i];
                    }
                    pairwise_sum(&products) * inv_n
                })
                .collect();
            cholesky_solve(&gram, &rhs)?
        }
        FitMethod::OrthogonalFactorization => qr_least_squares(x.matrix(), y)?,
    };
    let residual_norm = x
        .matrix()
        .mul_vec(&beta_hat)
        .iter()
        .zip(y)
        .map(|(f, v)| (v - f) * (v - f))
        .sum::<f64>()
        .sqrt();
    Ok(FitResult {
        beta_hat,
        kappa_used: kappa,
        residual_norm,
        method: options.method,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Validation {
    pub rmse: f64,
    pub max_abs_error: f64,
}

/// Error of the fitted surrogate against the noiseless truth on a separate
/// set of scenarios.
pub fn validate(
    fit: &FitResult,
    truth: &TruthSpec,
    basis: &TensorBasis,
    validation_ps: &PointSet,
) -> Result<Validation> {
    if validation_ps.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let mut sq = Vec::with_capacity(validation_ps.len());
    let mut worst = 0.0f64;
    for x in validation_ps.iter() {
        let e = fit.predict(basis, x)? - truth.eval(x);
        sq.push(e * e);
        worst = worst.max(e.abs());
    }
    Ok(Validation {
        rmse: (pairwise_sum(&sq) / sq.len() as f64).sqrt(),
        max_abs_error: worst,
    })
}
