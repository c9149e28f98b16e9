//! Conditioning of least-squares Monte Carlo regressions.
//!
//! Regression designs built from low-discrepancy scenarios and orthonormal
//! polynomial bases give a Gram matrix `(1/N) XᵀX` that converges to the
//! identity at the quasi-Monte Carlo rate `(ln N)^s / N`. This crate builds
//! the pieces needed to measure and bound that convergence:
//!
//! - [`sequences`]: van der Corput, Halton, Sobol and pseudo-random points,
//!   exact star-discrepancy and the empirical constant `C`.
//! - [`basis`]: orthonormal shifted Legendre tensor bases with exact inner
//!   products.
//! - [`variation`]: Hardy–Krause variation of basis products and `V_max`.
//! - [`gram`]: design/Gram matrices, spectra, Gershgorin discs.
//! - [`bounds`]: the scenario count that guarantees `κ ≤ θ`, and the reverse.
//! - [`lsmc`]: a toy end-to-end regression with noisy inner scenarios.
//! - [`experiments`]: reproducible sweeps over `N`, `m` and the sequence base.

pub mod basis;
pub mod bounds;
pub mod error;
pub mod experiments;
pub mod gram;
pub mod linalg;
pub mod lsmc;
pub mod plot;
pub mod sequences;
pub mod variation;

pub use error::{Error, Result};
