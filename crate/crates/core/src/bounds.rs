//! Scenario-count bound for Gram conditioning.
//!
//! With `D*_N ≤ C (ln N)^s / N`, every entry of `(1/N) XᵀX` is within
//! `V_max · C · (ln N)^s / N` of the identity, so Gershgorin places all
//! eigenvalues within `r = m · V_max · C · (ln N)^s / N` of 1 and
//! `κ ≤ (1 + r) / (1 - r)`. Requiring that to be at most `θ` gives
//! `(ln N)^s / N ≤ (θ - 1) / ((1 + θ) C V_max m)`.

use crate::error::{Error, Result};

/// Largest scenario count the solver will report.
pub const N_CAP: u64 = i64::MAX as u64;

/// `(ln N)^s / N`.
pub fn rate(n: u64, s: u32) -> f64 {
    let nf = n as f64;
    nf.ln().powi(s as i32) / nf
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityBound {
    pub theta: f64,
    /// `(θ - 1) / (θ + 1)`: admissible eigenvalue spread around 1.
    pub r: f64,
    pub c: f64,
    pub v_max: f64,
    pub m: usize,
    pub s: u32,
    pub n_required: u64,
    /// `(θ - 1) / ((1 + θ) C V_max m)`; `+∞` when `V_max = 0`.
    pub target: f64,
}

pub const BOUND_CSV_HEADER: &str = "theta,r,C,v_max,m,s,N_required,target";

impl StabilityBound {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.theta, self.r, self.c, self.v_max, self.m, self.s, self.n_required, self.target
        )
    }
}

fn check_common(c: f64, v_max: f64, m: usize, s: u32) -> Result<()> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::InvalidArgument(format!("C must be positive, got {c}")));
    }
    if !(v_max >= 0.0 && v_max.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "V_max must be nonnegative, got {v_max}"
        )));
    }
    if m == 0 || s == 0 {
        return Err(Error::InvalidArgument("m and s must be at least 1".into()));
    }
    Ok(())
}

/// Smallest `N ≥ 2` such that `(ln N')^s / N' ≤ target` for every `N' ≥ N`.
///
/// The rate rises on `[2, e^s]` and falls afterwards, so the answer is found
/// on the falling branch by doubling and bisection; if even the peak is
/// below the target every `N ≥ 2` qualifies.
pub fn required_n(theta: f64, c: f64, v_max: f64, m: usize, s: u32) -> Result<StabilityBound> {
    if theta.is_nan() || theta <= 1.0 {
        return Err(Error::InvalidArgument(format!(
            "theta must exceed 1, got {theta}"
        )));
    }
    check_common(c, v_max, m, s)?;
    let r = (theta - 1.0) / (theta + 1.0);
    let target = if v_max == 0.0 {
        f64::INFINITY
    } else {
        r / (c * v_max * m as f64)
    };
    if target.is_nan() || target <= 0.0 {
        return Err(Error::InvalidArgument("target underflowed to zero".into()));
    }
    let n_required = solve_rate(target, s)?;
    Ok(StabilityBound {
        theta,
        r,
        c,
        v_max,
        m,
        s,
        n_required,
        target,
    })
}

fn solve_rate(target: f64, s: u32) -> Result<u64> {
    let peak = f64::from(s).exp();
    let falling_start = (peak.ceil() as u64).max(2);
    let peak_floor = (peak.floor() as u64).max(2);
    let peak_value = rate(peak_floor, s).max(rate(falling_start, s));
    if peak_value <= target {
        return Ok(2);
    }
    if rate(N_CAP, s) > target {
        return Err(Error::CapExceeded(N_CAP));
    }
    // rate(lo) > target >= rate(hi), both on the falling branch
    let mut lo = falling_start;
    if rate(lo, s) <= target {
        return Ok(lo);
    }
    let mut hi = lo;
    while rate(hi, s) > target {
        lo = hi;
        hi = hi.saturating_mul(2).min(N_CAP);
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if rate(mid, s) <= target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Condition-number guarantee at a given `N`: `Some((1 + r) / (1 - r))`
/// when `r = C V_max m (ln N)^s / N < 1`, `None` otherwise.
pub fn guaranteed_theta(n: u64, c: f64, v_max: f64, m: usize, s: u32) -> Result<Option<f64>> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("N must be at least 2, got {n}")));
    }
    check_common(c, v_max, m, s)?;
    let r = eigen_radius(n, c, v_max, m, s);
    Ok((r < 1.0).then(|| (1.0 + r) / (1.0 - r)))
}

/// `r = C V_max m (ln N)^s / N`.
pub fn eigen_radius(n: u64, c: f64, v_max: f64, m: usize, s: u32) -> f64 {
    c * v_max * m as f64 * rate(n, s)
}

pub const GUARANTEE_CSV_HEADER: &str = "N,C,v_max,m,s,r,theta";

/// One CSV record for the fixed-`N` direction; `theta` is `none` when no
/// guarantee holds.
pub fn guarantee_csv_row(n: u64, c: f64, v_max: f64, m: usize, s: u32) -> Result<String> {
    let theta = guaranteed_theta(n, c, v_max, m, s)?;
    let r = eigen_radius(n, c, v_max, m, s);
    let theta = theta.map_or_else(|| "none".to_string(), |t| t.to_string());
    Ok(format!("{n},{c},{v_max},{m},{s},{r},{theta}"))
}
