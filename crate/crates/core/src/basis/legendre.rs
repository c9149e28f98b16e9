use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::Poly1D;
use crate::error::{Error, Result};

/// Highest degree the family will construct.
pub const MAX_DEGREE: u32 = 64;

/// Orthonormal shifted Legendre polynomials on `[0, 1]`:
/// `p_n(x) = √(2n+1) · L_n(2x - 1)` with positive leading coefficient.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ShiftedLegendre;

impl ShiftedLegendre {
    /// Exact monomial form of `p_n`, built from the three-term recurrence
    /// of `L_n` composed with `t = 2x - 1`.
    pub fn poly(&self, n: u32) -> Result<Poly1D> {
        if n > MAX_DEGREE {
            return Err(Error::DegreeTooHigh(n));
        }
        let rat = |v: i64| BigRational::from_integer(BigInt::from(v));
        let t = [rat(-1), rat(2)];
        let mut prev: Vec<BigRational> = vec![BigRational::one()];
        if n == 0 {
            return Ok(Poly1D::from_exact(prev, 1.0));
        }
        let mut cur: Vec<BigRational> = t.to_vec();
        for k in 1..n as i64 {
            // (k+1) L_{k+1} = (2k+1) t L_k - k L_{k-1}
            let mut next = vec![BigRational::zero(); cur.len() + 1];
            for (i, c) in cur.iter().enumerate() {
                next[i] += c * &t[0] * rat(2 * k + 1);
                next[i + 1] += c * &t[1] * rat(2 * k + 1);
            }
            for (i, c) in prev.iter().enumerate() {
                next[i] -= c * rat(k);
            }
            let inv = BigRational::new(BigInt::one(), BigInt::from(k + 1));
            for c in &mut next {
                *c *= &inv;
            }
            prev = cur;
            cur = next;
        }
        Ok(Poly1D::from_exact(cur, f64::from(2 * n + 1).sqrt()))
    }

    /// `p_n(x)` by the stable recurrence.
    pub fn value(&self, n: u32, x: f64) -> f64 {
        let t = 2.0 * x - 1.0;
        let (mut prev, mut cur) = (1.0, t);
        if n == 0 {
            return 1.0;
        }
        for k in 1..n {
            let k = f64::from(k);
            let next = ((2.0 * k + 1.0) * t * cur - k * prev) / (k + 1.0);
            prev = cur;
            cur = next;
        }
        f64::from(2 * n + 1).sqrt() * cur
    }

    /// `p_n(x)` and `p_n'(x)` together.
    pub fn value_and_derivative(&self, n: u32, x: f64) -> (f64, f64) {
        let t = 2.0 * x - 1.0;
        let (mut l_prev, mut l_cur) = (1.0, t);
        let (mut d_prev, mut d_cur) = (0.0, 1.0);
        if n == 0 {
            return (1.0, 0.0);
        }
        for k in 1..n {
            let kf = f64::from(k);
            let l_next = ((2.0 * kf + 1.0) * t * l_cur - kf * l_prev) / (kf + 1.0);
            // L'_{k+1} = L'_{k-1} + (2k+1) L_k
            let d_next = d_prev + (2.0 * kf + 1.0) * l_cur;
            (l_prev, l_cur) = (l_cur, l_next);
            (d_prev, d_cur) = (d_cur, d_next);
        }
        let norm = f64::from(2 * n + 1).sqrt();
        (norm * l_cur, 2.0 * norm * d_cur)
    }

    /// Writes `p_0(x), …, p_max(x)` into `out`.
    pub fn values_upto(&self, max: u32, x: f64, out: &mut Vec<f64>) {
        out.clear();
        let t = 2.0 * x - 1.0;
        let (mut prev, mut cur) = (1.0, t);
        out.push(1.0);
        if max == 0 {
            return;
        }
        out.push(3f64.sqrt() * t);
        for k in 1..max {
            let kf = f64::from(k);
            let next = ((2.0 * kf + 1.0) * t * cur - kf * prev) / (kf + 1.0);
            prev = cur;
            cur = next;
            out.push(f64::from(2 * k + 3).sqrt() * cur);
        }
    }
}

/// Convenience for [`ShiftedLegendre::poly`].
pub fn shifted_legendre(n: u32) -> Result<Poly1D> {
    ShiftedLegendre.poly(n)
}
