use std::ops::Mul;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Polynomial on `[0, 1]` in the monomial basis.
///
/// Coefficients are held as exact rationals times a common floating-point
/// scale, so normalised families such as `√(2n+1) · P̃_n` keep integer
/// coefficients and products and integrals stay exact apart from the scale.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly1D {
    exact: Vec<BigRational>,
    scale: f64,
    coefficients: Vec<f64>,
}

impl Poly1D {
    /// Builds from floating-point coefficients (`c[k]` multiplies `x^k`).
    /// Each double is converted to the rational it represents exactly.
    pub fn from_coefficients(c: &[f64]) -> Result<Self> {
        let exact = c
            .iter()
            .map(|&v| {
                BigRational::from_float(v)
                    .ok_or_else(|| Error::InvalidArgument(format!("non-finite coefficient {v}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_exact(exact, 1.0))
    }

    pub(crate) fn from_exact(mut exact: Vec<BigRational>, scale: f64) -> Self {
        while exact.len() > 1 && exact.last().is_some_and(Zero::is_zero) {
            exact.pop();
        }
        if exact.is_empty() {
            exact.push(BigRational::zero());
        }
        let coefficients = exact
            .iter()
            .map(|c| scale * c.to_f64().unwrap_or(f64::NAN))
            .collect();
        Self {
            exact,
            scale,
            coefficients,
        }
    }

    pub fn constant(c: f64) -> Self {
        Self::from_coefficients(&[c]).expect("finite constant")
    }

    pub fn degree(&self) -> usize {
        self.exact.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.scale == 0.0 || (self.exact.len() == 1 && self.exact[0].is_zero())
    }

    /// Exact rational coefficients and the common scale they are multiplied by.
    pub fn exact_parts(&self) -> (&[BigRational], f64) {
        (&self.exact, self.scale)
    }

    /// Monomial coefficients rounded to `f64`.
    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    /// Horner evaluation on the rounded coefficients. Accurate for modest
    /// degrees; see [`crate::basis::ShiftedLegendre`] for stable evaluation of
    /// high-degree family members.
    pub fn eval(&self, x: f64) -> f64 {
        self.coefficients.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Poly1D {
        if self.exact.len() == 1 {
            return Poly1D::from_exact(vec![BigRational::zero()], self.scale);
        }
        let exact = self
            .exact
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
            .collect();
        Poly1D::from_exact(exact, self.scale)
    }

    /// Exact `∫₀¹ p(x) q(x) dx` up to the final rounding of the scales.
    pub fn inner_product_exact(&self, other: &Poly1D) -> f64 {
        let mut sum = BigRational::zero();
        for (k, a) in self.exact.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (l, b) in other.exact.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                sum += a * b / BigRational::from_integer(BigInt::from(k + l + 1));
            }
        }
        self.scale * other.scale * sum.to_f64().unwrap_or(f64::NAN)
    }
}

impl Mul for &Poly1D {
    type Output = Poly1D;

    fn mul(self, rhs: &Poly1D) -> Poly1D {
        let mut exact = vec![BigRational::zero(); self.exact.len() + rhs.exact.len() - 1];
        for (k, a) in self.exact.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (l, b) in rhs.exact.iter().enumerate() {
                exact[k + l] += a * b;
            }
        }
        Poly1D::from_exact(exact, self.scale * rhs.scale)
    }
}

/// `∏_k ⟨f_k, g_k⟩`: the tensor inner product factorises coordinate-wise.
pub fn inner_product_tensor_exact(f: &[Poly1D], g: &[Poly1D]) -> Result<f64> {
    if f.len() != g.len() {
        return Err(Error::DimensionMismatch {
            expected: f.len(),
            actual: g.len(),
        });
    }
    Ok(f.iter().zip(g).map(|(a, b)| a.inner_product_exact(b)).product())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trailing_zeros_trimmed() {
        let p = Poly1D::from_coefficients(&[1.0, 2.0, 0.0, 0.0]).unwrap();
        assert_eq!(p.degree(), 1);
        assert_eq!(Poly1D::from_coefficients(&[]).unwrap().degree(), 0);
    }

    #[test]
    fn horner_matches_naive_sum() {
        let p = Poly1D::from_coefficients(&[0.5, -1.25, 3.0, 0.75]).unwrap();
        for i in 0..=20 {
            let x = i as f64 / 20.0;
            let naive: f64 = p
                .coefficients()
                .iter()
                .enumerate()
                .map(|(k, c)| c * x.powi(k as i32))
                .sum();
            assert!((p.eval(x) - naive).abs() < 1e-13);
        }
    }

    #[test]
    fn derivative_and_product() {
        let p = Poly1D::from_coefficients(&[1.0, 1.0]).unwrap();
        let sq = &p * &p;
        assert_eq!(sq.coefficients(), &[1.0, 2.0, 1.0]);
        assert_eq!(sq.derivative().coefficients(), &[2.0, 2.0]);
        assert_eq!(Poly1D::constant(3.0).derivative().coefficients(), &[0.0]);
    }

    #[test]
    fn integral_of_monomials() {
        let x = Poly1D::from_coefficients(&[0.0, 1.0]).unwrap();
        let one = Poly1D::constant(1.0);
        assert_eq!(x.inner_product_exact(&one), 0.5);
        assert!((x.inner_product_exact(&x) - 1.0 / 3.0).abs() < 1e-16);
    }

    #[test]
    fn non_finite_rejected() {
        assert!(Poly1D::from_coefficients(&[f64::NAN]).is_err());
    }
}
