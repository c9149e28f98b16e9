use crate::error::{Error, Result};

/// Base-`b` digit reversal of `n` into `[0, 1)`.
///
/// Digits are accumulated as an exact integer numerator over `b^k` and the
/// quotient is rounded once at the end.
pub fn radical_inverse(n: u64, base: u64) -> Result<f64> {
    if base < 2 {
        return Err(Error::InvalidBase(base));
    }
    Ok(radical_inverse_unchecked(n, base))
}

pub(crate) fn radical_inverse_unchecked(mut n: u64, base: u64) -> f64 {
    let b = u128::from(base);
    let mut numerator: u128 = 0;
    let mut denominator: u128 = 1;
    while n > 0 {
        let digit = u128::from(n % base);
        n /= base;
        numerator = numerator * b + digit;
        denominator *= b;
    }
    let x = u128_ratio(numerator, denominator);
    // numerator < denominator, but rounding of huge values can land on 1.0
    if x >= 1.0 {
        1.0 - f64::EPSILON / 2.0
    } else {
        x
    }
}

fn u128_ratio(num: u128, den: u128) -> f64 {
    if den <= (1u128 << 53) {
        return num as f64 / den as f64;
    }
    // drop common low bits so both operands convert exactly when possible
    let shift = den.trailing_zeros().min(num.trailing_zeros());
    (num >> shift) as f64 / (den >> shift) as f64
}
