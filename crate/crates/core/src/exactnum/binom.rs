//! Generalized binomial coefficients and the degree-`w` basis polynomials
//! `C(w - s - j, w)` in the zeta variable `s`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// `C(n, k) = n(n-1)...(n-k+1)/k!` for any integer `n` and `k >= 0`.
pub fn binom_int(n: i64, k: i64) -> Result<BigInt> {
    if k < 0 {
        return Err(Error::NegativeBinomial(k));
    }
    if n >= 0 && n < k {
        return Ok(BigInt::zero());
    }
    // For 0 <= k <= n use the shorter side.
    let k = if n >= 0 && k > n - k { n - k } else { k };
    let mut acc = BigInt::one();
    for t in 0..k {
        acc *= BigInt::from(n - t);
        acc /= BigInt::from(t + 1);
    }
    Ok(acc)
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, t| acc * BigInt::from(t))
}

/// Ascending coefficients (in `s`) of `C(w - s - j, w)`.
///
/// Expanded from the falling factorial `prod_{t=1}^{w} (t - j - s) / w!`,
/// so the result has degree exactly `w` and leading coefficient `1/w!`.
pub fn binomial_in_s(w: usize, j: usize) -> Result<Vec<BigRational>> {
    check_even_weight(w)?;
    if j > w {
        return Err(Error::OutOfRange {
            index: j as i64,
            max: w as i64,
        });
    }
    let mut acc: Vec<BigInt> = vec![BigInt::one()];
    for t in 1..=w as i64 {
        let c = BigInt::from(t - j as i64);
        // multiply by (c - s)
        let mut next = vec![BigInt::zero(); acc.len() + 1];
        for (d, a) in acc.iter().enumerate() {
            next[d] += &c * a;
            next[d + 1] -= a;
        }
        acc = next;
    }
    let wf = factorial(w as u64);
    Ok(acc
        .into_iter()
        .map(|c| BigRational::new(c, wf.clone()))
        .collect())
}

pub(crate) fn check_even_weight(w: usize) -> Result<()> {
    if w < 2 || !w.is_multiple_of(2) {
        return Err(Error::BadWeight(w as i64));
    }
    Ok(())
}
