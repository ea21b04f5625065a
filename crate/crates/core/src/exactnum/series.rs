//! Truncated Laurent / power series over `Q(i)`.

use num_traits::Zero;

use super::GaussianRational as Q;
use crate::error::{Error, Result};

/// `sum_{t} coeffs[t] x^(start + t) + O(x^(start + len))`.
///
/// The truncation travels with the value: [`PowerSeries::order`] is the
/// highest exponent whose coefficient is known. A negative `start` makes
/// this a Laurent series with a finite principal part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    start: i64,
    coeffs: Vec<Q>,
}

impl PowerSeries {
    /// Series known through `x^order`; missing coefficients are zero,
    /// extra ones are dropped.
    pub fn new(start: i64, mut coeffs: Vec<Q>, order: i64) -> Self {
        let len = (order - start + 1).max(0) as usize;
        coeffs.resize(len, Q::zero());
        PowerSeries { start, coeffs }
    }

    /// A polynomial viewed as a series known through `x^order`.
    pub fn from_poly(coeffs: &[Q], order: i64) -> Self {
        Self::new(0, coeffs.to_vec(), order)
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn order(&self) -> i64 {
        self.start + self.coeffs.len() as i64 - 1
    }

    /// Number of stored terms.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    /// Coefficient of `x^e`; zero below `start`, `None` beyond the truncation.
    pub fn coeff(&self, e: i64) -> Option<Q> {
        if e < self.start {
            Some(Q::zero())
        } else {
            self.coeffs.get((e - self.start) as usize).cloned()
        }
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        PowerSeries {
            start: self.start + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Cauchy product truncated at `x^order` (or earlier, if the operands
    /// do not determine that many terms).
    pub fn mul(&self, other: &Self, order: i64) -> Self {
        let start = self.start + other.start;
        let known = (self.order() + other.start).min(other.order() + self.start);
        let order = order.min(known);
        let len = (order - start + 1).max(0) as usize;
        let mut out = vec![Q::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                out[i + j] += &(a * b);
            }
        }
        PowerSeries { start, coeffs: out }
    }

    /// Multiplicative inverse through `x^order`. The lowest stored
    /// coefficient must be nonzero.
    pub fn inverse(&self, order: i64) -> Result<Self> {
        let lead = match self.coeffs.first() {
            Some(c) if !c.is_zero() => c,
            _ => return Err(Error::NotInvertible),
        };
        let start = -self.start;
        // Relative precision of the inverse equals that of the input.
        let order = order.min(start + self.coeffs.len() as i64 - 1);
        let len = (order - start + 1).max(0) as usize;
        let inv0 = lead.checked_inv()?;
        let mut out: Vec<Q> = Vec::with_capacity(len);
        for k in 0..len {
            if k == 0 {
                out.push(inv0.clone());
                continue;
            }
            let mut acc = Q::zero();
            for j in 1..=k.min(self.coeffs.len() - 1) {
                acc += &(&self.coeffs[j] * &out[k - j]);
            }
            out.push(-(&acc * &inv0));
        }
        Ok(PowerSeries { start, coeffs: out })
    }
}
