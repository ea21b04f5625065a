use std::fmt;

use num_traits::Zero;

use crate::exactnum::{check_even_weight, dense, GaussianRational as Q};
use crate::error::{Error, Result};

/// A polynomial of degree at most `w` in the period variable `X`.
///
/// Always stores exactly `w + 1` coefficients `a_0..a_w` (ascending). The
/// weight parameter is metadata and is never inferred from the degree: an
/// odd period polynomial for `w = 10` has degree 9 but still lives in
/// `V_10`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyX {
    w: usize,
    coeffs: Vec<Q>,
}

impl PolyX {
    pub fn new(w: usize, coeffs: Vec<Q>) -> Result<Self> {
        check_even_weight(w)?;
        if coeffs.len() != w + 1 {
            return Err(Error::LengthMismatch {
                w,
                expected: w + 1,
                found: coeffs.len(),
            });
        }
        Ok(PolyX { w, coeffs })
    }

    /// Pads with zeros up to length `w + 1`; rejects nonzero terms above `X^w`.
    pub fn from_coeffs(w: usize, mut coeffs: Vec<Q>) -> Result<Self> {
        check_even_weight(w)?;
        if let Some(d) = dense::degree(&coeffs) {
            if d > w {
                return Err(Error::DegreeTooLarge { degree: d, w });
            }
        }
        coeffs.resize(w + 1, Q::zero());
        Ok(PolyX { w, coeffs })
    }

    pub fn from_ints(w: usize, coeffs: &[i64]) -> Result<Self> {
        Self::from_coeffs(w, coeffs.iter().map(|&c| Q::from(c)).collect())
    }

    pub fn zero(w: usize) -> Result<Self> {
        Self::from_coeffs(w, Vec::new())
    }

    pub fn monomial(w: usize, j: usize) -> Result<Self> {
        let mut c = vec![Q::zero(); j + 1];
        c[j] = Q::from(1);
        Self::from_coeffs(w, c)
    }

    pub fn w(&self) -> usize {
        self.w
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> &Q {
        &self.coeffs[j]
    }

    pub fn into_coeffs(self) -> Vec<Q> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        dense::is_zero(&self.coeffs)
    }

    pub fn degree(&self) -> Option<usize> {
        dense::degree(&self.coeffs)
    }

    pub fn eval(&self, x: &Q) -> Q {
        dense::eval(&self.coeffs, x)
    }

    pub fn scale(&self, c: &Q) -> Self {
        PolyX {
            w: self.w,
            coeffs: dense::scale(&self.coeffs, c),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_w(other)?;
        Ok(PolyX {
            w: self.w,
            coeffs: dense::add(&self.coeffs, &other.coeffs),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&Q::from(-1)))
    }

    /// `X^w P(1/X)`: the coefficient reversal.
    pub fn reversed(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        PolyX { w: self.w, coeffs }
    }

    fn same_w(&self, other: &Self) -> Result<()> {
        if self.w != other.w {
            return Err(Error::InvalidArgument(format!(
                "weight mismatch: w = {} vs w = {}",
                self.w, other.w
            )));
        }
        Ok(())
    }
}

impl fmt::Debug for PolyX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyX(w={}, {})", self.w, self)
    }
}

impl fmt::Display for PolyX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, &self.coeffs, "X")
    }
}

pub(crate) fn write_poly(f: &mut fmt::Formatter<'_>, coeffs: &[Q], var: &str) -> fmt::Result {
    let mut first = true;
    for (j, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        if !first {
            write!(f, " + ")?;
        }
        first = false;
        match j {
            0 => write!(f, "{c}")?,
            1 => write!(f, "{c}*{var}")?,
            _ => write!(f, "{c}*{var}^{j}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn length_is_exactly_w_plus_one() {
        let p = PolyX::from_ints(10, &[0, 4, 0, 25, 0, 42, 0, 25, 0, 4]).unwrap();
        assert_eq!(p.coeffs().len(), 11);
        assert_eq!(p.degree(), Some(9));
        assert!(matches!(
            PolyX::new(2, vec![Q::zero(); 2]),
            Err(Error::LengthMismatch { expected: 3, found: 2, .. })
        ));
        assert!(matches!(
            PolyX::from_ints(2, &[0, 0, 0, 1]),
            Err(Error::DegreeTooLarge { degree: 3, w: 2 })
        ));
        assert!(matches!(PolyX::zero(5), Err(Error::BadWeight(5))));
    }

    #[test]
    fn reversal() {
        let p = PolyX::from_ints(2, &[1, 2, 0]).unwrap();
        assert_eq!(p.reversed(), PolyX::from_ints(2, &[0, 2, 1]).unwrap());
        assert_eq!(p.to_string(), "2*X + 1");
    }
}
