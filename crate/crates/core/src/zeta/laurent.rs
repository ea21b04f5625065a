use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactnum::{check_even_weight, dense, GaussianRational as Q, PowerSeries};

/// Laurent coefficients `a_m`, `m = -(n+1) ..= M`, of
/// `(1-x)^{w+1} (x+i)^n / ((x+i-ix)^{w+1} (ix)^{n+1})` at `x = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentCoeffs {
    w: usize,
    n: usize,
    series: PowerSeries,
}

impl LaurentCoeffs {
    pub fn w(&self) -> usize {
        self.w
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Truncation order `M`.
    pub fn order(&self) -> i64 {
        self.series.order()
    }

    /// `a_m`; zero below the pole, `None` beyond `M`.
    pub fn coeff(&self, m: i64) -> Option<Q> {
        self.series.coeff(m)
    }

    /// `a_{-(n+1)}`.
    pub fn leading(&self) -> Q {
        self.series.coeffs()[0].clone()
    }

    pub fn series(&self) -> &PowerSeries {
        &self.series
    }

    /// Multiplies back by `(x + i - ix)^{w+1} (ix)^{n+1}` and compares with
    /// `(1-x)^{w+1} (x+i)^n` through `x^{M+n+1}`.
    pub fn reconstructs(&self) -> bool {
        let (w, n) = (self.w, self.n);
        let top = self.order() + n as i64 + 1;
        let lin = [Q::i(), &Q::from(1) - &Q::i()];
        let mut den = (0..=w).fold(vec![Q::from(1)], |acc, _| dense::mul(&acc, &lin));
        den = dense::scale(&den, &Q::i_pow(n as i64 + 1));
        let den = PowerSeries::from_poly(&den, top).shift(n as i64 + 1);
        let prod = self.series.mul(&den, top);
        let num = numerator(w, n);
        prod.order() == top
            && (0..=top).all(|e| {
                let expect = num.get(e as usize).cloned().unwrap_or_else(Q::zero);
                prod.coeff(e) == Some(expect)
            })
    }
}

fn numerator(w: usize, n: usize) -> Vec<Q> {
    let a = dense::linear_pow(&Q::from(1), &Q::from(-1), w + 1);
    let b = dense::linear_pow(&Q::i(), &Q::from(1), n);
    dense::mul(&a, &b)
}

/// Exact `a_m` for `m` up to `order`.
pub fn laurent_coeffs(w: usize, n: usize, order: i64) -> Result<LaurentCoeffs> {
    check_even_weight(w)?;
    if n == 0 {
        return Err(Error::InvalidArgument("n must be a positive integer".into()));
    }
    let pole = n as i64 + 1;
    if order < -pole {
        return Err(Error::InvalidArgument(format!(
            "truncation order {order} is below the pole order -{pole}"
        )));
    }
    // x^{-(n+1)} * num / (i^{n+1} ((1-i)x + i)^{w+1}), computed through x^{order + n + 1}
    let len = order + pole;
    let num = PowerSeries::from_poly(&numerator(w, n), len);
    let den = dense::scale(
        &dense::linear_pow(&Q::i(), &(&Q::from(1) - &Q::i()), w + 1),
        &Q::i_pow(pole),
    );
    let inv = PowerSeries::from_poly(&den, len).inverse(len)?;
    Ok(LaurentCoeffs {
        w,
        n,
        series: num.mul(&inv, len).shift(-pole),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::binom_int;

    /// Independent route: `((1-i)x + i)^{-(w+1)} = i^{-(w+1)} sum_m C(-(w+1), m) c^m x^m`
    /// with `c = (1-i)/i`.
    fn oracle(w: usize, n: usize, order: i64) -> Vec<Q> {
        let pole = n as i64 + 1;
        let len = (order + pole + 1) as usize;
        let c = (&Q::from(1) - &Q::i()).checked_div(&Q::i()).unwrap();
        let pref = Q::i_pow(-(w as i64 + 1) - pole);
        let inv: Vec<Q> = (0..len)
            .map(|m| {
                let b = binom_int(-(w as i64 + 1), m as i64).unwrap();
                &(&Q::from_bigint(b) * &c.pow(m as i64).unwrap()) * &pref
            })
            .collect();
        let mut prod = dense::mul(&numerator(w, n), &inv);
        prod.truncate(len);
        prod
    }

    #[test]
    fn leading_coefficient_closed_form() {
        for w in (2..=12).step_by(2) {
            for n in 1..=5 {
                let l = laurent_coeffs(w, n, 4).unwrap();
                assert_eq!(l.leading(), -Q::i_pow(-(w as i64)), "w = {w}, n = {n}");
                if w % 4 == 0 {
                    assert_eq!(l.leading(), Q::from(-1));
                }
            }
        }
        assert_eq!(laurent_coeffs(10, 1, 0).unwrap().leading(), Q::from(1));
    }

    #[test]
    fn matches_binomial_oracle() {
        for (w, n) in [(2, 1), (4, 3), (10, 1), (10, 5), (12, 2)] {
            let l = laurent_coeffs(w, n, 20).unwrap();
            let o = oracle(w, n, 20);
            assert_eq!(l.series().coeffs(), o.as_slice(), "w = {w}, n = {n}");
        }
    }

    #[test]
    fn reconstruction_and_truncation() {
        let l = laurent_coeffs(10, 2, 50).unwrap();
        assert_eq!(l.order(), 50);
        assert!(l.reconstructs());
        assert!(l.coeff(51).is_none());
        assert!(l.coeff(-4).unwrap().is_zero());

        let mut bad = l.clone();
        let mut c = bad.series.coeffs().to_vec();
        c[5] += &Q::from(1);
        bad.series = PowerSeries::new(bad.series.start(), c, bad.series.order());
        assert!(!bad.reconstructs());

        let minimal = laurent_coeffs(4, 3, -4).unwrap();
        assert_eq!(minimal.series().len(), 1);
        assert!(minimal.reconstructs());
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(laurent_coeffs(3, 1, 5).is_err());
        assert!(laurent_coeffs(4, 0, 5).is_err());
        assert!(laurent_coeffs(4, 2, -4).is_err());
    }
}
