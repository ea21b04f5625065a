//! The Rodriguez-Villegas transform `R(X)/(1 - X)^{w+1} = sum_{n>=0} Z(-n) X^n`.
//!
//! The forward direction uses the closed form
//! `Z(s) = sum_j a_j C(w - s - j, w)`; the inverse convolves the values
//! `Z(0), Z(-1), ...` with `(1 - X)^{w+1}`. The two routes share no code
//! beyond `binom_int`, so their agreement is a meaningful cross-check.

use std::fmt;

use num_traits::Zero;

use crate::exactnum::{binom_int, binomial_in_s, check_even_weight, dense, GaussianRational as Q};
use crate::error::{Error, Result};
use crate::polyspace::{write_poly, PolyX};

/// A polynomial of degree at most `w` in the zeta variable `s`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ZetaPoly {
    w: usize,
    coeffs: Vec<Q>,
}

impl ZetaPoly {
    pub fn new(w: usize, coeffs: Vec<Q>) -> Result<Self> {
        check_even_weight(w)?;
        if coeffs.len() != w + 1 {
            return Err(Error::LengthMismatch {
                w,
                expected: w + 1,
                found: coeffs.len(),
            });
        }
        Ok(ZetaPoly { w, coeffs })
    }

    pub fn from_coeffs(w: usize, mut coeffs: Vec<Q>) -> Result<Self> {
        check_even_weight(w)?;
        if let Some(d) = dense::degree(&coeffs) {
            if d > w {
                return Err(Error::DegreeTooLarge { degree: d, w });
            }
        }
        coeffs.resize(w + 1, Q::zero());
        Ok(ZetaPoly { w, coeffs })
    }

    pub fn w(&self) -> usize {
        self.w
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> &Q {
        &self.coeffs[d]
    }

    pub fn degree(&self) -> Option<usize> {
        dense::degree(&self.coeffs)
    }

    pub fn is_zero(&self) -> bool {
        dense::is_zero(&self.coeffs)
    }

    pub fn eval(&self, s: &Q) -> Q {
        dense::eval(&self.coeffs, s)
    }

    pub fn eval_int(&self, s: i64) -> Q {
        self.eval(&Q::from(s))
    }

    /// `Z(c0 + c1 s)` as a polynomial in `s`.
    pub fn compose_affine(&self, c0: &Q, c1: &Q) -> Self {
        ZetaPoly {
            w: self.w,
            coeffs: dense::compose_affine(&self.coeffs, c0, c1),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.w != other.w {
            return Err(Error::InvalidArgument(format!(
                "weight mismatch: w = {} vs w = {}",
                self.w, other.w
            )));
        }
        Ok(ZetaPoly {
            w: self.w,
            coeffs: dense::add(&self.coeffs, &other.coeffs),
        })
    }

    pub fn scale(&self, c: &Q) -> Self {
        ZetaPoly {
            w: self.w,
            coeffs: dense::scale(&self.coeffs, c),
        }
    }
}

impl fmt::Debug for ZetaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ZetaPoly(w={}, {})", self.w, self)
    }
}

impl fmt::Display for ZetaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, &self.coeffs, "s")
    }
}

/// `C(w - s - j, w)` as a [`ZetaPoly`].
pub fn binomial_basis(w: usize, j: usize) -> Result<ZetaPoly> {
    let c = binomial_in_s(w, j)?.into_iter().map(Q::real).collect();
    ZetaPoly::new(w, c)
}

/// `Z(s) = sum_{j=0}^{w} a_j C(w - s - j, w)`.
pub fn rv_forward(r: &PolyX) -> ZetaPoly {
    let w = r.w();
    let mut acc = vec![Q::zero(); w + 1];
    for (j, aj) in r.coeffs().iter().enumerate() {
        if aj.is_zero() {
            continue;
        }
        let basis = binomial_in_s(w, j).expect("j <= w and w valid");
        for (d, b) in basis.iter().enumerate() {
            acc[d] += &aj.scale(b);
        }
    }
    ZetaPoly::new(w, acc).expect("length w + 1")
}

/// `Z(0), Z(-1), ..., Z(-(count - 1))`.
pub fn series_coeffs(z: &ZetaPoly, count: usize) -> Vec<Q> {
    (0..count as i64).map(|n| z.eval_int(-n)).collect()
}

/// Product coefficients `sum_{j=0}^{min(m, w+1)} (-1)^j C(w+1, j) Z(-(m-j))`
/// of `(1 - X)^{w+1} * sum Z(-n) X^n`, for `m = 0..count`.
fn convolve_with_one_minus_x(values: &[Q], w: usize, count: usize) -> Vec<Q> {
    (0..count)
        .map(|m| {
            let mut acc = Q::zero();
            for j in 0..=m.min(w + 1) {
                let c = binom_int(w as i64 + 1, j as i64).expect("j >= 0");
                let c = if j % 2 == 0 { c } else { -c };
                acc += &(&values[m - j] * &Q::from_bigint(c));
            }
            acc
        })
        .collect()
}

/// Recovers `R` from `Z` by convolution. The product coefficients for
/// `X^{w+1}..X^{2w+2}` are computed too and must vanish; a nonzero one
/// means `deg Z > w` slipped in.
pub fn rv_inverse(z: &ZetaPoly) -> Result<PolyX> {
    let w = z.w();
    let count = 2 * w + 3;
    let values = series_coeffs(z, count);
    let mut prod = convolve_with_one_minus_x(&values, w, count);
    if let Some(m) = prod[w + 1..].iter().position(|c| !c.is_zero()) {
        return Err(Error::Malformed(format!(
            "coefficient of X^{} in (1 - X)^(w+1) * sum Z(-n) X^n is nonzero; deg Z exceeds w",
            w + 1 + m
        )));
    }
    prod.truncate(w + 1);
    PolyX::new(w, prod)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Q {
        Q::ratio(n, d)
    }

    fn delta_minus() -> PolyX {
        PolyX::from_ints(10, &[0, 4, 0, 25, 0, 42, 0, 25, 0, 4, 0]).unwrap()
    }

    fn printed_z_minus() -> ZetaPoly {
        let c = vec![
            r(0, 1),
            r(-727, 1260),
            r(403, 360),
            r(-13193, 11340),
            r(70841, 90720),
            r(-2137, 8640),
            r(833, 8640),
            r(-367, 30240),
            r(7, 2160),
            r(-5, 36288),
            r(1, 36288),
        ];
        ZetaPoly::new(10, c).unwrap()
    }

    #[test]
    fn forward_on_delta_minus() {
        assert_eq!(rv_forward(&delta_minus()), printed_z_minus());
    }

    #[test]
    fn inverse_on_delta_minus() {
        assert_eq!(rv_inverse(&printed_z_minus()).unwrap(), delta_minus());
    }

    #[test]
    fn constant_input_gives_binomial_series() {
        let z = rv_forward(&PolyX::from_ints(2, &[1]).unwrap());
        assert_eq!(z, binomial_basis(2, 0).unwrap());
        assert_eq!(series_coeffs(&z, 4), vec![r(1, 1), r(3, 1), r(6, 1), r(10, 1)]);
        assert_eq!(rv_inverse(&z).unwrap(), PolyX::from_ints(2, &[1]).unwrap());
    }

    #[test]
    fn top_monomial() {
        // X^2/(1 - X)^3 = X^2 + 3X^3 + ..., so Z(0) = Z(-1) = 0, Z(-2) = 1.
        let z = rv_forward(&PolyX::from_ints(2, &[0, 0, 1]).unwrap());
        assert_eq!(series_coeffs(&z, 4), vec![r(0, 1), r(0, 1), r(1, 1), r(3, 1)]);
        // C(-s, 2) = s(s+1)/2
        assert_eq!(z.coeffs(), &[r(0, 1), r(1, 2), r(1, 2)]);
    }

    #[test]
    fn constant_zeta_round_trips() {
        let z = ZetaPoly::from_coeffs(2, vec![r(1, 1)]).unwrap();
        let big_r = rv_inverse(&z).unwrap();
        // (1 - X)^3 / (1 - X) = 1 - 2X + X^2
        assert_eq!(big_r, PolyX::from_ints(2, &[1, -2, 1]).unwrap());
        assert_eq!(rv_forward(&big_r), z);
    }

    #[test]
    fn zeta_minus_vanishes_at_zero() {
        assert!(series_coeffs(&rv_forward(&delta_minus()), 1)[0].is_zero());
    }

    #[test]
    fn leading_coefficient_is_coefficient_sum_over_w_factorial() {
        let z = rv_forward(&delta_minus());
        assert_eq!(z.coeff(10), &r(100, 3628800));
        assert_eq!(z.coeff(10), &r(1, 36288));
    }

    #[test]
    fn convolution_reproduces_r_then_zeros() {
        let big_r = delta_minus();
        let z = rv_forward(&big_r);
        let prod = convolve_with_one_minus_x(&series_coeffs(&z, 40), 10, 40);
        assert_eq!(&prod[..11], big_r.coeffs());
        assert!(prod[11..].iter().all(Zero::is_zero));
    }

    #[test]
    fn zeta_degree_bounded_by_w() {
        assert!(ZetaPoly::from_coeffs(2, vec![r(0, 1), r(0, 1), r(0, 1), r(1, 1)]).is_err());
    }

    fn gr() -> impl Strategy<Value = Q> {
        (-20i64..20, 1i64..12, -20i64..20, 1i64..12)
            .prop_map(|(a, b, c, d)| &Q::ratio(a, b) + &(&Q::ratio(c, d) * &Q::i()))
    }

    fn poly() -> impl Strategy<Value = PolyX> {
        (1usize..=8).prop_flat_map(|h| {
            proptest::collection::vec(gr(), 2 * h + 1).prop_map(move |c| PolyX::new(2 * h, c).unwrap())
        })
    }

    proptest! {
        #[test]
        fn round_trips(p in poly()) {
            let z = rv_forward(&p);
            prop_assert_eq!(rv_inverse(&z).unwrap(), p);
            prop_assert_eq!(rv_forward(&rv_inverse(&z).unwrap()), z);
        }

        #[test]
        fn linear(p in poly(), alpha in gr(), seed in proptest::collection::vec(gr(), 17)) {
            let q = PolyX::new(p.w(), seed[..p.w() + 1].to_vec()).unwrap();
            let lhs = rv_forward(&p.scale(&alpha).add(&q).unwrap());
            let rhs = rv_forward(&p).scale(&alpha).add(&rv_forward(&q)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn matches_newton_series(p in poly()) {
            // Coefficients of R(X) * sum_m C(w + m, m) X^m against Z(-n).
            let w = p.w();
            let count = 3 * w + 1;
            let newton: Vec<Q> = (0..count)
                .map(|m| Q::from_bigint(binom_int((w + m) as i64, m as i64).unwrap()))
                .collect();
            let prod = dense::mul(p.coeffs(), &newton);
            let z = rv_forward(&p);
            for (n, expect) in prod.iter().take(count).enumerate() {
                prop_assert_eq!(z.eval_int(-(n as i64)), expect.clone());
            }
        }
    }
}
