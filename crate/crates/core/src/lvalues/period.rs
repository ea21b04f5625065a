use crate::error::{Error, Result};
use crate::exactnum::{binom_int, binomial_in_s, factorial, GaussianRational as Q};
use crate::numeric::{BigComplex, BigReal};

use super::completed::{critical_values, GUARD_BITS};
use super::NewformData;

const BOUND_PREC: u32 = 64;

/// A polynomial of degree at most `w` with high-precision complex
/// coefficients (ascending) and an absolute error bound per coefficient.
#[derive(Clone, Debug)]
pub struct NumericPoly {
    w: usize,
    prec: u32,
    coeffs: Vec<BigComplex>,
    errors: Vec<BigReal>,
}

impl NumericPoly {
    pub fn new(w: usize, prec: u32, coeffs: Vec<BigComplex>, errors: Vec<BigReal>) -> Result<Self> {
        if coeffs.len() != w + 1 || errors.len() != w + 1 {
            return Err(Error::LengthMismatch {
                w,
                expected: w + 1,
                found: coeffs.len().min(errors.len()),
            });
        }
        Ok(NumericPoly {
            w,
            prec,
            coeffs,
            errors,
        })
    }

    /// An exact polynomial rounded to `prec` bits (plus guard bits).
    pub fn from_exact(w: usize, coeffs: &[Q], prec: u32) -> Result<Self> {
        let wp = prec + GUARD_BITS;
        let mut c: Vec<BigComplex> = coeffs.iter().map(|q| BigComplex::from_gaussian(q, wp)).collect();
        c.resize(w + 1, BigComplex::zero(wp));
        let errors = c.iter().map(|z| ulp_bound(z, wp)).collect();
        Self::new(w, prec, c, errors)
    }

    pub fn w(&self) -> usize {
        self.w
    }

    /// Target precision in bits; coefficients carry [`GUARD_BITS`] more.
    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn coeffs(&self) -> &[BigComplex] {
        &self.coeffs
    }

    pub fn errors(&self) -> &[BigReal] {
        &self.errors
    }

    pub fn max_error(&self) -> BigReal {
        self.errors.iter().cloned().fold(BigReal::zero(BOUND_PREC), Ord::max)
    }

    /// Coefficients of `P(1 - s)`.
    pub fn reflect(&self) -> NumericPoly {
        let wp = self.prec + GUARD_BITS;
        let mut out = vec![BigComplex::zero(wp); self.w + 1];
        let mut errs = vec![BigReal::zero(BOUND_PREC); self.w + 1];
        // (1 - s)^d = sum_e C(d, e) (-1)^e s^e
        for (d, c) in self.coeffs.iter().enumerate() {
            for e in 0..=d {
                let b = binom_int(d as i64, e as i64).unwrap();
                let b = if e % 2 == 0 { b } else { -b };
                let br = BigReal::from_bigint(&b, wp);
                out[e] = &out[e] + &c.scale(&br);
                errs[e] = &errs[e] + &(&self.errors[d] * &br.abs().with_prec(BOUND_PREC));
            }
        }
        for (e, z) in errs.iter_mut().zip(&out) {
            *e = &*e + &rounding(z, wp, self.w + 2);
        }
        NumericPoly {
            w: self.w,
            prec: self.prec,
            coeffs: out,
            errors: errs,
        }
    }
}

fn ulp_bound(z: &BigComplex, wp: u32) -> BigReal {
    rounding(z, wp, 1)
}

/// `ops * 2^{-wp} * (|re| + |im|)`, a first-order bound for `ops` roundings.
fn rounding(z: &BigComplex, wp: u32, ops: usize) -> BigReal {
    let mag = (&z.re.abs() + &z.im.abs()).with_prec(BOUND_PREC);
    &mag * &(&BigReal::pow2(-(wp as i64), BOUND_PREC) * &BigReal::from_i64(ops as i64, BOUND_PREC))
}

/// `R_f(X) = (sqrt N)^{k-1} (k-2)!/(2 pi)^{k-1} sum_{n=0}^{k-2} (2 pi X)^n / (n! (sqrt N)^n) L(f, k-n-1)`.
pub fn build_r(f: &NewformData, prec: u32) -> Result<NumericPoly> {
    let k = f.weight() as i64;
    let w = f.w();
    let wp = prec + GUARD_BITS;
    let values = critical_values(f, prec)?;
    let two_pi = BigReal::pi(wp).mul_pow2(1);
    let sqrt_n = BigReal::from_i64(f.level() as i64, wp).sqrt()?;
    let pref = &(&sqrt_n.powi(k - 1)? * &BigReal::from_bigint(&factorial(w as u64), wp)) / &two_pi.powi(k - 1)?;

    let mut coeffs = Vec::with_capacity(w + 1);
    let mut errors = Vec::with_capacity(w + 1);
    for n in 0..=w {
        let lv = &values[w - n]; // s = k - n - 1
        debug_assert_eq!(lv.s as usize, w + 1 - n);
        let factor = &(&pref * &two_pi.powi(n as i64)?)
            / &(&BigReal::from_bigint(&factorial(n as u64), wp) * &sqrt_n.powi(n as i64)?);
        let c = BigComplex::real(&factor * &lv.l);
        let err = &(&lv.l_error * &factor.abs().with_prec(BOUND_PREC)) + &rounding(&c, wp, 4 * w + 16);
        coeffs.push(c);
        errors.push(err);
    }
    NumericPoly::new(w, prec, coeffs, errors)
}

/// `Z(s) = sum_j a_j C(w - s - j, w)` with high-precision coefficients.
pub fn numeric_rv(r: &NumericPoly) -> NumericPoly {
    let w = r.w;
    let wp = r.prec + GUARD_BITS;
    let mut out = vec![BigComplex::zero(wp); w + 1];
    let mut errs = vec![BigReal::zero(BOUND_PREC); w + 1];
    for (j, (a, e)) in r.coeffs.iter().zip(&r.errors).enumerate() {
        let basis = binomial_in_s(w, j).expect("valid weight");
        for (d, b) in basis.iter().enumerate() {
            let br = BigReal::from_ratio(b, wp);
            out[d] = &out[d] + &a.scale(&br);
            errs[d] = &errs[d] + &(e * &br.abs().with_prec(BOUND_PREC));
        }
    }
    for (e, z) in errs.iter_mut().zip(&out) {
        *e = &*e + &rounding(z, wp, 2 * w + 4);
    }
    NumericPoly {
        w,
        prec: r.prec,
        coeffs: out,
        errors: errs,
    }
}

/// `max_j |a_j + eps i^w a_{w-j}|`.
pub fn numeric_fricke_residual(r: &NumericPoly, eps: i8) -> Result<BigReal> {
    if eps != 1 && eps != -1 {
        return Err(Error::InvalidArgument(format!("eps must be +1 or -1, got {eps}")));
    }
    let w = r.w;
    let sign = if (w / 2).is_multiple_of(2) { eps } else { -eps };
    let sign = BigReal::from_i64(sign as i64, r.prec + GUARD_BITS);
    let mut max = BigReal::zero(BOUND_PREC);
    for j in 0..=w {
        let v = &r.coeffs[j] + &r.coeffs[w - j].scale(&sign);
        max = max.max(v.abs().with_prec(BOUND_PREC));
    }
    Ok(max)
}

/// `max_d |coefficient of s^d in Z(s) + eps i^w Z(1 - s)|`.
pub fn numeric_functional_eq_residual(z: &NumericPoly, eps: i8) -> Result<BigReal> {
    if eps != 1 && eps != -1 {
        return Err(Error::InvalidArgument(format!("eps must be +1 or -1, got {eps}")));
    }
    let sign = if (z.w / 2).is_multiple_of(2) { eps } else { -eps };
    let sign = BigReal::from_i64(sign as i64, z.prec + GUARD_BITS);
    let refl = z.reflect();
    Ok(z.coeffs
        .iter()
        .zip(&refl.coeffs)
        .map(|(a, b)| (a + &b.scale(&sign)).abs().with_prec(BOUND_PREC))
        .fold(BigReal::zero(BOUND_PREC), Ord::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyspace::PolyX;
    use crate::rv::rv_forward;

    fn delta_r() -> NumericPoly {
        build_r(&NewformData::delta_for_precision(128).unwrap(), 128).unwrap()
    }

    fn re(p: &NumericPoly, j: usize) -> f64 {
        p.coeffs()[j].re.to_f64()
    }

    #[test]
    fn delta_period_polynomial_structure() {
        let r = delta_r();
        // Frozen from an independent 300-bit evaluation.
        let expect = [
            "5.958964989578237853835564e-3",
            "3.707710464948065294503214e-2",
            "1.143790224388489543611215e-1",
        ];
        for (j, e) in expect.iter().enumerate() {
            assert_eq!(r.coeffs()[j].re.to_sci(25), *e, "X^{j}");
        }
        assert!((re(&r, 8) / re(&r, 4) - 1.0 / 3.0).abs() < 1e-6);
        assert!((re(&r, 9) / re(&r, 1) - 1.0).abs() < 1e-6);
        assert!((re(&r, 0) / re(&r, 2) - 36.0 / 691.0).abs() < 1e-12);
        let bound = BigReal::pow2(-(128f64 - 3.0 * std::f64::consts::LOG2_10) as i64, 64);
        assert!(numeric_fricke_residual(&r, 1).unwrap() < bound);
        assert!(r.max_error() < BigReal::pow2(-100, 64));
    }

    #[test]
    fn delta_zeta_functional_equation() {
        let z = numeric_rv(&delta_r());
        let res = numeric_functional_eq_residual(&z, 1).unwrap();
        assert!(res < BigReal::parse_decimal("1e-20", 64).unwrap());
        assert!(numeric_functional_eq_residual(&z, -1).unwrap() > BigReal::parse_decimal("1e-4", 64).unwrap());
    }

    #[test]
    fn numeric_rv_agrees_with_exact() {
        let p = PolyX::new(4, vec![Q::ratio(1, 3), Q::from_ints(2, -1), Q::ratio(-5, 7), 0.into(), Q::ratio(9, 11)]).unwrap();
        let exact = rv_forward(&p);
        let num = numeric_rv(&NumericPoly::from_exact(4, p.coeffs(), 128).unwrap());
        for (d, q) in exact.coeffs().iter().enumerate() {
            let e = BigComplex::from_gaussian(q, 200);
            let diff = (&num.coeffs()[d] - &e).abs();
            assert!(diff <= num.errors()[d], "s^{d}");
            assert!(diff.log2_abs() < -120.0);
        }
    }

    #[test]
    fn reflection_matches_exact() {
        let zc = vec![Q::from(1), Q::ratio(2, 3), Q::from(-5)];
        let z = NumericPoly::from_exact(2, &zc, 96).unwrap().reflect();
        // 1 + 2/3 (1-s) - 5 (1-s)^2 = -10/3 + (28/3) s - 5 s^2
        assert!((re(&z, 0) + 10.0 / 3.0).abs() < 1e-15);
        assert!((re(&z, 1) - 28.0 / 3.0).abs() < 1e-15);
        assert!((re(&z, 2) + 5.0).abs() < 1e-15);
    }
}
