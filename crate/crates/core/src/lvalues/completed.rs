//! Critical values of `Lambda(f, s) = (sqrt(N)/2pi)^s Gamma(s) L(f, s)`.
//!
//! With `x_n = 2 pi n / sqrt(N)` and a split point `t > 0`,
//!
//! ```text
//! Lambda(s) = sum_n a_n [ x_n^{-s} Gamma(s, x_n t) + eps i^k x_n^{-(k-s)} Gamma(k-s, x_n / t) ],
//! ```
//!
//! and for integer `s`, `Gamma(s, y) = (s-1)! e^{-y} sum_{j<s} y^j / j!`.
//! Terms are summed in ascending `n`. The result does not depend on `t`,
//! which is what [`functional_equation_check`] exploits.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use super::NewformData;
use crate::error::{Error, Result};
use crate::exactnum::factorial;
use crate::numeric::BigReal;

/// Extra working bits beyond the requested precision.
pub const GUARD_BITS: u32 = 16;

/// Precision used to carry error bounds.
const BOUND_PREC: u32 = 64;

/// Split points used by the pipeline: the Fricke fixed point and a second
/// point for the symmetry self-test.
pub(crate) fn default_split_points() -> [BigRational; 2] {
    [BigRational::one(), BigRational::new(6.into(), 5.into())]
}

#[derive(Clone, Debug)]
pub struct LValue {
    pub s: u32,
    pub lambda: BigReal,
    /// Bound on `|lambda - Lambda(f, s)|`: truncated tail plus rounding.
    pub lambda_error: BigReal,
    pub l: BigReal,
    pub l_error: BigReal,
    /// Number of coefficients `a_1..a_M` summed.
    pub terms_used: usize,
}

/// `log2` of a bound on `sum_{n > m} |term_n|`, or `None` while the tail
/// model does not yet apply at `m`.
///
/// Uses `|a_n| <= 2 n^{k/2}` and `Gamma(s, y) <= s y^{s-1} e^{-y}` for
/// `y >= s - 1`, which give per-term bounds
/// `B_n = 4 k T^k n^{k/2} e^{-u x_n} / x_n` with `T = max(t, 1/t)`,
/// `u = min(t, 1/t)`. The ratio `B_{n+1}/B_n` decreases in `n`, so the tail
/// is at most `B_{m+1} / (1 - r)` with `r` the ratio at `m + 1`.
fn tail_log2(level: u64, k: u32, t: f64, m: usize) -> Option<f64> {
    let (big_t, u) = (t.max(1.0 / t), t.min(1.0 / t));
    let sqrt_n = (level as f64).sqrt();
    let x = |n: f64| std::f64::consts::TAU * n / sqrt_n;
    let n1 = (m + 1) as f64;
    if u * x(n1) < k as f64 {
        return None;
    }
    let half_k = k as f64 / 2.0;
    let ratio = ((n1 + 1.0) / n1).powf(half_k) * (-u * x(1.0)).exp();
    if ratio >= 1.0 {
        return None;
    }
    let log2_b = 2.0 + (k as f64).log2() + k as f64 * big_t.log2() + half_k * n1.log2()
        - u * x(n1) * std::f64::consts::LOG2_E
        - x(n1).log2();
    Some(log2_b - (1.0 - ratio).log2())
}

/// Smallest `M` such that truncating after `a_M` leaves a tail below
/// `2^{-prec-4}` for every split point in `ts`.
pub fn required_nmax(level: u64, weight: u32, prec: u32, ts: &[BigRational]) -> usize {
    let target = -(prec as f64) - 4.0;
    ts.iter()
        .map(|t| {
            let t = t.to_f64().expect("finite split point");
            (1usize..)
                .find(|&m| tail_log2(level, weight, t, m).is_some_and(|b| b <= target))
                .expect("tail bound eventually applies")
        })
        .max()
        .unwrap_or(1)
}

/// `x^{-s} Gamma(s, y)` for integer `s >= 1`, given `x^{-s}` and `e^{-y}`.
fn piece(s: u32, x_inv_pow: &BigReal, y: &BigReal, exp_neg_y: &BigReal, wp: u32) -> BigReal {
    let mut sum = BigReal::zero(wp);
    let mut term = BigReal::one(wp);
    for j in 0..s {
        if j > 0 {
            term = &(&term * y) / &BigReal::from_i64(j as i64, wp);
        }
        sum = &sum + &term;
    }
    let fact = BigReal::from_bigint(&factorial(s as u64 - 1), wp);
    &(&(&fact * exp_neg_y) * &sum) * x_inv_pow
}

/// `Lambda(f, s)` with split point `t`, correct to about `2^{-prec}`.
pub fn completed_l_split(f: &NewformData, s: u32, prec: u32, t: &BigRational) -> Result<LValue> {
    let k = f.weight();
    if s == 0 || s >= k {
        return Err(Error::InvalidArgument(format!("s = {s} outside the critical range 1..={}", k - 1)));
    }
    if !t.is_positive() {
        return Err(Error::InvalidArgument("split point must be positive".into()));
    }
    let m = required_nmax(f.level(), k, prec, std::slice::from_ref(t));
    if f.an().len() < m {
        return Err(Error::InsufficientCoefficients {
            required: m,
            available: f.an().len(),
        });
    }
    let wp = prec + GUARD_BITS;
    let two_pi = BigReal::pi(wp).mul_pow2(1);
    let sqrt_n = BigReal::from_i64(f.level() as i64, wp).sqrt()?;
    let x1 = &two_pi / &sqrt_n;
    let tr = BigReal::from_ratio(t, wp);
    // eps i^k is real because k is even.
    let sign = if (k / 2).is_multiple_of(2) { f.fricke() } else { -f.fricke() };
    let sign = BigReal::from_i64(sign as i64, wp);

    let mut lambda = BigReal::zero(wp);
    let mut abs_sum = BigReal::zero(wp);
    for (idx, a) in f.an()[..m].iter().enumerate() {
        if a == &BigInt::from(0) {
            continue;
        }
        let n = idx as i64 + 1;
        let x = &x1 * &BigReal::from_i64(n, wp);
        let x_inv = BigReal::one(wp).checked_div(&x)?;
        let y1 = &x * &tr;
        let y2 = x.checked_div(&tr)?;
        let p1 = piece(s, &x_inv.powi(s as i64)?, &y1, &(-&y1).exp(), wp);
        let p2 = piece(k - s, &x_inv.powi((k - s) as i64)?, &y2, &(-&y2).exp(), wp);
        let an = BigReal::from_bigint(a, wp);
        let contrib = &an * &(&p1 + &(&sign * &p2));
        lambda = &lambda + &contrib;
        abs_sum = &abs_sum + &(&an.abs() * &(&p1 + &p2));
    }

    let tail = tail_log2(f.level(), k, t.to_f64().unwrap(), m).expect("m satisfies the tail model");
    let tail = BigReal::pow2(tail.ceil() as i64, BOUND_PREC);
    // First-order rounding model: each term passes through at most 4k + 64 roundings.
    let rounding = &abs_sum.with_prec(BOUND_PREC)
        * &BigReal::pow2(-(wp as i64) + ((4 * k + 64) as f64).log2().ceil() as i64, BOUND_PREC);
    let lambda_error = &tail + &rounding;

    let scale = &x1.powi(s as i64)? / &BigReal::from_bigint(&factorial(s as u64 - 1), wp);
    let l = &lambda * &scale;
    let l_error = &lambda_error * &scale.with_prec(BOUND_PREC);
    Ok(LValue {
        s,
        lambda,
        lambda_error,
        l,
        l_error,
        terms_used: m,
    })
}

/// `Lambda(f, s)` split at the Fricke fixed point `t = 1`.
pub fn completed_l(f: &NewformData, s: u32, prec: u32) -> Result<LValue> {
    completed_l_split(f, s, prec, &BigRational::one())
}

/// `Lambda(f, s)` for `s = 1, ..., k - 1`.
pub fn critical_values(f: &NewformData, prec: u32) -> Result<Vec<LValue>> {
    (1..f.weight()).map(|s| completed_l(f, s, prec)).collect()
}

#[derive(Clone, Debug)]
pub struct FeCheck {
    /// `|Lambda_1(s) - eps i^k Lambda_{6/5}(k - s)|` for `s = 1..k-1`.
    pub deviations: Vec<BigReal>,
    pub max_deviation: BigReal,
    /// Combined error bounds of the two evaluations, maximized over `s`.
    pub allowed: BigReal,
    pub pass: bool,
}

/// Compares `Lambda(s)` (split at 1) with `eps i^k Lambda(k - s)` (split at
/// 6/5). A wrong Fricke sign shows up as a deviation of order `|Lambda|`.
pub fn functional_equation_check(f: &NewformData, prec: u32) -> Result<FeCheck> {
    let k = f.weight();
    let [one, other] = default_split_points();
    let sign = if (k / 2).is_multiple_of(2) { f.fricke() } else { -f.fricke() };
    let mut deviations = Vec::new();
    let mut allowed = BigReal::zero(BOUND_PREC);
    for s in 1..k {
        let a = completed_l_split(f, s, prec, &one)?;
        let b = completed_l_split(f, k - s, prec, &other)?;
        let reflected = &b.lambda * &BigReal::from_i64(sign as i64, b.lambda.prec());
        deviations.push((&a.lambda - &reflected).abs().with_prec(BOUND_PREC));
        allowed = allowed.max(&a.lambda_error + &b.lambda_error);
    }
    let max_deviation = deviations.iter().cloned().fold(BigReal::zero(BOUND_PREC), Ord::max);
    Ok(FeCheck {
        pass: max_deviation <= allowed,
        deviations,
        max_deviation,
        allowed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn delta() -> NewformData {
        NewformData::delta_for_precision(160).unwrap()
    }

    #[test]
    fn required_nmax_grows_with_precision() {
        let ts = default_split_points();
        let a = required_nmax(1, 12, 64, &ts);
        let b = required_nmax(1, 12, 128, &ts);
        let c = required_nmax(1, 12, 256, &ts);
        assert!(a < b && b < c, "{a} {b} {c}");
        assert!(required_nmax(11, 4, 128, &ts) > b);
    }

    #[test]
    fn insufficient_coefficients_reported() {
        let f = NewformData::delta(5).unwrap();
        match completed_l(&f, 6, 128) {
            Err(Error::InsufficientCoefficients { required, available: 5 }) => assert!(required > 5),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn symmetric_and_positive() {
        let f = delta();
        let fe = functional_equation_check(&f, 128).unwrap();
        assert!(fe.pass, "{:?}", fe.max_deviation);
        assert!(fe.max_deviation < BigReal::parse_decimal("1e-20", 64).unwrap());
        for v in critical_values(&f, 128).unwrap() {
            assert!(!v.l.is_negative() && !v.l.is_zero(), "L(Delta, {}) = {:?}", v.s, v.l);
        }
    }

    #[test]
    fn wrong_sign_detected() {
        let good = delta();
        let bad = NewformData::new(1, 12, -1, good.an().to_vec(), "wrong").unwrap();
        assert!(!functional_equation_check(&bad, 96).unwrap().pass);
    }

    #[test]
    fn doubling_precision_agrees_within_bound() {
        let f = NewformData::delta_for_precision(256).unwrap();
        for s in [1, 4, 6, 11] {
            let lo = completed_l(&f, s, 96).unwrap();
            let hi = completed_l(&f, s, 192).unwrap();
            let diff = (&lo.lambda - &hi.lambda).abs();
            assert!(diff <= &lo.lambda_error + &hi.lambda_error, "s = {s}");
            assert!(lo.lambda_error.log2_abs() < -90.0);
        }
    }

    #[test]
    fn matches_independent_evaluation() {
        // Frozen from an independent 300-bit evaluation of the same series.
        let f = delta();
        let cases = [
            (1, "5.958964989578237853835564e-3", "3.744128126851554173877032e-2"),
            (6, "1.544879360395027206043006e-3", "7.921228386460305693559449e-1"),
            (11, "5.958964989578237853835564e-3", "9.894329131003375995553678e-1"),
        ];
        for (s, lambda, l) in cases {
            let v = completed_l(&f, s, 128).unwrap();
            assert_eq!(v.lambda.to_sci(25), lambda, "s = {s}");
            assert_eq!(v.l.to_sci(25), l, "s = {s}");
        }
    }

    #[test]
    fn rejects_out_of_range() {
        let f = delta();
        assert!(completed_l(&f, 0, 64).is_err());
        assert!(completed_l(&f, 12, 64).is_err());
        assert!(completed_l_split(&f, 3, 64, &BigRational::from_integer((-1).into())).is_err());
    }
}
