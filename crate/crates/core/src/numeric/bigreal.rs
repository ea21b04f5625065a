//! Binary floating point with a `BigInt` mantissa and explicit precision.
//!
//! A value is `mant * 2^exp` with `|mant| < 2^prec`. Every operation rounds
//! to nearest (ties away from zero) at the larger of its operands'
//! precisions. Everything is integer arithmetic, so results are
//! reproducible bit for bit.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BigReal {
    mant: BigInt,
    exp: i64,
    prec: u32,
}

fn round_shift(m: &BigInt, shift: u64) -> BigInt {
    if shift == 0 {
        return m.clone();
    }
    let half = BigInt::one() << (shift - 1);
    let mag = (m.abs() + half) >> shift;
    if m.is_negative() {
        -mag
    } else {
        mag
    }
}

impl BigReal {
    fn normalized(mut mant: BigInt, mut exp: i64, prec: u32) -> Self {
        let prec = prec.max(2);
        if mant.is_zero() {
            return BigReal { mant, exp: 0, prec };
        }
        loop {
            let bits = mant.bits();
            if bits <= prec as u64 {
                break;
            }
            let shift = bits - prec as u64;
            mant = round_shift(&mant, shift);
            exp += shift as i64;
        }
        // Strip trailing zero bits so equal values compare equal.
        let tz = mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            mant >>= tz;
            exp += tz as i64;
        }
        BigReal { mant, exp, prec }
    }

    pub fn zero(prec: u32) -> Self {
        Self::normalized(BigInt::zero(), 0, prec)
    }

    pub fn one(prec: u32) -> Self {
        Self::from_i64(1, prec)
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        Self::normalized(BigInt::from(v), 0, prec)
    }

    pub fn from_bigint(v: &BigInt, prec: u32) -> Self {
        Self::normalized(v.clone(), 0, prec)
    }

    /// `2^e`.
    pub fn pow2(e: i64, prec: u32) -> Self {
        Self::normalized(BigInt::one(), e, prec)
    }

    pub fn from_ratio(r: &BigRational, prec: u32) -> Self {
        if r.is_zero() {
            return Self::zero(prec);
        }
        let (n, d) = (r.numer(), r.denom());
        let shift = prec as i64 + 2 + d.bits() as i64 - n.bits() as i64;
        let shift = shift.max(0);
        let scaled = n << shift as u64;
        let (q, rem) = scaled.div_rem(d);
        // round to nearest on the quotient
        let q = if (rem.abs() << 1u32) >= *d {
            if q.is_negative() || (q.is_zero() && n.is_negative()) {
                q - 1
            } else {
                q + 1
            }
        } else {
            q
        };
        Self::normalized(q, -shift, prec)
    }

    /// Exact conversion of a finite `f64`.
    pub fn from_f64(v: f64, prec: u32) -> Self {
        assert!(v.is_finite(), "non-finite f64 {v}");
        if v == 0.0 {
            return Self::zero(prec);
        }
        let bits = v.to_bits();
        let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        Self::normalized(BigInt::from(m) * sign, e, prec)
    }

    /// Parses a plain or scientific decimal such as `"1e-10"` or `"-0.00596"`.
    pub fn parse_decimal(s: &str, prec: u32) -> Result<Self> {
        Ok(Self::from_ratio(&parse_decimal_exact(s)?, prec))
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        Self::normalized(self.mant.clone(), self.exp, prec)
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn abs(&self) -> Self {
        BigReal {
            mant: self.mant.abs(),
            exp: self.exp,
            prec: self.prec,
        }
    }

    /// Multiply by `2^k`, exactly.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        BigReal {
            mant: self.mant.clone(),
            exp: self.exp + k,
            prec: self.prec,
        }
    }

    /// Exponent of the leading bit: `2^(top-1) <= |x| < 2^top`.
    /// `None` for zero.
    pub fn top_bit(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.mant.bits() as i64 + self.exp)
        }
    }

    /// Approximate `log2 |x|`; `-inf` for zero. Usable far outside the `f64` range.
    pub fn log2_abs(&self) -> f64 {
        let Some(top) = self.top_bit() else {
            return f64::NEG_INFINITY;
        };
        let bits = self.mant.bits();
        let keep = bits.min(53);
        let head = (self.mant.abs() >> (bits - keep)).to_f64().unwrap_or(1.0);
        head.log2() - keep as f64 + top as f64
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits();
        let keep = bits.min(60);
        let head = (&self.mant >> (bits - keep)).to_f64().unwrap_or(0.0);
        let e = self.exp + (bits - keep) as i64;
        let e = e.clamp(-2200, 2200) as i32;
        head * 2f64.powi(e / 2) * 2f64.powi(e - e / 2)
    }

    pub fn to_ratio(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << self.exp as u64)
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    pub fn powi(&self, n: i64) -> Result<Self> {
        if n < 0 {
            let p = self.powi(-n)?;
            return Self::one(self.prec).checked_div(&p);
        }
        let mut acc = Self::one(self.prec);
        let mut base = self.clone();
        let mut e = n as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let prec = self.prec.max(rhs.prec);
        if self.is_zero() {
            return Ok(Self::zero(prec));
        }
        let shift = prec as i64 + 2 + rhs.mant.bits() as i64 - self.mant.bits() as i64;
        let shift = shift.max(0) as u64;
        let num = &self.mant << shift;
        let (q, r) = num.div_rem(&rhs.mant);
        // Truncated quotient; step away from zero in the sign of the true quotient.
        let negative = self.is_negative() ^ rhs.is_negative();
        let q = if (r.abs() << 1u32) >= rhs.mant.abs() {
            if negative {
                q - 1
            } else {
                q + 1
            }
        } else {
            q
        };
        Ok(Self::normalized(q, self.exp - rhs.exp - shift as i64, prec))
    }

    pub fn sqrt(&self) -> Result<Self> {
        if self.is_negative() {
            return Err(Error::InvalidArgument("square root of a negative number".into()));
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        let want = 2 * self.prec as i64 + 4;
        let mut t = (want - self.mant.bits() as i64).max(0);
        if (self.exp - t).rem_euclid(2) != 0 {
            t += 1;
        }
        let m = (&self.mant << t as u64).sqrt();
        Ok(Self::normalized(m, (self.exp - t) / 2, self.prec))
    }

    pub fn pi(prec: u32) -> Self {
        let bits = prec as u64 + 64;
        let v = atan_inv_fixed(5, bits) * 16 - atan_inv_fixed(239, bits) * 4;
        Self::normalized(v, -(bits as i64), prec)
    }

    pub fn ln2(prec: u32) -> Self {
        let bits = prec as u64 + 64;
        Self::normalized(atanh_inv_fixed(3, bits) * 2, -(bits as i64), prec)
    }

    /// `e^x` at the precision of `x`.
    pub fn exp(&self) -> Self {
        let prec = self.prec;
        if self.is_zero() {
            return Self::one(prec);
        }
        // x = k ln2 + r with |r| <= ln2/2, then r / 2^SQ through Taylor and
        // SQ squarings.
        const SQ: i64 = 12;
        let int_bits = self.top_bit().unwrap_or(0).max(0) as u32;
        let wp = prec + 40 + int_bits + SQ as u32;
        let x = self.with_prec(wp);
        let ln2 = Self::ln2(wp + int_bits);
        let k = (&x / &ln2).round_to_i64();
        let r = &x - &(&ln2 * &Self::from_i64(k, wp));
        let r = r.mul_pow2(-SQ);
        let mut sum = Self::one(wp);
        let mut term = Self::one(wp);
        let eps_bit = -(wp as i64) - 8;
        for n in 1..10_000i64 {
            term = &(&term * &r) / &Self::from_i64(n, wp);
            sum = &sum + &term;
            match term.top_bit() {
                Some(t) if t > eps_bit => {}
                _ => break,
            }
        }
        for _ in 0..SQ {
            sum = &sum * &sum;
        }
        sum.mul_pow2(k).with_prec(prec)
    }

    /// Nearest integer (ties away from zero). Panics if it does not fit.
    pub fn round_to_i64(&self) -> i64 {
        if self.exp >= 0 {
            return (&self.mant << self.exp as u64).to_i64().expect("fits in i64");
        }
        round_shift(&self.mant, (-self.exp) as u64)
            .to_i64()
            .expect("fits in i64")
    }

    /// Scientific notation with `digits` significant digits, e.g. `1.14379e-1`.
    pub fn to_sci(&self, digits: usize) -> String {
        let digits = digits.max(1);
        if self.is_zero() {
            return "0".to_string();
        }
        let mag = self.to_ratio().abs();
        let mut e10 = (self.log2_abs() * std::f64::consts::LOG10_2).floor() as i64;
        let ten = BigInt::from(10);
        let scaled = loop {
            let q = digits as i64 - 1 - e10;
            let scale = BigRational::from_integer(num_traits::pow(ten.clone(), q.unsigned_abs() as usize));
            let v = if q >= 0 { &mag * &scale } else { &mag / &scale };
            let n = v.round().to_integer();
            let lo = num_traits::pow(ten.clone(), digits - 1);
            let hi = &lo * &ten;
            if n >= hi {
                e10 += 1;
            } else if n < lo {
                e10 -= 1;
            } else {
                break n;
            }
        };
        let s = scaled.to_string();
        let sign = if self.is_negative() { "-" } else { "" };
        if s.len() == 1 {
            format!("{sign}{s}e{e10}")
        } else {
            format!("{sign}{}.{}e{e10}", &s[..1], &s[1..])
        }
    }
}

/// `atan(1/m) * 2^bits`, truncated.
fn atan_inv_fixed(m: u64, bits: u64) -> BigInt {
    let m2 = BigInt::from(m * m);
    let mut power = (BigInt::one() << bits) / BigInt::from(m);
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &m2;
        k += 1;
    }
    sum
}

/// `atanh(1/m) * 2^bits`, truncated.
fn atanh_inv_fixed(m: u64, bits: u64) -> BigInt {
    let m2 = BigInt::from(m * m);
    let mut power = (BigInt::one() << bits) / BigInt::from(m);
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !power.is_zero() {
        sum += &power / BigInt::from(2 * k + 1);
        power /= &m2;
        k += 1;
    }
    sum
}

/// Exact rational value of a decimal literal.
pub fn parse_decimal_exact(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("invalid decimal {s:?}"));
    let (body, e10) = match t.find(['e', 'E']) {
        Some(pos) => (&t[..pos], t[pos + 1..].parse::<i64>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (neg, body) = match body.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, body.strip_prefix('+').unwrap_or(body)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("0{int}{frac}").parse().map_err(|_| bad())?;
    let e = e10 - frac.len() as i64;
    let p = num_traits::pow(BigInt::from(10), e.unsigned_abs() as usize);
    let mut v = if e >= 0 {
        BigRational::from_integer(digits * p)
    } else {
        BigRational::new(digits, p)
    };
    if neg {
        v = -v;
    }
    Ok(v)
}

impl PartialOrd for BigReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BigReal {
    fn cmp(&self, other: &Self) -> Ordering {
        let d = self - other;
        if d.is_zero() {
            Ordering::Equal
        } else if d.is_negative() {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl<'a> Add<&'a BigReal> for &'a BigReal {
    type Output = BigReal;
    fn add(self, rhs: &BigReal) -> BigReal {
        let prec = self.prec.max(rhs.prec);
        if rhs.is_zero() {
            return self.with_prec(prec);
        }
        if self.is_zero() {
            return rhs.with_prec(prec);
        }
        let (ta, tb) = (self.top_bit().unwrap(), rhs.top_bit().unwrap());
        let margin = prec as i64 + 3;
        if ta - tb > margin {
            return self.with_prec(prec);
        }
        if tb - ta > margin {
            return rhs.with_prec(prec);
        }
        let e = self.exp.min(rhs.exp);
        let m = (&self.mant << (self.exp - e) as u64) + (&rhs.mant << (rhs.exp - e) as u64);
        BigReal::normalized(m, e, prec)
    }
}

impl Neg for &BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal {
            mant: -&self.mant,
            exp: self.exp,
            prec: self.prec,
        }
    }
}

impl Neg for BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        -&self
    }
}

impl<'a> Sub<&'a BigReal> for &'a BigReal {
    type Output = BigReal;
    fn sub(self, rhs: &BigReal) -> BigReal {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a BigReal> for &'a BigReal {
    type Output = BigReal;
    fn mul(self, rhs: &BigReal) -> BigReal {
        BigReal::normalized(&self.mant * &rhs.mant, self.exp + rhs.exp, self.prec.max(rhs.prec))
    }
}

/// Panics on a zero divisor.
impl<'a> Div<&'a BigReal> for &'a BigReal {
    type Output = BigReal;
    fn div(self, rhs: &BigReal) -> BigReal {
        self.checked_div(rhs).expect("division by zero")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for BigReal {
            type Output = BigReal;
            fn $m(self, rhs: BigReal) -> BigReal { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a BigReal> for BigReal {
            type Output = BigReal;
            fn $m(self, rhs: &BigReal) -> BigReal { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl fmt::Debug for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{} bits]", self.to_sci(20), self.prec)
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(((self.prec as f64) * std::f64::consts::LOG10_2) as usize);
        f.write_str(&self.to_sci(digits))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 128;

    #[test]
    fn pi_and_ln2_digits() {
        assert_eq!(BigReal::pi(P).to_sci(30), "3.14159265358979323846264338328e0");
        assert_eq!(BigReal::ln2(P).to_sci(30), "6.93147180559945309417232121458e-1");
    }

    #[test]
    fn exp_values() {
        assert_eq!(BigReal::one(P).exp().to_sci(30), "2.71828182845904523536028747135e0");
        // e^{-2 pi} = 0.00186744273170798881443021293482...
        let x = -(BigReal::pi(P).mul_pow2(1));
        assert_eq!(x.exp().to_sci(25), "1.867442731707988814430213e-3");
        let big = BigReal::from_i64(-200, P).exp();
        assert_eq!(big.to_sci(20), "1.3838965267367375306e-87");
    }

    #[test]
    fn exp_log_consistency() {
        // e^{ln2 * 37} = 2^37
        let v = (&BigReal::ln2(P + 20) * &BigReal::from_i64(37, P + 20)).exp();
        let rel = (&(&v - &BigReal::pow2(37, P)) / &BigReal::pow2(37, P)).abs();
        assert!(rel.log2_abs() < -(P as f64) + 4.0);
    }

    #[test]
    fn sqrt_two() {
        let r = BigReal::from_i64(2, P).sqrt().unwrap();
        assert_eq!(r.to_sci(30), "1.41421356237309504880168872421e0");
        assert!(BigReal::from_i64(-1, P).sqrt().is_err());
    }

    #[test]
    fn arithmetic_rounds_consistently() {
        let third = BigReal::from_ratio(&BigRational::new(1.into(), 3.into()), P);
        let one = &third * &BigReal::from_i64(3, P);
        assert!((&one - &BigReal::one(P)).abs().log2_abs() < -(P as f64) + 2.0);
        let q = BigReal::from_i64(-7, P).checked_div(&BigReal::from_i64(2, P)).unwrap();
        assert_eq!(q, BigReal::from_f64(-3.5, P));
        assert!(BigReal::one(P).checked_div(&BigReal::zero(P)).is_err());
    }

    #[test]
    fn decimal_round_trip() {
        let v = BigReal::parse_decimal("-0.00596", P).unwrap();
        assert_eq!(v.to_sci(3), "-5.96e-3");
        assert_eq!(BigReal::parse_decimal("1e-10", P).unwrap().to_sci(1), "1e-10");
        assert_eq!(BigReal::parse_decimal("2.554E-6", 64).unwrap().to_sci(4), "2.554e-6");
        assert!(BigReal::parse_decimal("abc", P).is_err());
        assert!(BigReal::parse_decimal("", P).is_err());
        assert_eq!(BigReal::from_i64(999, 64).to_sci(2), "1.0e3");
    }

    #[test]
    fn ordering_and_rounding() {
        let a = BigReal::from_f64(0.5, 64);
        let b = BigReal::from_f64(0.25, 64);
        assert!(a > b);
        assert_eq!(BigReal::from_f64(2.5, 64).round_to_i64(), 3);
        assert_eq!(BigReal::from_f64(-2.5, 64).round_to_i64(), -3);
        assert_eq!(BigReal::from_f64(1e-300, 64).to_f64(), 1e-300);
    }
}
