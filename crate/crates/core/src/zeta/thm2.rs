//! The truncated triple-sum identity
//!
//! ```text
//! Z(-n) + (-i)^w sum_{m=1}^{n+1} a_{-m} Z(1-m)
//!   + sum_{k>=0} sum_{m=0}^{k+n} sum_{j=0}^{k+n-m}
//!       C(k+n,n) C(m+w,w) C(w+1,j) (-1)^{j+1} (-i)^k (1-i)^{-(m+w+1)} Z(m+j-k-n) = 0.
//! ```
//!
//! The innermost sum depends on `(k, m)` only through `q = k + n - m`, so
//! it is memoized as `D[q] = sum_j C(w+1,j) (-1)^{j+1} Z(j-q)`. Each term
//! `t_k` is exact; only the stopping decision looks at magnitudes.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::laurent::laurent_coeffs;
use crate::error::{Error, Result};
use crate::exactnum::{binom_int, GaussianRational as Q};
use crate::numeric::BigReal;
use crate::rv::ZetaPoly;

/// Terms before this index never trigger the stop.
pub const K_MIN: usize = 40;

/// Assumed geometric decay ratio of the tail, as `(num, den)`.
pub const RHO: (i64, i64) = (3, 4);

/// Precision used for magnitudes and bounds.
const MAG_PREC: u32 = 96;

#[derive(Clone, Debug)]
pub struct Thm2Report {
    pub n: usize,
    pub w: usize,
    pub exact_part: Q,
    /// `t_0 ..= t_K`.
    pub terms: Vec<Q>,
    /// `exact_part + t_0 + ... + t_k` for each `k`.
    pub partial_sums: Vec<Q>,
    pub total: Q,
    pub total_abs: BigReal,
    /// Index `K` of the last term summed.
    pub k_stop: usize,
    /// `|t_K| rho / (1 - rho)`: the tail beyond `K` if it decays at ratio `rho`.
    pub residual_bound: BigReal,
    pub converged: bool,
}

impl Thm2Report {
    /// `|t_k|` for every computed term.
    pub fn term_magnitudes(&self) -> Vec<BigReal> {
        self.terms.iter().map(magnitude).collect()
    }
}

fn magnitude(q: &Q) -> BigReal {
    let re = BigReal::from_ratio(q.re(), MAG_PREC);
    let im = BigReal::from_ratio(q.im(), MAG_PREC);
    (&(&re * &re) + &(&im * &im)).sqrt().expect("nonnegative")
}

/// Series values `Z(t)`; only `t <= 0` is ever requested.
struct SeriesValues<'a> {
    z: &'a ZetaPoly,
    cache: HashMap<i64, Q>,
}

impl SeriesValues<'_> {
    fn get(&mut self, t: i64) -> Q {
        assert!(t <= 0, "Z evaluated at positive argument {t}");
        let z = self.z;
        self.cache.entry(t).or_insert_with(|| z.eval_int(t)).clone()
    }
}

struct Terms<'a> {
    w: usize,
    n: usize,
    vals: SeriesValues<'a>,
    d: Vec<Q>,
    binom_w1: Vec<BigInt>,
    /// `(1-i)^{-(e)}` for `e = 0, 1, ...`
    inv_pow: Vec<Q>,
}

impl<'a> Terms<'a> {
    fn new(z: &'a ZetaPoly, n: usize) -> Self {
        let w = z.w();
        Terms {
            w,
            n,
            vals: SeriesValues {
                z,
                cache: HashMap::new(),
            },
            d: Vec::new(),
            binom_w1: (0..=w as i64 + 1).map(|j| binom_int(w as i64 + 1, j).unwrap()).collect(),
            inv_pow: vec![Q::from(1)],
        }
    }

    fn d(&mut self, q: usize) -> Q {
        while self.d.len() <= q {
            let q = self.d.len() as i64;
            let mut acc = Q::zero();
            for j in 0..=q.min(self.w as i64 + 1) {
                let v = self.vals.get(j - q);
                let c = Q::from_bigint(self.binom_w1[j as usize].clone());
                let c = if j % 2 == 0 { -c } else { c };
                acc += &(&c * &v);
            }
            self.d.push(acc);
        }
        self.d[q].clone()
    }

    fn inv_pow(&mut self, e: usize) -> Q {
        let step = Q::ratio(1, 2) + Q::ratio(1, 2) * Q::i();
        while self.inv_pow.len() <= e {
            let next = self.inv_pow.last().unwrap() * &step;
            self.inv_pow.push(next);
        }
        self.inv_pow[e].clone()
    }

    fn term(&mut self, k: usize) -> Q {
        let (w, n) = (self.w, self.n);
        let mut acc = Q::zero();
        for m in 0..=k + n {
            let d = self.d(k + n - m);
            if d.is_zero() {
                continue;
            }
            let c = binom_int((m + w) as i64, w as i64).unwrap();
            acc += &(&(&Q::from_bigint(c) * &self.inv_pow(m + w + 1)) * &d);
        }
        let c = binom_int((k + n) as i64, n as i64).unwrap();
        &(&Q::from_bigint(c) * &Q::i_pow(-(k as i64))) * &acc
    }
}

/// Evaluates the identity for `n`, summing exact terms until the stopping
/// rule fires or `k_max` is reached.
///
/// Stops at the first `K >= K_MIN` where the last three magnitudes are below
/// `tol (1 - rho) / rho` and the last two consecutive ratios are at most
/// `rho`. Failing that by `k_max` yields [`Error::NotConverged`] carrying the
/// partial report.
pub fn thm2_residual(z: &ZetaPoly, n: usize, tol: &BigReal, k_max: usize) -> Result<Thm2Report> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be a positive integer".into()));
    }
    if tol.is_negative() || tol.is_zero() {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    let w = z.w();
    let laurent = laurent_coeffs(w, n, -1)?;
    let mut terms = Terms::new(z, n);

    let mut exact = Q::zero();
    for m in 1..=n as i64 + 1 {
        exact += &(&laurent.coeff(-m).expect("principal part") * &terms.vals.get(1 - m));
    }
    let exact_part = &terms.vals.get(-(n as i64)) + &(&Q::from_ints(0, -1).pow(w as i64)? * &exact);

    let rho = BigReal::from_i64(RHO.0, MAG_PREC)
        .checked_div(&BigReal::from_i64(RHO.1, MAG_PREC))
        .unwrap();
    let one = BigReal::one(MAG_PREC);
    let threshold = &(tol.with_prec(MAG_PREC) * &(&one - &rho)) / &rho;

    let mut list = Vec::new();
    let mut mags: Vec<BigReal> = Vec::new();
    let mut partial_sums = Vec::new();
    let mut running = exact_part.clone();
    let mut converged = false;
    for k in 0..=k_max {
        let t = terms.term(k);
        running += &t;
        mags.push(magnitude(&t));
        list.push(t);
        partial_sums.push(running.clone());
        if k >= K_MIN && stop_here(&mags, &threshold, &rho) {
            converged = true;
            break;
        }
    }

    let k_stop = list.len() - 1;
    let residual_bound = &(&mags[k_stop] * &rho) / &(&one - &rho);
    let report = Thm2Report {
        n,
        w,
        exact_part,
        total_abs: magnitude(&running),
        total: running,
        terms: list,
        partial_sums,
        k_stop,
        residual_bound,
        converged,
    };
    if converged {
        Ok(report)
    } else {
        Err(Error::NotConverged(Box::new(report)))
    }
}

fn stop_here(mags: &[BigReal], threshold: &BigReal, rho: &BigReal) -> bool {
    let last = &mags[mags.len() - 3..];
    if !last.iter().all(|m| m < threshold) {
        return false;
    }
    // |t_{k+1}| <= rho |t_k| on the last two steps
    last.windows(2).all(|p| p[1] <= &p[0] * rho)
}
