//! Simultaneous (Aberth) root finding at high precision, and the
//! critical-line / unit-circle diagnostics built on it.

use crate::error::{Error, Result};
use crate::exactnum::GaussianRational as Q;
use crate::numeric::{BigComplex, BigReal};

const GUARD: u32 = 32;
const MAX_ITER: usize = 2000;

#[derive(Clone, Debug)]
pub struct Roots {
    /// All roots, repeated according to multiplicity.
    pub roots: Vec<BigComplex>,
    /// Distinct roots with multiplicities; roots closer than `2^{-prec/4}` share a cluster.
    pub clusters: Vec<(BigComplex, usize)>,
    /// `max |P(root)| / ||P||_root`, where `||P||_root = sum |c_j| max(1, |root|)^j`.
    pub max_relative_residual: BigReal,
    pub iterations: usize,
}

fn horner(coeffs: &[BigComplex], z: &BigComplex) -> (BigComplex, BigComplex) {
    let prec = z.prec();
    let mut p = BigComplex::zero(prec);
    let mut dp = BigComplex::zero(prec);
    for c in coeffs.iter().rev() {
        dp = &(&dp * z) + &p;
        p = &(&p * z) + c;
    }
    (p, dp)
}

fn scale_norm(coeffs: &[BigComplex], z: &BigComplex) -> BigReal {
    let prec = z.prec();
    let r = z.abs().max(BigReal::one(prec));
    let mut acc = BigReal::zero(prec);
    let mut pw = BigReal::one(prec);
    for c in coeffs {
        acc = &acc + &(&c.abs() * &pw);
        pw = &pw * &r;
    }
    acc
}

/// Roots of `sum coeffs[j] x^j`, computed at `prec` bits.
pub fn roots(coeffs: &[BigComplex], prec: u32) -> Result<Roots> {
    let Some(deg) = coeffs.iter().rposition(|c| !c.is_zero()) else {
        return Err(Error::ZeroPolynomial);
    };
    let wp = prec + GUARD;
    let zeros = coeffs.iter().position(|c| !c.is_zero()).unwrap();
    let lead = BigComplex::new(coeffs[deg].re.with_prec(wp), coeffs[deg].im.with_prec(wp));
    let monic: Vec<BigComplex> = coeffs[zeros..=deg]
        .iter()
        .map(|c| {
            let c = BigComplex::new(c.re.with_prec(wp), c.im.with_prec(wp));
            c.checked_div(&lead).expect("leading coefficient is nonzero")
        })
        .collect();
    let d = deg - zeros;

    let mut found: Vec<BigComplex> = (0..zeros).map(|_| BigComplex::zero(wp)).collect();
    let mut iterations = 0;
    if d > 0 {
        let (z, it) = aberth(&monic, d, wp)?;
        iterations = it;
        found.extend(z);
    }

    let full: Vec<BigComplex> = coeffs
        .iter()
        .map(|c| BigComplex::new(c.re.with_prec(wp), c.im.with_prec(wp)))
        .collect();
    let mut max_rel = BigReal::zero(prec);
    for z in &found {
        let (p, _) = horner(&full, z);
        let rel = p.abs().checked_div(&scale_norm(&full, z))?;
        max_rel = max_rel.max(rel);
    }
    let limit = BigReal::pow2(-(prec as i64) / 2, prec);
    if max_rel > limit {
        return Err(Error::RootsNotConverged(iterations));
    }

    let sep = BigReal::pow2(-(prec as i64) / 4, prec);
    let mut clusters: Vec<(BigComplex, usize)> = Vec::new();
    for z in &found {
        match clusters.iter_mut().find(|(c, _)| (c - z).abs() < sep) {
            Some(entry) => entry.1 += 1,
            None => clusters.push((z.clone(), 1)),
        }
    }
    let roots = found.iter().map(|z| round(z, prec)).collect();
    let clusters = clusters.into_iter().map(|(z, m)| (round(&z, prec), m)).collect();
    Ok(Roots {
        roots,
        clusters,
        max_relative_residual: max_rel.with_prec(prec),
        iterations,
    })
}

fn round(z: &BigComplex, prec: u32) -> BigComplex {
    BigComplex::new(z.re.with_prec(prec), z.im.with_prec(prec))
}

fn aberth(monic: &[BigComplex], d: usize, wp: u32) -> Result<(Vec<BigComplex>, usize)> {
    let radius = 1.0
        + monic[..d]
            .iter()
            .map(|c| c.abs().to_f64())
            .fold(0.0f64, f64::max);
    // Deterministic perturbed circle; the offset avoids symmetric stalls.
    let mut z: Vec<BigComplex> = (0..d)
        .map(|k| {
            let theta = std::f64::consts::TAU * (k as f64 + 0.25) / d as f64 + 0.4;
            let r = radius * (1.0 + 0.01 * k as f64 / d as f64);
            BigComplex::from_f64(r * theta.cos(), r * theta.sin(), wp)
        })
        .collect();
    let step_tol = BigReal::pow2(-(wp as i64) + GUARD as i64 / 2, wp);
    let res_tol = BigReal::pow2(-(wp as i64) + GUARD as i64 / 2, wp);
    let one = BigComplex::real(BigReal::one(wp));
    for it in 1..=MAX_ITER {
        let mut max_step = BigReal::zero(wp);
        let mut all_small_residual = true;
        for k in 0..d {
            let (p, dp) = horner(monic, &z[k]);
            if p.is_zero() {
                continue;
            }
            let norm = scale_norm(monic, &z[k]);
            if p.abs() > &norm * &res_tol {
                all_small_residual = false;
            }
            let ratio = match p.checked_div(&dp) {
                Ok(r) => r,
                Err(_) => {
                    // Stationary point: nudge off it.
                    z[k] = &z[k] + &BigComplex::from_f64(1e-3, 1e-3, wp);
                    all_small_residual = false;
                    continue;
                }
            };
            let mut repulse = BigComplex::zero(wp);
            for j in 0..d {
                if j != k {
                    let diff = &z[k] - &z[j];
                    if let Ok(r) = one.checked_div(&diff) {
                        repulse = &repulse + &r;
                    }
                }
            }
            let denom = &one - &(&ratio * &repulse);
            let step = ratio.checked_div(&denom).unwrap_or(ratio);
            let scale = z[k].abs().max(BigReal::one(wp));
            max_step = max_step.max(step.abs().checked_div(&scale)?);
            z[k] = &z[k] - &step;
        }
        if max_step < step_tol || all_small_residual {
            return Ok((z, it));
        }
    }
    Err(Error::RootsNotConverged(MAX_ITER))
}

/// Roots of an exact polynomial.
pub fn roots_exact(coeffs: &[Q], prec: u32) -> Result<Roots> {
    let c: Vec<BigComplex> = coeffs.iter().map(|q| BigComplex::from_gaussian(q, prec + GUARD)).collect();
    roots(&c, prec)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RhMode {
    /// Roots on `Re(s) = 1/2`.
    CriticalLine,
    /// Roots on `|X| = 1`.
    UnitCircle,
}

#[derive(Clone, Debug)]
pub struct RhReport {
    pub mode: RhMode,
    pub max_deviation: BigReal,
    pub pass: bool,
    pub roots: Roots,
}

/// Largest distance of a root from the critical line or the unit circle.
pub fn rh_check(coeffs: &[BigComplex], mode: RhMode, tol: &BigReal, prec: u32) -> Result<RhReport> {
    let roots = roots(coeffs, prec)?;
    let half = BigReal::pow2(-1, prec);
    let one = BigReal::one(prec);
    let mut max_dev = BigReal::zero(prec);
    for z in &roots.roots {
        let dev = match mode {
            RhMode::CriticalLine => (&z.re - &half).abs(),
            RhMode::UnitCircle => (&z.abs() - &one).abs(),
        };
        max_dev = max_dev.max(dev);
    }
    Ok(RhReport {
        mode,
        pass: max_dev < *tol,
        max_deviation: max_dev,
        roots,
    })
}
