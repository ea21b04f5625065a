//! Period-variable polynomials, the weight `-w` slash action, and the
//! relations satisfied by period polynomials.
//!
//! Every check here returns the exact residual polynomial rather than a
//! boolean; a relation holds iff its residual is the zero polynomial.

mod linalg;
mod polyx;

use num_integer::Roots;
use num_traits::{One, Zero};

pub use linalg::{nullspace, rref};
pub use polyx::PolyX;
pub(crate) use polyx::write_poly;

use crate::exactnum::{check_even_weight, dense, GaussianRational as Q};
use crate::error::{Error, Result};

/// An invertible 2x2 matrix `(a, b; c, d)` over `Q(i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat2 {
    a: Q,
    b: Q,
    c: Q,
    d: Q,
}

impl Mat2 {
    pub fn new(a: Q, b: Q, c: Q, d: Q) -> Result<Self> {
        let m = Mat2 { a, b, c, d };
        if m.det().is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(m)
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    /// `(0, -1; 1, 0)`
    pub fn s() -> Self {
        Self::from_ints(0, -1, 1, 0).expect("det 1")
    }

    /// `(1, -1; 1, 0)`
    pub fn u() -> Self {
        Self::from_ints(1, -1, 1, 0).expect("det 1")
    }

    /// The Fricke involution `W_N = (0, -1; N, 0)`.
    pub fn fricke(level: u64) -> Result<Self> {
        Self::from_ints(0, -1, level as i64, 0)
    }

    pub fn entries(&self) -> [&Q; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn det(&self) -> Q {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    pub fn mul(&self, o: &Self) -> Self {
        Mat2 {
            a: &(&self.a * &o.a) + &(&self.b * &o.c),
            b: &(&self.a * &o.b) + &(&self.b * &o.d),
            c: &(&self.c * &o.a) + &(&self.d * &o.c),
            d: &(&self.c * &o.b) + &(&self.d * &o.d),
        }
    }
}

/// `(P|g)(X) = det(g)^{-w/2} (cX + d)^w P((aX + b)/(cX + d))`.
///
/// Since `w` is even the normalization is an integer power of the
/// determinant, so this is exact for every invertible `g` over `Q(i)`.
pub fn slash(p: &PolyX, g: &Mat2) -> Result<PolyX> {
    let w = p.w();
    let norm = g.det().pow(-((w / 2) as i64))?;
    let mut out = vec![Q::zero(); w + 1];
    // Powers of (aX + b) ascending and of (cX + d) descending.
    let mut num_pows = vec![vec![Q::one()]];
    for j in 1..=w {
        let next = dense::mul(&num_pows[j - 1], &[g.b.clone(), g.a.clone()]);
        num_pows.push(next);
    }
    let mut den_pows = vec![vec![Q::one()]];
    for j in 1..=w {
        let next = dense::mul(&den_pows[j - 1], &[g.d.clone(), g.c.clone()]);
        den_pows.push(next);
    }
    for (j, aj) in p.coeffs().iter().enumerate() {
        if aj.is_zero() {
            continue;
        }
        let term = dense::mul(&num_pows[j], &den_pows[w - j]);
        for (e, t) in term.iter().enumerate() {
            out[e] += &(aj * t);
        }
    }
    PolyX::new(w, dense::scale(&out, &norm))
}

/// `P|g_1 + P|g_2 + ...`; `None` stands for the identity matrix.
fn slash_sum(p: &PolyX, gs: &[Option<&Mat2>]) -> Result<PolyX> {
    let mut acc = PolyX::zero(p.w())?;
    for g in gs {
        let term = match g {
            None => p.clone(),
            Some(g) => slash(p, g)?,
        };
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

/// Even and odd parts `(P+, P-)`.
pub fn parity_split(p: &PolyX) -> (PolyX, PolyX) {
    let pick = |parity: usize| -> PolyX {
        let c = p
            .coeffs()
            .iter()
            .enumerate()
            .map(|(j, a)| if j % 2 == parity { a.clone() } else { Q::zero() })
            .collect();
        PolyX::new(p.w(), c).expect("same length")
    };
    (pick(0), pick(1))
}

fn check_sign(eps: i8) -> Result<()> {
    if eps != 1 && eps != -1 {
        return Err(Error::InvalidArgument(format!("sign must be +1 or -1, got {eps}")));
    }
    Ok(())
}

/// `R(X) + eps i^w X^w R(1/X)`, computed coefficientwise as
/// `a_j + eps i^w a_{w-j}`.
pub fn check_fricke(r: &PolyX, eps: i8) -> Result<PolyX> {
    check_sign(eps)?;
    let w = r.w();
    let c = &Q::i_pow(w as i64) * &Q::from(eps as i64);
    let coeffs = (0..=w).map(|j| r.coeff(j) + &(&c * r.coeff(w - j))).collect();
    PolyX::new(w, coeffs)
}

/// The same residual as [`check_fricke`], obtained by substitution through
/// the slash action of `(0, 1; 1, 0)` (determinant `-1`).
pub fn check_fricke_by_substitution(r: &PolyX, eps: i8) -> Result<PolyX> {
    check_sign(eps)?;
    let w = r.w();
    let flip = Mat2::from_ints(0, 1, 1, 0)?;
    // slash by flip gives (-1)^{w/2} X^w R(1/X)
    let c = &Q::i_pow(w as i64) * &Q::from(-1).pow((w / 2) as i64)?;
    let c = &c * &Q::from(eps as i64);
    r.add(&slash(r, &flip)?.scale(&c))
}

/// `r|(1 + eps W_N)` for the unnormalized period polynomial.
pub fn check_fricke_r(r: &PolyX, level: u64, eps: i8) -> Result<PolyX> {
    check_sign(eps)?;
    let wn = Mat2::fricke(level)?;
    r.add(&slash(r, &wn)?.scale(&Q::from(eps as i64)))
}

/// `R(X) + (-iX)^w R(1/X)`.
pub fn check_res1(r: &PolyX) -> Result<PolyX> {
    let c = Q::from_ints(0, -1).pow(r.w() as i64)?;
    r.add(&r.reversed().scale(&c))
}

/// `R(X) + (-iX)^w R((X - i)/(-iX)) + (-iX - 1)^w R(-i/(-iX - 1))`,
/// expanded term by term after clearing denominators.
pub fn check_res2(r: &PolyX) -> Result<PolyX> {
    let w = r.w();
    let i = Q::i();
    let mi = Q::from_ints(0, -1);
    let mut term2 = Vec::new();
    let mut term3 = Vec::new();
    for (j, aj) in r.coeffs().iter().enumerate() {
        if aj.is_zero() {
            continue;
        }
        // a_j (X - i)^j (-iX)^{w-j}
        let mut t2 = dense::mul(
            &dense::linear_pow(&-&i, &Q::one(), j),
            &dense::linear_pow(&Q::zero(), &mi, w - j),
        );
        t2 = dense::scale(&t2, aj);
        term2 = dense::add(&term2, &t2);
        // a_j (-i)^j (-iX - 1)^{w-j}
        let t3 = dense::linear_pow(&Q::from(-1), &mi, w - j);
        term3 = dense::add(&term3, &dense::scale(&t3, &(aj * &mi.pow(j as i64)?)));
    }
    let mut total = dense::add(r.coeffs(), &dense::add(&term2, &term3));
    if let Some(d) = dense::degree(&total) {
        if d > w {
            return Err(Error::Malformed(format!(
                "Res2 expansion produced degree {d} > w = {w}"
            )));
        }
    }
    total.resize(w + 1, Q::zero());
    PolyX::new(w, total)
}

/// The two matrices `(1, -i; -i, 0)` and `(0, -i; -i, -1)` whose slash
/// images are the second and third terms of [`check_res2`].
pub fn res2_matrices() -> (Mat2, Mat2) {
    let mi = Q::from_ints(0, -1);
    (
        Mat2::new(Q::one(), mi.clone(), mi.clone(), Q::zero()).expect("det 1"),
        Mat2::new(Q::zero(), mi.clone(), mi, Q::from(-1)).expect("det 1"),
    )
}

/// `(r|(1 + S), r|(1 + U + U^2))`.
pub fn check_es_classical(r: &PolyX) -> Result<(PolyX, PolyX)> {
    let s = Mat2::s();
    let u = Mat2::u();
    let u2 = u.mul(&u);
    Ok((
        slash_sum(r, &[None, Some(&s)])?,
        slash_sum(r, &[None, Some(&u), Some(&u2)])?,
    ))
}

fn exact_sqrt(level: u64) -> Result<u64> {
    if level == 0 {
        return Err(Error::InvalidArgument("level must be positive".into()));
    }
    let s = level.sqrt();
    if s * s != level {
        return Err(Error::NonSquareLevel(level));
    }
    Ok(s)
}

fn check_weight_pair(p: &PolyX, k: usize) -> Result<()> {
    if k != p.w() + 2 {
        return Err(Error::InvalidArgument(format!(
            "weight k = {k} does not match w = {} (need k = w + 2)",
            p.w()
        )));
    }
    Ok(())
}

/// Returns `(c, t)` with `R_j = c * t^j * r_j`, where `c = (sqrt(N)/i)^{k-1}`
/// and `t = 1/(i sqrt(N))`.
fn change_of_variable(level: u64, k: usize) -> Result<(Q, Q)> {
    let root = Q::from(exact_sqrt(level)? as i64);
    let c = root.checked_div(&Q::i())?.pow(k as i64 - 1)?;
    let t = (&Q::i() * &root).checked_inv()?;
    Ok((c, t))
}

/// `R(X) = (sqrt(N)/i)^{k-1} r(X / (i sqrt(N)))`. Exact only for square `N`.
#[allow(non_snake_case)]
pub fn r_to_R(r: &PolyX, level: u64, k: usize) -> Result<PolyX> {
    check_weight_pair(r, k)?;
    let (c, t) = change_of_variable(level, k)?;
    let mut f = c;
    let coeffs = r
        .coeffs()
        .iter()
        .map(|a| {
            let v = a * &f;
            f = &f * &t;
            v
        })
        .collect();
    PolyX::new(r.w(), coeffs)
}

/// Inverse of [`r_to_R`].
#[allow(non_snake_case)]
pub fn R_to_r(big_r: &PolyX, level: u64, k: usize) -> Result<PolyX> {
    check_weight_pair(big_r, k)?;
    let (c, t) = change_of_variable(level, k)?;
    let (ci, ti) = (c.checked_inv()?, t.checked_inv()?);
    let mut f = ci;
    let coeffs = big_r
        .coeffs()
        .iter()
        .map(|a| {
            let v = a * &f;
            f = &f * &ti;
            v
        })
        .collect();
    PolyX::new(big_r.w(), coeffs)
}

/// The space `W_w` of polynomials killed by `1 + S` and `1 + U + U^2`.
#[derive(Clone, Debug)]
pub struct WSpace {
    pub w: usize,
    /// Basis of all of `W_w`.
    pub basis: Vec<PolyX>,
    /// Basis of the even part `W_w^+`.
    pub plus: Vec<PolyX>,
    /// Basis of the odd part `W_w^-`.
    pub minus: Vec<PolyX>,
}

impl WSpace {
    pub fn dim_plus(&self) -> usize {
        self.plus.len()
    }

    pub fn dim_minus(&self) -> usize {
        self.minus.len()
    }
}

/// Exact basis of `W_w` and of its even and odd parts, from the nullspace
/// of the stacked linear system `[1 + S; 1 + U + U^2]` on `V_w`.
pub fn wspace_basis(w: usize) -> Result<WSpace> {
    check_even_weight(w)?;
    let images: Vec<(PolyX, PolyX)> = (0..=w)
        .map(|j| check_es_classical(&PolyX::monomial(w, j)?))
        .collect::<Result<_>>()?;
    let solve = |cols: &[usize]| -> Result<Vec<PolyX>> {
        let mut rows = Vec::with_capacity(2 * (w + 1));
        for e in 0..=w {
            rows.push(cols.iter().map(|&j| images[j].0.coeff(e).clone()).collect());
            rows.push(cols.iter().map(|&j| images[j].1.coeff(e).clone()).collect());
        }
        nullspace(&rows, cols.len())
            .into_iter()
            .map(|v| {
                let mut c = vec![Q::zero(); w + 1];
                for (&j, x) in cols.iter().zip(v) {
                    c[j] = x;
                }
                PolyX::new(w, c)
            })
            .collect()
    };
    let all: Vec<usize> = (0..=w).collect();
    let even: Vec<usize> = (0..=w).step_by(2).collect();
    let odd: Vec<usize> = (1..=w).step_by(2).collect();
    Ok(WSpace {
        w,
        basis: solve(&all)?,
        plus: solve(&even)?,
        minus: solve(&odd)?,
    })
}
