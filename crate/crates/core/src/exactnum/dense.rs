//! Dense univariate polynomial helpers over `Q(i)`, ascending coefficients.

use num_traits::{One, Zero};

use super::GaussianRational as Q;

pub fn add(a: &[Q], b: &[Q]) -> Vec<Q> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x + y,
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        })
        .collect()
}

pub fn scale(a: &[Q], c: &Q) -> Vec<Q> {
    a.iter().map(|x| x * c).collect()
}

pub fn mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += &(x * y);
        }
    }
    out
}

/// `(c0 + c1 X)^e`.
pub fn linear_pow(c0: &Q, c1: &Q, e: usize) -> Vec<Q> {
    let lin = [c0.clone(), c1.clone()];
    (0..e).fold(vec![Q::one()], |acc, _| mul(&acc, &lin))
}

pub fn eval(a: &[Q], x: &Q) -> Q {
    a.iter().rev().fold(Q::zero(), |acc, c| &(&acc * x) + c)
}

/// Coefficients of `p(c0 + c1 s)`.
pub fn compose_affine(p: &[Q], c0: &Q, c1: &Q) -> Vec<Q> {
    let mut out = vec![Q::zero(); p.len()];
    let lin = [c0.clone(), c1.clone()];
    let mut power = vec![Q::one()];
    for c in p {
        if !c.is_zero() {
            for (i, v) in power.iter().enumerate() {
                out[i] += &(c * v);
            }
        }
        power = mul(&power, &lin);
    }
    out
}

/// Index of the highest nonzero coefficient, `None` for the zero polynomial.
pub fn degree(a: &[Q]) -> Option<usize> {
    a.iter().rposition(|c| !c.is_zero())
}

pub fn is_zero(a: &[Q]) -> bool {
    a.iter().all(Zero::is_zero)
}
