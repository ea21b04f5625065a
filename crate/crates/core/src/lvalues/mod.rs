//! Numeric pipeline: newform coefficients, critical values of the completed
//! L-function, the numeric period polynomial `R_f` and its transform.

mod completed;
mod period;

pub use completed::{
    completed_l, completed_l_split, critical_values, functional_equation_check, required_nmax, FeCheck,
    LValue, GUARD_BITS,
};
pub use period::{build_r, numeric_fricke_residual, numeric_functional_eq_residual, numeric_rv, NumericPoly};

use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Environment variable naming the directory of the `tau` cache.
pub const CACHE_ENV: &str = "ZETAPOLY_CACHE_DIR";

/// A normalized newform, given by its level, weight, Fricke sign and
/// Fourier coefficients `a_1, a_2, ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewformData {
    level: u64,
    weight: u32,
    fricke: i8,
    an: Vec<BigInt>,
    label: String,
}

#[derive(Serialize, Deserialize)]
struct NewformFile {
    level: u64,
    weight: u32,
    fricke: i8,
    an: Vec<String>,
    #[serde(default)]
    label: String,
}

impl NewformData {
    pub fn new(level: u64, weight: u32, fricke: i8, an: Vec<BigInt>, label: impl Into<String>) -> Result<Self> {
        if level == 0 {
            return Err(Error::InvalidArgument("level must be positive".into()));
        }
        if weight < 4 || !weight.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!("weight must be even and >= 4, got {weight}")));
        }
        if fricke != 1 && fricke != -1 {
            return Err(Error::InvalidArgument(format!("Fricke sign must be +1 or -1, got {fricke}")));
        }
        if an.first().is_none_or(|a| !a.is_one()) {
            return Err(Error::InvalidArgument("a_1 must be 1 (normalized newform)".into()));
        }
        Ok(NewformData {
            level,
            weight,
            fricke,
            an,
            label: label.into(),
        })
    }

    /// The discriminant form with `nmax` coefficients, read from or written
    /// to the cache when [`CACHE_ENV`] is set.
    pub fn delta(nmax: usize) -> Result<Self> {
        let dir = std::env::var_os(CACHE_ENV).map(PathBuf::from);
        let tau = delta_coefficients_cached(nmax, dir.as_deref())?;
        Self::new(1, 12, 1, tau, "Delta")
    }

    /// The discriminant form with enough coefficients for `prec` bits.
    pub fn delta_for_precision(prec: u32) -> Result<Self> {
        Self::delta(required_nmax(1, 12, prec, &completed::default_split_points()))
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    /// `w = k - 2`.
    pub fn w(&self) -> usize {
        self.weight as usize - 2
    }

    pub fn fricke(&self) -> i8 {
        self.fricke
    }

    pub fn an(&self) -> &[BigInt] {
        &self.an
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: NewformFile = serde_json::from_str(text)?;
        let an = raw
            .an
            .iter()
            .map(|s| s.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("bad coefficient {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(raw.level, raw.weight, raw.fricke, an, raw.label)
    }

    pub fn to_json(&self) -> String {
        let raw = NewformFile {
            level: self.level,
            weight: self.weight,
            fricke: self.fricke,
            an: self.an.iter().map(ToString::to_string).collect(),
            label: self.label.clone(),
        };
        serde_json::to_string_pretty(&raw).expect("serializable")
    }
}

/// `sum_{n < len} c_n q^n` truncated product.
fn mul_trunc(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `prod_{n >= 1} (1 - q^n)` through `q^{len-1}`.
fn euler_product(len: usize) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); len];
    if len == 0 {
        return p;
    }
    p[0] = BigInt::one();
    for n in 1..len {
        for i in (n..len).rev() {
            let v = p[i - n].clone();
            p[i] -= v;
        }
    }
    p
}

/// `tau(1), ..., tau(nmax)`: coefficients of `q prod (1 - q^n)^24`.
pub fn delta_coefficients(nmax: usize) -> Vec<BigInt> {
    let e1 = euler_product(nmax);
    let e2 = mul_trunc(&e1, &e1, nmax);
    let e4 = mul_trunc(&e2, &e2, nmax);
    let e8 = mul_trunc(&e4, &e4, nmax);
    let e16 = mul_trunc(&e8, &e8, nmax);
    mul_trunc(&e16, &e8, nmax)
}

#[derive(Serialize, Deserialize)]
struct TauCache {
    nmax: usize,
    tau: Vec<String>,
}

fn cache_path(dir: &Path) -> PathBuf {
    dir.join("tau.json")
}

/// As [`delta_coefficients`], reusing `dir/tau.json` when it holds at least
/// `nmax` values and rewriting it otherwise.
pub fn delta_coefficients_cached(nmax: usize, dir: Option<&Path>) -> Result<Vec<BigInt>> {
    let Some(dir) = dir else {
        return Ok(delta_coefficients(nmax));
    };
    let path = cache_path(dir);
    if let Ok(text) = fs::read_to_string(&path) {
        if let Ok(cache) = serde_json::from_str::<TauCache>(&text) {
            if cache.nmax >= nmax && cache.tau.len() == cache.nmax {
                let parsed: std::result::Result<Vec<BigInt>, _> =
                    cache.tau[..nmax].iter().map(|s| s.parse::<BigInt>()).collect();
                if let Ok(tau) = parsed {
                    return Ok(tau);
                }
            }
        }
    }
    let tau = delta_coefficients(nmax);
    fs::create_dir_all(dir)?;
    let cache = TauCache {
        nmax,
        tau: tau.iter().map(ToString::to_string).collect(),
    };
    let tmp = path.with_extension("json.tmp");
    fs::write(&tmp, serde_json::to_string(&cache)?)?;
    fs::rename(&tmp, &path)?;
    Ok(tau)
}
