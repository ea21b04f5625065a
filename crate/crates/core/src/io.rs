//! JSON wire formats.
//!
//! Polynomials are `{"w": 10, "coeffs": [["p/q", "r/s"], ...]}` with
//! ascending coefficients as (real, imaginary) rational strings.
//! Zeta-polynomials add `"variable": "s"`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::GaussianRational as Q;
use crate::polyspace::PolyX;
use crate::rv::ZetaPoly;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolyFile {
    pub w: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variable: Option<String>,
    pub coeffs: Vec<[String; 2]>,
}

/// A polynomial file read without knowing which variable it is in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyPoly {
    X(PolyX),
    S(ZetaPoly),
}

fn encode(coeffs: &[Q]) -> Vec<[String; 2]> {
    coeffs
        .iter()
        .map(|c| {
            let (re, im) = c.to_string_pair();
            [re, im]
        })
        .collect()
}

fn decode(file: &PolyFile) -> Result<Vec<Q>> {
    file.coeffs
        .iter()
        .map(|[re, im]| Q::from_string_pair(re, im))
        .collect()
}

impl PolyFile {
    pub fn from_polyx(p: &PolyX) -> Self {
        PolyFile {
            w: p.w(),
            variable: None,
            coeffs: encode(p.coeffs()),
        }
    }

    pub fn from_zeta(z: &ZetaPoly) -> Self {
        PolyFile {
            w: z.w(),
            variable: Some("s".into()),
            coeffs: encode(z.coeffs()),
        }
    }

    pub fn to_any(&self) -> Result<AnyPoly> {
        let coeffs = decode(self)?;
        match self.variable.as_deref() {
            None | Some("X") => Ok(AnyPoly::X(PolyX::from_coeffs(self.w, coeffs)?)),
            Some("s") => Ok(AnyPoly::S(ZetaPoly::from_coeffs(self.w, coeffs)?)),
            Some(v) => Err(Error::Malformed(format!("unknown variable {v:?}"))),
        }
    }
}

pub fn parse_any(text: &str) -> Result<AnyPoly> {
    let file: PolyFile = serde_json::from_str(text)?;
    file.to_any()
}

pub fn parse_polyx(text: &str) -> Result<PolyX> {
    match parse_any(text)? {
        AnyPoly::X(p) => Ok(p),
        AnyPoly::S(_) => Err(Error::Malformed("expected a polynomial in X, found one in s".into())),
    }
}

pub fn parse_zeta(text: &str) -> Result<ZetaPoly> {
    match parse_any(text)? {
        AnyPoly::S(z) => Ok(z),
        AnyPoly::X(_) => Err(Error::Malformed("expected a polynomial in s (\"variable\": \"s\")".into())),
    }
}

pub fn polyx_to_json(p: &PolyX) -> String {
    serde_json::to_string_pretty(&PolyFile::from_polyx(p)).expect("serializable")
}

pub fn zeta_to_json(z: &ZetaPoly) -> String {
    serde_json::to_string_pretty(&PolyFile::from_zeta(z)).expect("serializable")
}
