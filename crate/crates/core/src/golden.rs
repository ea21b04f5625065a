//! Reference data for the discriminant form, shipped with the crate.

use serde::Deserialize;

use crate::io::PolyFile;
use crate::numeric::BigReal;
use crate::polyspace::PolyX;
use crate::rv::ZetaPoly;

const DELTA_JSON: &str = include_str!("../data/delta.json");

#[derive(Deserialize)]
struct Raw {
    r_plus: PolyFile,
    r_minus: PolyFile,
    z_minus: PolyFile,
    even_scale: String,
    odd_scale: String,
    z_decimal: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct DeltaGolden {
    /// Even part of `R`, up to the scale `even_scale`.
    pub r_plus: PolyX,
    /// Odd part of `R`, up to the scale `odd_scale`.
    pub r_minus: PolyX,
    /// Exact transform of `r_minus`.
    pub z_minus: ZetaPoly,
    pub even_scale: String,
    pub odd_scale: String,
    /// Decimal coefficients of the numeric `Z`, ascending in `s`.
    pub z_decimal: Vec<String>,
}

pub fn delta() -> DeltaGolden {
    let raw: Raw = serde_json::from_str(DELTA_JSON).expect("bundled data parses");
    let x = |f: &PolyFile| match f.to_any().expect("bundled polynomial") {
        crate::io::AnyPoly::X(p) => p,
        crate::io::AnyPoly::S(_) => panic!("expected X"),
    };
    let s = |f: &PolyFile| match f.to_any().expect("bundled polynomial") {
        crate::io::AnyPoly::S(z) => z,
        crate::io::AnyPoly::X(_) => panic!("expected s"),
    };
    DeltaGolden {
        r_plus: x(&raw.r_plus),
        r_minus: x(&raw.r_minus),
        z_minus: s(&raw.z_minus),
        even_scale: raw.even_scale,
        odd_scale: raw.odd_scale,
        z_decimal: raw.z_decimal,
    }
}

/// Number of significant digits written in a decimal literal.
pub fn significant_digits(lit: &str) -> usize {
    let mant = lit.split(['e', 'E']).next().unwrap_or("");
    let digits: String = mant.chars().filter(char::is_ascii_digit).collect();
    let trimmed = digits.trim_start_matches('0');
    trimmed.len().max(1)
}

/// `value` rounded to `digits` significant digits equals `printed` rounded the same way.
pub fn agrees_to(value: &BigReal, printed: &str, digits: usize) -> bool {
    match BigReal::parse_decimal(printed, value.prec().max(64)) {
        Ok(p) => p.to_sci(digits) == value.to_sci(digits),
        Err(_) => false,
    }
}
