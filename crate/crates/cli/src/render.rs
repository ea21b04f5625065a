//! Decimal and JSON renderings shared by the commands.

use serde_json::{json, Value};
use zetapoly::exactnum::GaussianRational as Q;
use zetapoly::{BigComplex, BigReal, PolyX, ZetaPoly};

/// Decimal digits carried by a `prec`-bit value.
pub fn digits_for(prec: u32) -> usize {
    ((prec as f64) * std::f64::consts::LOG10_2).floor() as usize
}

pub fn real(x: &BigReal, prec: u32) -> String {
    x.to_sci(digits_for(prec))
}

/// Short form for bounds and deviations.
pub fn bound(x: &BigReal) -> String {
    x.to_sci(3)
}

pub fn complex(z: &BigComplex, prec: u32) -> Value {
    json!({ "re": real(&z.re, prec), "im": real(&z.im, prec) })
}

pub fn complex_text(z: &BigComplex, digits: usize) -> String {
    if z.im.is_zero() {
        z.re.to_sci(digits)
    } else {
        let sign = if z.im.is_negative() { "-" } else { "+" };
        format!("{} {sign} {}i", z.re.to_sci(digits), z.im.abs().to_sci(digits))
    }
}

/// Exact pair plus its decimal rendering.
pub fn gaussian(q: &Q, prec: u32) -> Value {
    let (re, im) = q.to_string_pair();
    let z = BigComplex::from_gaussian(q, prec);
    json!({ "exact": [re, im], "re": real(&z.re, prec), "im": real(&z.im, prec) })
}

pub fn polyx(p: &PolyX) -> Value {
    serde_json::to_value(zetapoly::io::PolyFile::from_polyx(p)).expect("serializable")
}

pub fn zeta(z: &ZetaPoly) -> Value {
    serde_json::to_value(zetapoly::io::PolyFile::from_zeta(z)).expect("serializable")
}

pub fn ok_word(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}
