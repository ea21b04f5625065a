//! Deterministic arbitrary-precision real and complex arithmetic.

mod bigreal;
mod complex;

pub use bigreal::{parse_decimal_exact, BigReal};
pub use complex::BigComplex;
