//! Shared inputs for the benchmarks.

use zetapoly::exactnum::GaussianRational as Q;
use zetapoly::PolyX;

/// A dense polynomial of weight `w` with small distinct Gaussian-rational
/// coefficients.
pub fn dense_poly(w: usize) -> PolyX {
    let coeffs = (0..=w as i64)
        .map(|j| &Q::ratio(j + 1, 2 * j + 3) + &(&Q::i() * &Q::ratio(j - 2, j + 5)))
        .collect();
    PolyX::new(w, coeffs).expect("length w + 1")
}
