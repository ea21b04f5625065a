use num_traits::{Signed, Zero};

use crate::exactnum::GaussianRational as Q;
use crate::rv::ZetaPoly;

/// Hypotheses of the Hilbert-polynomial criterion. Only the hypotheses are
/// checked; no Hilbert certificate is produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertReport {
    /// Every coefficient is a rational integer (zero imaginary part).
    pub integral: bool,
    /// The leading coefficient is real and positive.
    pub positive_leading: bool,
    /// First coefficient (ascending) that is not a rational integer.
    pub first_non_integral: Option<(usize, Q)>,
    /// Both hypotheses hold; the conclusion then follows provided the
    /// underlying `R` satisfies its Fricke relation.
    pub conclusion_applies: bool,
}

pub fn hilbert_hypotheses(z: &ZetaPoly) -> HilbertReport {
    let first_non_integral = z
        .coeffs()
        .iter()
        .enumerate()
        .find(|(_, c)| !(c.is_real() && c.is_integer()))
        .map(|(d, c)| (d, c.clone()));
    let positive_leading = match z.degree() {
        Some(d) => {
            let c = z.coeff(d);
            c.im().is_zero() && c.re().is_positive()
        }
        None => false,
    };
    let integral = first_non_integral.is_none();
    HilbertReport {
        integral,
        positive_leading,
        first_non_integral,
        conclusion_applies: integral && positive_leading,
    }
}
