//! Properties of zeta-polynomials: the functional equation, the Laurent
//! coefficients and truncated triple sum, root diagnostics, and the
//! Hilbert-polynomial hypotheses.

mod hilbert;
mod laurent;
mod roots;
mod thm2;

pub use hilbert::{hilbert_hypotheses, HilbertReport};
pub use laurent::{laurent_coeffs, LaurentCoeffs};
pub use roots::{rh_check, roots, roots_exact, RhMode, RhReport, Roots};
pub use thm2::{thm2_residual, Thm2Report, K_MIN, RHO};

use crate::exactnum::GaussianRational as Q;
use crate::error::{Error, Result};
use crate::rv::ZetaPoly;

/// `Z(s) + eps i^w Z(1 - s)`, exactly.
pub fn functional_eq_residual(z: &ZetaPoly, eps: i8) -> Result<ZetaPoly> {
    if eps != 1 && eps != -1 {
        return Err(Error::InvalidArgument(format!("eps must be +1 or -1, got {eps}")));
    }
    let c = &Q::i_pow(z.w() as i64) * &Q::from(eps as i64);
    let reflected = z.compose_affine(&Q::from(1), &Q::from(-1));
    z.add(&reflected.scale(&c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyspace::{check_fricke, PolyX};
    use crate::rv::rv_forward;
    use proptest::prelude::*;

    #[test]
    fn residual_examples() {
        let dm = PolyX::from_ints(10, &[0, 4, 0, 25, 0, 42, 0, 25, 0, 4, 0]).unwrap();
        assert!(functional_eq_residual(&rv_forward(&dm), 1).unwrap().is_zero());

        let z = rv_forward(&PolyX::from_ints(2, &[1, 1, 1]).unwrap());
        assert!(functional_eq_residual(&z, 1).unwrap().is_zero());

        // s - (1 - s) = 2s - 1
        let s = ZetaPoly::from_coeffs(2, vec![0.into(), 1.into()]).unwrap();
        let expect = ZetaPoly::from_coeffs(2, vec![Q::from(-1), Q::from(2)]).unwrap();
        assert_eq!(functional_eq_residual(&s, 1).unwrap(), expect);
        assert!(functional_eq_residual(&s, 0).is_err());
    }

    fn gr() -> impl Strategy<Value = Q> {
        (-30i64..30, 1i64..10, -30i64..30, 1i64..10)
            .prop_map(|(a, b, c, d)| &Q::ratio(a, b) + &(&Q::ratio(c, d) * &Q::i()))
    }

    proptest! {
        #[test]
        fn symmetric_inputs_satisfy_functional_equation(
            h in 1usize..=8, pos in any::<bool>(), seed in proptest::collection::vec(gr(), 17)
        ) {
            let w = 2 * h;
            let eps: i8 = if pos { 1 } else { -1 };
            let p = PolyX::new(w, seed[..=w].to_vec()).unwrap();
            let c = &Q::i_pow(w as i64) * &Q::from(eps as i64);
            let sym = p.sub(&p.reversed().scale(&c)).unwrap();
            prop_assert!(check_fricke(&sym, eps).unwrap().is_zero());
            prop_assert!(functional_eq_residual(&rv_forward(&sym), eps).unwrap().is_zero());
            // The residual is the transform of the Fricke residual.
            let z = rv_forward(&p);
            prop_assert_eq!(
                functional_eq_residual(&z, eps).unwrap(),
                rv_forward(&check_fricke(&p, eps).unwrap())
            );
        }
    }
}
