//! Exact scalar, polynomial and series arithmetic over `Q` and `Q(i)`.

mod binom;
pub mod dense;
mod gaussian;
mod series;

pub use binom::{binom_int, binomial_in_s, factorial};
pub(crate) use binom::check_even_weight;
pub use gaussian::{parse_rational, rational_to_string, GaussianRational};
pub use series::PowerSeries;

#[cfg(test)]
mod proptests {
    use super::*;
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    fn gr() -> impl Strategy<Value = GaussianRational> {
        (-50i64..50, 1i64..20, -50i64..50, 1i64..20).prop_map(|(a, b, c, d)| {
            &GaussianRational::ratio(a, b) + &(&GaussianRational::ratio(c, d) * &GaussianRational::i())
        })
    }

    proptest! {
        #[test]
        fn field_division_is_exact(a in gr(), b in gr()) {
            prop_assume!(!b.is_zero());
            let q = a.checked_div(&b).unwrap();
            prop_assert_eq!(&q * &b, a);
        }

        #[test]
        fn inverse_times_series_is_one(c in proptest::collection::vec(gr(), 1..8), order in 0i64..12) {
            prop_assume!(!c[0].is_zero());
            let p = PowerSeries::from_poly(&c, order);
            let inv = p.inverse(order).unwrap();
            let prod = p.mul(&inv, order);
            prop_assert_eq!(prod.order(), order);
            prop_assert_eq!(prod.coeff(0).unwrap(), GaussianRational::one());
            for e in 1..=order {
                prop_assert!(prod.coeff(e).unwrap().is_zero());
            }
        }

        #[test]
        fn reflection_identity(half in 1usize..=10, j_seed in 0usize..100) {
            let w = 2 * half;
            let j = j_seed % (w + 1);
            let basis = |j| -> Vec<GaussianRational> {
                binomial_in_s(w, j).unwrap().into_iter().map(GaussianRational::real).collect()
            };
            // C(-1 + s + j, w) is C(w - t - (w - j), w) at t = 1 - s.
            let lhs = dense::compose_affine(&basis(w - j), &GaussianRational::one(), &GaussianRational::from(-1));
            prop_assert_eq!(lhs, basis(j));
        }
    }
}
