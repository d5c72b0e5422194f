//! The group ring Z[X] with its Weyl action: Laurent polynomials, orbit sums, characters,
//! windows and restriction along torus maps.

pub mod character;
mod laurent;
mod torus_map;
pub mod window;

pub use character::{weyl_character, weyl_dimension};
pub use laurent::LaurentPoly;
pub use torus_map::{restrict, TorusMap};
pub use window::{close_under, invariant_window_basis, make_window, orbit_sum, OrbitBasis, TermOrder, Window};

#[cfg(test)]
mod proptests {
    use super::*;
    use crate::rootsys::{build_root_datum, dominant_representative, enumerate_weyl, LatticeChoice};
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn poly(rank: usize) -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec((proptest::collection::vec(-3i64..=3, rank), -4i64..=4), 0..6).prop_map(
            move |terms| LaurentPoly::from_terms(rank, terms.into_iter().map(|(e, c)| (e, BigInt::from(c)))).unwrap(),
        )
    }

    proptest! {
        #[test]
        fn restriction_is_a_ring_map(p in poly(3), q in poly(3), m in proptest::collection::vec(-2i64..=2, 6)) {
            let f = TorusMap::new(3, 2, vec![m[..3].to_vec(), m[3..].to_vec()]).unwrap();
            let lhs = restrict(&p.mul(&q).unwrap(), &f).unwrap();
            let rhs = restrict(&p, &f).unwrap().mul(&restrict(&q, &f).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(restrict(&LaurentPoly::one(3), &f).unwrap(), LaurentPoly::one(2));
        }

        #[test]
        fn orbit_sums_are_invariant(x in proptest::collection::vec(-4i64..=4, 2)) {
            let g2 = build_root_datum("G2", LatticeChoice::Root).unwrap();
            let w = enumerate_weyl(&g2).unwrap();
            let s = orbit_sum(&x, &w);
            for m in w.elements() {
                prop_assert_eq!(s.weyl_act(m).unwrap(), s.clone());
            }
        }

        #[test]
        fn orbit_sum_products_are_filtered(
            a in proptest::collection::vec(-3i64..=3, 2),
            b in proptest::collection::vec(-3i64..=3, 2),
        ) {
            let d = build_root_datum("C2", LatticeChoice::Standard).unwrap();
            let w = enumerate_weyl(&d).unwrap();
            let s = dominant_representative(&d, &a);
            let t = dominant_representative(&d, &b);
            let top: Vec<i64> = s.iter().zip(&t).map(|(x, y)| x + y).collect();
            let diff = orbit_sum(&top, &w).sub(&orbit_sum(&s, &w).mul(&orbit_sum(&t, &w)).unwrap()).unwrap();
            for e in diff.support() {
                prop_assert!(e != &top && d.dominance_le(e, &top));
            }
        }
    }
}
