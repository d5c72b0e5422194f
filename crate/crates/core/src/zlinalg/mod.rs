//! Exact integer linear algebra over Z and over Z[1/ℓ].

mod matrix;
mod ops;
mod presentation;
pub mod rational;
mod snf;

pub use matrix::{to_big, IntMatrix};
pub use ops::{
    cokernel, fiber_product_basis, hermite_columns, kernel_basis, localized_cokernel, rank, same_lattice,
    solve_integer, strip_factors, ColumnEchelon, Pivot,
};
pub use presentation::{AbelianPresentation, LocalizedScalar};
pub use snf::{smith_normal_form, SnfResult};

#[cfg(test)]
mod proptests {
    use super::*;
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{One, Signed};
    use proptest::prelude::*;

    fn matrix(max: usize) -> impl Strategy<Value = IntMatrix> {
        (1..=max, 1..=max).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-20i64..=20, r * c).prop_map(move |v| {
                let rows: Vec<Vec<i64>> = v.chunks(c).map(|x| x.to_vec()).collect();
                IntMatrix::from_rows(&rows)
            })
        })
    }

    /// Random unimodular matrix as a product of elementary operations.
    fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> IntMatrix {
        let mut m = IntMatrix::identity(n);
        for &(a, b, k) in ops {
            let (a, b) = (a % n, b % n);
            if a != b {
                m.add_row_multiple(a, b, &BigInt::from(k));
            } else {
                m.swap_rows(a, (a + 1) % n);
            }
        }
        m
    }

    proptest! {
        #[test]
        fn snf_identities(a in matrix(6)) {
            let r = smith_normal_form(&a);
            prop_assert_eq!(&(&r.u * &a) * &r.v, r.d.clone());
            prop_assert!(r.d.is_diagonal());
            prop_assert!(r.u.determinant().abs().is_one());
            prop_assert!(r.v.determinant().abs().is_one());
            let d = r.diagonal();
            for w in d.windows(2) {
                prop_assert!(w[1].is_multiple_of(&w[0]));
            }
        }

        #[test]
        fn invariant_factors_unchanged_by_unimodular_moves(
            a in matrix(5),
            ops_l in proptest::collection::vec((0usize..5, 0usize..5, -3i64..=3), 0..8),
            ops_r in proptest::collection::vec((0usize..5, 0usize..5, -3i64..=3), 0..8),
        ) {
            let p = unimodular(a.rows(), &ops_l);
            let q = unimodular(a.cols(), &ops_r);
            let b = &(&p * &a) * &q;
            prop_assert_eq!(cokernel(&a).normalized(), cokernel(&b).normalized());
            prop_assert_eq!(cokernel(&a.transpose()).torsion, cokernel(&b.transpose()).torsion);
        }

        #[test]
        fn fiber_product_columns_satisfy_equation(f in matrix(4), g in matrix(4)) {
            prop_assume!(f.rows() == g.rows());
            let k = fiber_product_basis(&f, &g).unwrap();
            let stacked = f.hstack(&g.neg());
            prop_assert!((&stacked * &k).is_zero());
            prop_assert_eq!(k.cols(), stacked.cols() - rank(&stacked));
            prop_assert_eq!(rank(&k), k.cols());
        }

        #[test]
        fn localization_at_one_is_identity(a in matrix(5)) {
            prop_assert_eq!(localized_cokernel(&a, 1).unwrap(), cokernel(&a));
        }

        #[test]
        fn echelon_reduction_respects_cosets(
            a in matrix(5),
            v in proptest::collection::vec(-10i64..=10, 5),
            w in proptest::collection::vec(-3i64..=3, 5),
        ) {
            let n = a.rows();
            let order: Vec<usize> = (0..n).rev().collect();
            let e = ColumnEchelon::new(&a.columns(), n, &order);
            prop_assert_eq!(e.rank(), rank(&a));
            let v = to_big(&v[..n]);
            let shift = a.mul_vec(&to_big(&w[..a.cols()]));
            let moved: Vec<BigInt> = v.iter().zip(&shift).map(|(x, s)| x + s).collect();
            prop_assert_eq!(e.reduce(&v), e.reduce(&moved));
        }
    }
}
