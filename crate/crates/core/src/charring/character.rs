//! Irreducible characters via the Weyl character formula with exact division.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::LaurentPoly;
use crate::error::{Error, Result};
use crate::rootsys::{is_dominant, RootDatum, Weight, WeylGroup};
use crate::zlinalg::IntMatrix;

/// Character of the irreducible representation with highest weight `lambda`.
///
/// Works with doubled exponents so that ρ is integral: computes the alternating sum over
/// `W·(2λ + 2ρ)`, divides by `Π_{α>0} (1 − x^{−2α})` line by line, shifts by `−2ρ`, and
/// halves. Any non-exact step is reported as an error.
pub fn weyl_character(datum: &RootDatum, w: &WeylGroup, lambda: &[i64]) -> Result<LaurentPoly> {
    if lambda.len() != datum.rank {
        return Err(Error::LatticeMismatch(format!("weight {lambda:?} on a rank-{} lattice", datum.rank)));
    }
    if !is_dominant(datum, lambda) {
        return Err(Error::NotDominant(lambda.to_vec()));
    }
    let two_rho: Weight = sum_positive(datum);
    let top: Weight = lambda.iter().zip(&two_rho).map(|(l, r)| 2 * l + r).collect();
    let mut p = LaurentPoly::zero(datum.rank);
    for i in 0..w.order() {
        let sign = element_sign(datum.rank, w.element(i));
        p.add_term(w.act(i, &top), BigInt::from(sign));
    }
    for alpha in datum.positive_roots() {
        let step: Weight = alpha.iter().map(|a| 2 * a).collect();
        p = divide_one_minus(&p, &step)?;
    }
    let shifted = p.shift(&two_rho.iter().map(|r| -r).collect::<Vec<_>>());
    let mut out = LaurentPoly::zero(datum.rank);
    for (e, c) in shifted.terms() {
        if e.iter().any(|x| x % 2 != 0) {
            return Err(Error::InexactDivision(format!("odd doubled exponent {e:?}")));
        }
        out.add_term(e.iter().map(|x| x / 2).collect(), c.clone());
    }
    let dim = weyl_dimension(datum, lambda)?;
    if out.coefficient_sum() != dim {
        return Err(Error::InexactDivision(format!(
            "character has dimension {} but the product formula gives {dim}",
            out.coefficient_sum()
        )));
    }
    Ok(out)
}

/// Quotient of `p` by `1 − x^{−v}`, which must be exact.
///
/// Along each line `e + kv` the quotient coefficients are the suffix sums of p's coefficients;
/// exactness means every line sums to zero.
fn divide_one_minus(p: &LaurentPoly, v: &[i64]) -> Result<LaurentPoly> {
    let idx = v.iter().position(|x| *x != 0).expect("nonzero direction");
    let step = v[idx];
    // Terms grouped by line; the key is the point of the line with k = 0.
    let mut lines: BTreeMap<Weight, BTreeMap<i64, BigInt>> = BTreeMap::new();
    for (e, c) in p.terms() {
        let k = Integer::div_floor(&e[idx], &step);
        let base: Weight = e.iter().zip(v).map(|(x, d)| x - k * d).collect();
        lines.entry(base).or_default().insert(k, c.clone());
    }
    let mut out = LaurentPoly::zero(p.rank());
    for (base, coeffs) in lines {
        let mut acc = BigInt::zero();
        let (&lo, _) = coeffs.iter().next().expect("nonempty line");
        let (&hi, _) = coeffs.iter().next_back().expect("nonempty line");
        for k in (lo..=hi).rev() {
            if let Some(c) = coeffs.get(&k) {
                acc += c;
            }
            if !acc.is_zero() {
                out.add_term(base.iter().zip(v).map(|(b, d)| b + k * d).collect(), acc.clone());
            }
        }
        if !acc.is_zero() {
            return Err(Error::InexactDivision(format!("line through {base:?} does not sum to zero")));
        }
    }
    Ok(out)
}

fn sum_positive(datum: &RootDatum) -> Weight {
    let mut s = vec![0i64; datum.rank];
    for r in datum.positive_roots() {
        for (a, b) in s.iter_mut().zip(r) {
            *a += b;
        }
    }
    s
}

fn element_sign(rank: usize, m: &[i64]) -> i64 {
    let rows: Vec<Vec<i64>> = m.chunks(rank.max(1)).map(|r| r.to_vec()).collect();
    if rank == 0 {
        return 1;
    }
    if IntMatrix::from_rows(&rows).determinant().is_negative() {
        -1
    } else {
        1
    }
}

/// `Π_{α>0} (λ + ρ, α) / (ρ, α)`, computed exactly.
pub fn weyl_dimension(datum: &RootDatum, lambda: &[i64]) -> Result<BigInt> {
    let two_rho = sum_positive(datum);
    let top: Weight = lambda.iter().zip(&two_rho).map(|(l, r)| 2 * l + r).collect();
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for a in datum.positive_roots() {
        num *= datum.inner(&top, a);
        den *= datum.inner(&two_rho, a);
    }
    let (q, r) = num.div_rem(&den);
    if !r.is_zero() {
        return Err(Error::InexactDivision("Weyl dimension formula".into()));
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_root_datum, enumerate_weyl, LatticeChoice};
    use num_traits::One;

    #[test]
    fn small_characters() {
        let c1 = build_root_datum("C1", LatticeChoice::Standard).unwrap();
        let w = enumerate_weyl(&c1).unwrap();
        let triv = weyl_character(&c1, &w, &[0]).unwrap();
        assert_eq!(triv, LaurentPoly::one(1));
        let sigma = weyl_character(&c1, &w, &[1]).unwrap();
        let expect = LaurentPoly::from_terms(1, [(vec![1], BigInt::one()), (vec![-1], BigInt::one())]).unwrap();
        assert_eq!(sigma, expect);
        assert!(matches!(weyl_character(&c1, &w, &[-1]), Err(Error::NotDominant(_))));
    }

    #[test]
    fn b3_spin_representation() {
        // half-spin weights need the weight lattice; X-coordinates are fundamental-weight coordinates
        let b3 = build_root_datum("B3", LatticeChoice::Weight).unwrap();
        let w = enumerate_weyl(&b3).unwrap();
        let spin = weyl_character(&b3, &w, &[0, 0, 1]).unwrap();
        assert_eq!(spin.len(), 8);
        assert_eq!(spin.coefficient_sum(), BigInt::from(8));
        for e in spin.support() {
            let a = b3.to_ambient(e);
            assert!(a.iter().all(|x| x.abs() == 1), "{a:?}");
        }
    }

    #[test]
    fn dimensions_match_product_formula() {
        let g2 = build_root_datum("G2", LatticeChoice::Root).unwrap();
        let w = enumerate_weyl(&g2).unwrap();
        let fw = g2.fundamental_weights().unwrap();
        let dims: Vec<BigInt> = fw.iter().map(|l| weyl_character(&g2, &w, l).unwrap().coefficient_sum()).collect();
        let mut dims: Vec<i64> = dims.iter().map(|d| d.try_into().unwrap()).collect();
        dims.sort();
        assert_eq!(dims, vec![7, 14]);
    }
}
