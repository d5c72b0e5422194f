//! Exhaustive search for dihedral reflection groups inside GL(2, Z).

use serde::Serialize;

use super::weyl::{mat_mul, matrix_order};
use crate::error::{Error, Result};

pub const DEFAULT_ENTRY_BOUND: i64 = 3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DihedralPair {
    /// Row-major 2×2 matrices of the two reflections.
    pub s: [i64; 4],
    pub t: [i64; 4],
    /// Order of the group they generate, twice the order of `s·t`.
    pub group_order: usize,
}

/// Integer matrices with `M² = 1`, `det M = −1` and entries in `[−bound, bound]`.
pub fn integral_reflections(bound: i64) -> Vec<[i64; 4]> {
    let mut out = Vec::new();
    for a in -bound..=bound {
        for b in -bound..=bound {
            for c in -bound..=bound {
                for d in -bound..=bound {
                    let m = [a, b, c, d];
                    if a * d - b * c == -1 && mat_mul(2, &m, &m) == [1, 0, 0, 1] {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

/// All unordered pairs of distinct integral reflections whose product has finite order.
pub fn classify_dihedral_pairs(entry_bound: i64) -> Result<Vec<DihedralPair>> {
    if entry_bound < 2 {
        return Err(Error::Precondition(format!("entry bound must be at least 2, got {entry_bound}")));
    }
    let refl = integral_reflections(entry_bound);
    let mut out = Vec::new();
    for i in 0..refl.len() {
        for j in i + 1..refl.len() {
            let st = mat_mul(2, &refl[i], &refl[j]);
            // finite-order elements of GL(2, Z) have order at most 6
            if let Some(k) = matrix_order(2, &st, 12) {
                out.push(DihedralPair { s: refl[i], t: refl[j], group_order: 2 * k });
            }
        }
    }
    Ok(out)
}

/// Distinct group orders observed in a sweep, sorted.
pub fn observed_orders(pairs: &[DihedralPair]) -> Vec<usize> {
    let mut v: Vec<usize> = pairs.iter().map(|p| p.group_order).collect();
    v.sort_unstable();
    v.dedup();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn swap_and_flip_generate_order_eight_group() {
        let s = [0, 1, 1, 0];
        let t = [1, 0, 0, -1];
        let st = mat_mul(2, &s, &t);
        assert_eq!(matrix_order(2, &st, 12), Some(4));
        let pairs = classify_dihedral_pairs(2).unwrap();
        let p = pairs.iter().find(|p| (p.s == s && p.t == t) || (p.s == t && p.t == s)).unwrap();
        assert_eq!(p.group_order, 8);
    }

    #[test]
    fn a2_reflections_generate_d6() {
        // simple reflections of A2 in fundamental-weight coordinates
        let s1 = [-1, 1, 0, 1];
        let s2 = [1, 0, 1, -1];
        assert_eq!(matrix_order(2, &mat_mul(2, &s1, &s2), 12), Some(3));
    }

    #[test]
    fn sweep_at_default_bound() {
        let pairs = classify_dihedral_pairs(DEFAULT_ENTRY_BOUND).unwrap();
        let orders = observed_orders(&pairs);
        assert!(orders.iter().all(|o| [4, 6, 8, 12].contains(o)));
        assert_eq!(orders, vec![4, 6, 8, 12]);
        assert!(classify_dihedral_pairs(1).is_err());
    }
}
