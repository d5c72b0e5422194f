//! Exact enumeration of lattice points in norm balls.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::datum::{RootDatum, Weight};
use crate::zlinalg::rational::{isqrt_ratio, q_from_i64, q_inverse};

/// For each X-coordinate, the largest absolute value it takes on the ball `norm2 ≤ n2`
/// (ambient units).
pub fn coordinate_bounds(datum: &RootDatum, n2: i64) -> Vec<i64> {
    if datum.rank == 0 {
        return Vec::new();
    }
    let inv = q_inverse(&q_from_i64(datum.gram())).expect("lattice basis is independent");
    (0..datum.rank)
        .map(|i| {
            // x_i² ≤ n2 · (G⁻¹)_ii
            let g = &inv[i][i];
            let p = g.numer() * BigInt::from(n2.max(0));
            isqrt_ratio(&p, g.denom()).to_i64().expect("bound fits in i64")
        })
        .collect()
}

/// All lattice weights with `norm2 ≤ n2`, sorted lexicographically.
pub fn lattice_ball(datum: &RootDatum, n2: i64) -> Vec<Weight> {
    let bounds = coordinate_bounds(datum, n2);
    let r = datum.rank;
    let mut out = Vec::new();
    let mut c: Vec<i64> = bounds.iter().map(|b| -b).collect();
    loop {
        if datum.norm2(&c) <= n2 {
            out.push(c.clone());
        }
        let mut i = r;
        loop {
            if i == 0 {
                out.sort();
                return out;
            }
            i -= 1;
            if c[i] < bounds[i] {
                c[i] += 1;
                for j in i + 1..r {
                    c[j] = -bounds[j];
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_root_datum, LatticeChoice};

    #[test]
    fn balls() {
        let a1 = build_root_datum("A1", LatticeChoice::Weight).unwrap();
        assert_eq!(lattice_ball(&a1, 4), vec![vec![-2], vec![-1], vec![0], vec![1], vec![2]]);
        assert_eq!(lattice_ball(&a1, 0), vec![vec![0]]);
        let f4 = build_root_datum("F4", LatticeChoice::Root).unwrap();
        // roots of F4 have actual norms 1 and 2, ambient norms 4 and 8
        let ball = lattice_ball(&f4, 8);
        let roots = f4.roots();
        assert!(roots.iter().all(|r| ball.contains(r)));
        assert_eq!(ball.len(), 1 + 48);
    }
}
