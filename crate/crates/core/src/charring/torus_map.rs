use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use super::LaurentPoly;
use crate::error::{Error, Result};
use crate::rootsys::{RootDatum, Weight};
use crate::zlinalg::{smith_normal_form, IntMatrix};

/// Restriction of characters along a torus homomorphism, as an integer matrix from
/// source X-coordinates to target X-coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorusMap {
    pub source_rank: usize,
    pub target_rank: usize,
    /// Row-major, `target_rank × source_rank`.
    pub matrix: Vec<Vec<i64>>,
}

impl TorusMap {
    pub fn new(source_rank: usize, target_rank: usize, matrix: Vec<Vec<i64>>) -> Result<Self> {
        if matrix.len() != target_rank || matrix.iter().any(|r| r.len() != source_rank) {
            return Err(Error::DimensionMismatch(format!("torus map must be {target_rank}×{source_rank}")));
        }
        Ok(TorusMap { source_rank, target_rank, matrix })
    }

    pub fn identity(rank: usize) -> Self {
        let matrix = (0..rank).map(|i| (0..rank).map(|j| i64::from(i == j)).collect()).collect();
        TorusMap { source_rank: rank, target_rank: rank, matrix }
    }

    /// The map induced by a linear map of actual Euclidean coordinates, `y = (num / den) · x`,
    /// where `num` is `dst.ambient_dim × src.ambient_dim`.
    pub fn from_ambient(src: &RootDatum, dst: &RootDatum, num: &[Vec<i64>], den: i64) -> Result<Self> {
        if num.len() != dst.ambient_dim || num.iter().any(|r| r.len() != src.ambient_dim) || den == 0 {
            return Err(Error::DimensionMismatch(format!(
                "ambient map must be {}×{} with nonzero denominator",
                dst.ambient_dim, src.ambient_dim
            )));
        }
        let mut cols = Vec::with_capacity(src.rank);
        for b in src.basis_vectors() {
            // actual src = b / s_src; actual dst = num·b / (den·s_src); ambient dst = s_dst · that
            let d = den * src.scale;
            let mut amb = Vec::with_capacity(dst.ambient_dim);
            for row in num {
                let v: i64 = row.iter().zip(b).map(|(x, y)| x * y).sum::<i64>() * dst.scale;
                if v % d != 0 {
                    return Err(Error::LatticeMismatch(format!(
                        "image of basis vector {b:?} is not integral in the target frame"
                    )));
                }
                amb.push(v / d);
            }
            let x = dst.from_ambient(&amb).ok_or_else(|| {
                Error::LatticeMismatch(format!("image {amb:?} of a lattice vector leaves the target lattice"))
            })?;
            cols.push(x);
        }
        let matrix = (0..dst.rank).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
        TorusMap::new(src.rank, dst.rank, matrix)
    }

    pub fn apply(&self, x: &[i64]) -> Weight {
        self.matrix.iter().map(|r| r.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
    }

    /// `self ∘ first`: first apply `first`, then `self`.
    pub fn after(&self, first: &TorusMap) -> Result<TorusMap> {
        if first.target_rank != self.source_rank {
            return Err(Error::DimensionMismatch("torus maps do not compose".into()));
        }
        let cols: Vec<Weight> = (0..first.source_rank)
            .map(|j| self.apply(&first.matrix.iter().map(|r| r[j]).collect::<Vec<_>>()))
            .collect();
        let matrix = (0..self.target_rank).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
        TorusMap::new(first.source_rank, self.target_rank, matrix)
    }

    pub fn to_int_matrix(&self) -> IntMatrix {
        IntMatrix::from_fn(self.target_rank, self.source_rank, |i, j| self.matrix[i][j].into())
    }

    /// Surjective onto the target lattice (all invariant factors are 1 and rank is full).
    pub fn is_surjective(&self) -> bool {
        if self.target_rank == 0 {
            return true;
        }
        let d = smith_normal_form(&self.to_int_matrix()).diagonal();
        d.len() == self.target_rank && d.iter().all(BigInt::is_one)
    }
}

/// Pushes every exponent forward along the torus map.
pub fn restrict(p: &LaurentPoly, f: &TorusMap) -> Result<LaurentPoly> {
    if p.rank() != f.source_rank {
        return Err(Error::LatticeMismatch(format!(
            "restricting a rank-{} polynomial along a map from rank {}",
            p.rank(),
            f.source_rank
        )));
    }
    Ok(p.map_exponents(f.target_rank, |e| f.apply(e)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_root_datum, LatticeChoice};

    #[test]
    fn identity_restriction() {
        let p = LaurentPoly::monomial(vec![2, -1], BigInt::from(3));
        assert_eq!(restrict(&p, &TorusMap::identity(2)).unwrap(), p);
        assert!(restrict(&p, &TorusMap::identity(1)).is_err());
    }

    #[test]
    fn sp2_to_sp1_projection() {
        let sp2 = build_root_datum("C2", LatticeChoice::Standard).unwrap();
        let sp1 = build_root_datum("C1", LatticeChoice::Standard).unwrap();
        let f = TorusMap::from_ambient(&sp2, &sp1, &[vec![0, 1]], 1).unwrap();
        assert_eq!(f.apply(&[3, 5]), vec![5]);
        assert!(f.is_surjective());
        let doubling = TorusMap::new(1, 1, vec![vec![2]]).unwrap();
        assert!(!doubling.is_surjective());
        assert_eq!(doubling.after(&f).unwrap().apply(&[3, 5]), vec![10]);
    }
}
