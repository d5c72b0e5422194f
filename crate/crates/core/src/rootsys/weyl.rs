use std::collections::{BTreeSet, HashMap, VecDeque};

use super::datum::{apply, RootDatum, Weight, CLOSURE_BOUND};
use super::frames::classical_weyl_order;
use crate::error::{Error, Result};
use crate::zlinalg::IntMatrix;

/// A finite matrix group acting on X-coordinates, enumerated by breadth-first closure.
///
/// Element 0 is the identity; elements are stored as row-major `rank × rank` matrices.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    pub rank: usize,
    elements: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    /// Indices of the generating matrices inside `elements`.
    pub generators: Vec<usize>,
}

impl WeylGroup {
    /// Closure of the given generators under multiplication.
    pub fn generated_by(rank: usize, gens: &[Vec<i64>]) -> Result<Self> {
        Self::generated_with_bound(rank, gens, CLOSURE_BOUND)
    }

    pub fn generated_with_bound(rank: usize, gens: &[Vec<i64>], bound: usize) -> Result<Self> {
        let id = identity(rank);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let m = mat_mul(rank, g, &elements[i]);
                if !index.contains_key(&m) {
                    if elements.len() >= bound {
                        return Err(Error::WeylClosureBound(bound));
                    }
                    index.insert(m.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(m);
                }
            }
        }
        let generators = gens.iter().map(|g| index[g]).collect();
        Ok(WeylGroup { rank, elements, index, generators })
    }

    pub fn trivial(rank: usize) -> Self {
        Self::generated_by(rank, &[]).expect("trivial group")
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, i: usize) -> &[i64] {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[Vec<i64>] {
        &self.elements
    }

    pub fn matrices(&self) -> Vec<IntMatrix> {
        let n = self.rank;
        self.elements.iter().map(|m| IntMatrix::from_fn(n, n, |i, j| m[i * n + j].into())).collect()
    }

    pub fn index_of(&self, m: &[i64]) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn contains(&self, m: &[i64]) -> bool {
        self.index.contains_key(m)
    }

    pub fn act(&self, i: usize, x: &[i64]) -> Weight {
        apply(&self.elements[i], x)
    }

    pub fn compose(&self, a: usize, b: usize) -> usize {
        self.index[&mat_mul(self.rank, &self.elements[a], &self.elements[b])]
    }

    /// Sorted orbit of a weight.
    pub fn orbit(&self, x: &[i64]) -> Vec<Weight> {
        let set: BTreeSet<Weight> = self.elements.iter().map(|m| apply(m, x)).collect();
        set.into_iter().collect()
    }

    /// Whether every element of `other` lies in this group.
    pub fn contains_group(&self, other: &WeylGroup) -> bool {
        other.elements.iter().all(|m| self.contains(m))
    }

    /// Whether the group maps `set` to itself.
    pub fn stabilizes(&self, set: &BTreeSet<Weight>) -> bool {
        set.iter().all(|x| self.elements.iter().all(|m| set.contains(&apply(m, x))))
    }
}

/// Weyl group of a datum, checked against the classical order when the label is recognized.
pub fn enumerate_weyl(datum: &RootDatum) -> Result<WeylGroup> {
    let w = WeylGroup::generated_by(datum.rank, &datum.simple_reflections())?;
    if let Some(expected) = classical_weyl_order(&datum.label) {
        if expected != w.order() as u64 {
            return Err(Error::InvalidRootData(format!(
                "Weyl group of {} has {} elements, expected {expected}",
                datum.label,
                w.order()
            )));
        }
    }
    Ok(w)
}

pub fn identity(n: usize) -> Vec<i64> {
    let mut m = vec![0; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

pub fn mat_mul(n: usize, a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += x * b[k * n + j];
            }
        }
    }
    out
}

/// Multiplicative order of a square matrix, if at most `max`.
pub fn matrix_order(n: usize, m: &[i64], max: usize) -> Option<usize> {
    let id = identity(n);
    let mut p = m.to_vec();
    for k in 1..=max {
        if p == id {
            return Some(k);
        }
        p = mat_mul(n, &p, m);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_root_datum, LatticeChoice};

    #[test]
    fn classical_orders() {
        for (label, lat, order) in [
            ("A1", LatticeChoice::Weight, 2),
            ("A2", LatticeChoice::Root, 6),
            ("C3", LatticeChoice::Standard, 48),
            ("G2", LatticeChoice::Root, 12),
            ("D4", LatticeChoice::Standard, 192),
            ("B4", LatticeChoice::Standard, 384),
            ("F4", LatticeChoice::Root, 1152),
        ] {
            let d = build_root_datum(label, lat).unwrap();
            assert_eq!(enumerate_weyl(&d).unwrap().order(), order, "{label}");
        }
    }

    #[test]
    fn closure_bound_is_enforced() {
        // an infinite-order generator
        let shear = vec![1, 1, 0, 1];
        assert!(matches!(WeylGroup::generated_with_bound(2, &[shear], 50), Err(Error::WeylClosureBound(50))));
    }

    #[test]
    fn elements_permute_roots() {
        let d = build_root_datum("B3", LatticeChoice::Standard).unwrap();
        let w = enumerate_weyl(&d).unwrap();
        let roots: BTreeSet<Weight> = d.roots().into_iter().collect();
        assert!(w.stabilizes(&roots));
        for m in w.elements() {
            let ord = matrix_order(3, m, 48).unwrap();
            assert_eq!(48 % ord, 0);
        }
    }
}
