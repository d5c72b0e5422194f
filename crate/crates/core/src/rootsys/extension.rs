//! Extensions of an A2 lattice to G2 and of a Dn lattice to Bn by adjoining one new root.
//!
//! Candidates are searched exhaustively: a new root v of squared length t whose reflection
//! preserves L lies in (t/2)·L*, and the norm bounds each dual coordinate.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::datum::RootDatum;
use super::frames::{parse_label, FactorType};
use crate::error::{Error, Result};
use crate::zlinalg::rational::{isqrt_ratio, q_from_i64, q_inverse};
use crate::zlinalg::{hermite_columns, to_big};

pub type QVec = Vec<Rational64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ExtensionTarget {
    G2,
    B,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Extension {
    /// Roots of the extended system that are not roots of the base, in actual coordinates.
    #[serde(serialize_with = "ser_qvecs")]
    pub new_roots: Vec<QVec>,
    pub root_count: usize,
    /// Basis of the lattice generated by the base lattice and the new roots.
    #[serde(serialize_with = "ser_qvecs")]
    pub lattice_basis: Vec<QVec>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtensionReport {
    pub base: String,
    pub target: ExtensionTarget,
    pub target_norm: String,
    /// Every admissible new root, in actual coordinates.
    #[serde(serialize_with = "ser_qvecs")]
    pub candidates: Vec<QVec>,
    /// Distinct extended root systems.
    pub extensions: Vec<Extension>,
    /// Number of extensions up to signed coordinate permutations preserving the base data.
    pub classes_up_to_symmetry: usize,
}

fn ser_qvecs<S: serde::Serializer>(v: &[QVec], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&x.iter().map(|r| r.to_string()).collect::<Vec<_>>())?;
    }
    seq.end()
}

fn qdot(a: &[Rational64], b: &[Rational64]) -> Rational64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn reflect(x: &[Rational64], v: &[Rational64]) -> QVec {
    let p = Rational64::from_integer(2) * qdot(x, v) / qdot(v, v);
    x.iter().zip(v).map(|(a, b)| a - p * b).collect()
}

fn actual(d: &RootDatum, ambient: &[i64]) -> QVec {
    ambient.iter().map(|&a| Rational64::new(a, d.scale)).collect()
}

/// Closure of a root set under its own reflections; `None` if it exceeds `bound` roots.
fn close_roots(seed: &[QVec], bound: usize) -> Option<BTreeSet<QVec>> {
    let mut set: BTreeSet<QVec> = BTreeSet::new();
    let mut queue: VecDeque<QVec> = seed.iter().cloned().collect();
    while let Some(r) = queue.pop_front() {
        if set.contains(&r) {
            continue;
        }
        set.insert(r.clone());
        if set.len() > bound {
            return None;
        }
        let current: Vec<QVec> = set.iter().cloned().collect();
        for s in &current {
            queue.push_back(reflect(&r, s));
            queue.push_back(reflect(s, &r));
        }
    }
    Some(set)
}

fn is_crystallographic(roots: &BTreeSet<QVec>) -> bool {
    roots.iter().all(|a| roots.iter().all(|b| (Rational64::from_integer(2) * qdot(a, b) / qdot(b, b)).is_integer()))
}

pub fn enumerate_extensions(base: &RootDatum, target: ExtensionTarget) -> Result<ExtensionReport> {
    let factors = parse_label(&base.label)?;
    let rank_ok = match (factors.as_slice(), target) {
        ([FactorType::A(2)], ExtensionTarget::G2) => true,
        ([FactorType::D(n)], ExtensionTarget::B) => *n >= 2,
        _ => false,
    };
    if !rank_ok {
        return Err(Error::Unsupported(format!("lattice extension from {} to {target:?}", base.label)));
    }
    let basis: Vec<QVec> = base.basis_vectors().iter().map(|b| actual(base, b)).collect();
    let base_roots: Vec<QVec> = base.roots().iter().map(|r| actual(base, &base.to_ambient(r))).collect();
    let long = base_roots.iter().map(|r| qdot(r, r)).max().expect("base has roots");
    let t = match target {
        ExtensionTarget::G2 => long * 3,
        ExtensionTarget::B => long / 2,
    };
    let expected_roots = match (factors[0], target) {
        (_, ExtensionTarget::G2) => 12,
        (FactorType::D(n), ExtensionTarget::B) => 2 * n * n,
        _ => unreachable!(),
    };

    // Dual basis of L in actual coordinates.
    let r = basis.len();
    let gram: Vec<Vec<Rational64>> = basis.iter().map(|a| basis.iter().map(|b| qdot(a, b)).collect()).collect();
    let den = gram.iter().flatten().fold(1i64, |acc, x| acc.lcm(x.denom()));
    let gram_int: Vec<Vec<i64>> = gram.iter().map(|row| row.iter().map(|x| (x * den).to_integer()).collect()).collect();
    let inv =
        q_inverse(&q_from_i64(&gram_int)).ok_or_else(|| Error::InvalidRootData("degenerate base lattice".into()))?;
    let to_r64 = |x: &num_rational::BigRational| {
        Rational64::new(x.numer().to_i64().expect("small"), x.denom().to_i64().expect("small"))
    };
    let dual: Vec<QVec> = (0..r)
        .map(|i| {
            let mut v = vec![Rational64::zero(); base.ambient_dim];
            for j in 0..r {
                let c = to_r64(&inv[i][j]) * den;
                for (vk, bk) in v.iter_mut().zip(&basis[j]) {
                    *vk += c * bk;
                }
            }
            v
        })
        .collect();

    // |c_i| = (2/t)|⟨v, b_i⟩| ≤ (2/t)·sqrt(t·G_ii) = sqrt(4 G_ii / t)
    let bounds: Vec<i64> = (0..r)
        .map(|i| {
            let q = gram[i][i] * 4 / t;
            isqrt_ratio(&BigInt::from(*q.numer()), &BigInt::from(*q.denom())).to_i64().expect("small")
        })
        .collect();

    let half_t = t / 2;
    let mut candidates = Vec::new();
    let mut c = vec![0i64; r];
    let mut done = r == 0;
    if !done {
        c.iter_mut().zip(&bounds).for_each(|(x, b)| *x = -b);
    }
    while !done {
        let mut v = vec![Rational64::zero(); base.ambient_dim];
        for (ci, w) in c.iter().zip(&dual) {
            if *ci != 0 {
                for (vk, wk) in v.iter_mut().zip(w) {
                    *vk += half_t * *ci * wk;
                }
            }
        }
        if qdot(&v, &v) == t
            && base_roots.iter().all(|a| (Rational64::from_integer(2) * qdot(&v, a) / qdot(a, a)).is_integer())
        {
            candidates.push(v);
        }
        // odometer
        done = true;
        for (x, b) in c.iter_mut().zip(&bounds) {
            if *x < *b {
                *x += 1;
                done = false;
                break;
            }
            *x = -b;
        }
    }
    candidates.sort();

    let base_set: BTreeSet<QVec> = base_roots.iter().cloned().collect();
    let mut systems: BTreeMap<BTreeSet<QVec>, ()> = BTreeMap::new();
    for v in &candidates {
        let mut seed = base_roots.clone();
        seed.push(v.clone());
        if let Some(sys) = close_roots(&seed, 4 * expected_roots) {
            if sys.len() == expected_roots && is_crystallographic(&sys) {
                systems.insert(sys, ());
            }
        }
    }
    let systems: Vec<BTreeSet<QVec>> = systems.into_keys().collect();
    let extensions: Vec<Extension> = systems
        .iter()
        .map(|sys| {
            let new_roots: Vec<QVec> = sys.difference(&base_set).cloned().collect();
            let mut gens = basis.clone();
            gens.extend(new_roots.iter().cloned());
            Extension { root_count: sys.len(), lattice_basis: lattice_basis(&gens), new_roots }
        })
        .collect();

    let symmetries = signed_permutations_preserving(base, &base_set);
    let mut classes: Vec<BTreeSet<QVec>> = Vec::new();
    for sys in &systems {
        let seen = classes.iter().any(|c| {
            symmetries.iter().any(|p| {
                let img: BTreeSet<QVec> = sys.iter().map(|x| permute(p, x)).collect();
                &img == c
            })
        });
        if !seen {
            classes.push(sys.clone());
        }
    }

    Ok(ExtensionReport {
        base: base.label.clone(),
        target,
        target_norm: t.to_string(),
        candidates,
        extensions,
        classes_up_to_symmetry: classes.len(),
    })
}

/// A signed permutation: `out[perm[i]] = sign[i] · x[i]`.
type SignedPerm = (Vec<usize>, Vec<i64>);

fn permute(p: &SignedPerm, x: &[Rational64]) -> QVec {
    let mut out = vec![Rational64::zero(); x.len()];
    for i in 0..x.len() {
        out[p.0[i]] = x[i] * p.1[i];
    }
    out
}

fn signed_permutations_preserving(base: &RootDatum, roots: &BTreeSet<QVec>) -> Vec<SignedPerm> {
    let n = base.ambient_dim;
    let mut perms = Vec::new();
    let mut idx: Vec<usize> = (0..n).collect();
    permutations(&mut idx, 0, &mut perms);
    let mut out = Vec::new();
    for perm in perms {
        for mask in 0..(1u32 << n) {
            let sign: Vec<i64> = (0..n).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
            let p = (perm.clone(), sign);
            let keeps_lattice = base.basis_vectors().iter().all(|b| {
                let img = permute(&p, &b.iter().map(|&x| Rational64::from_integer(x)).collect::<Vec<_>>());
                let ints: Vec<i64> = img.iter().map(|x| x.to_integer()).collect();
                base.from_ambient(&ints).is_some()
            });
            let keeps_roots = roots.iter().all(|r| roots.contains(&permute(&p, r)));
            if keeps_lattice && keeps_roots {
                out.push(p);
            }
        }
    }
    out
}

fn permutations(v: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == v.len() {
        out.push(v.clone());
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, out);
        v.swap(k, i);
    }
}

/// Hermite basis of the Z-span of rational vectors.
fn lattice_basis(gens: &[QVec]) -> Vec<QVec> {
    let dim = gens.first().map_or(0, Vec::len);
    let den = gens.iter().flatten().fold(1i64, |acc, x| acc.lcm(x.denom()));
    let cols: Vec<Vec<BigInt>> =
        gens.iter().map(|g| to_big(&g.iter().map(|x| (x * den).to_integer()).collect::<Vec<_>>())).collect();
    let order: Vec<usize> = (0..dim).collect();
    hermite_columns(&cols, dim, &order)
        .into_iter()
        .map(|c| c.iter().map(|x| Rational64::new(x.to_i64().expect("small"), den)).collect())
        .collect()
}

/// Whether a vector given in actual coordinates has the form ±(2,−1,−1) up to permutation.
pub fn is_g2_long_pattern(v: &[Rational64]) -> bool {
    let mut a: Vec<i64> = v.iter().filter_map(|x| x.is_integer().then(|| x.to_integer())).collect();
    if a.len() != 3 {
        return false;
    }
    if a.iter().sum::<i64>() != 0 {
        return false;
    }
    a.sort_by_key(|x| x.abs());
    a[0].abs() == 1 && a[1].abs() == 1 && a[2].abs() == 2 && a[0] == a[1] && a[0].signum() != a[2].signum()
}

/// Whether v is ±e_j.
pub fn is_unit_pattern(v: &[Rational64]) -> bool {
    v.iter().filter(|x| !x.is_zero()).count() == 1 && v.iter().all(|x| x.is_zero() || x.abs().is_one())
}

/// Whether v is Σ ±½ e_j with every coordinate ±½.
pub fn is_half_pattern(v: &[Rational64]) -> bool {
    v.iter().all(|x| x.abs() == Rational64::new(1, 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_root_datum, LatticeChoice};

    #[test]
    fn a2_extends_uniquely_to_g2() {
        let a2 = build_root_datum("A2", LatticeChoice::Root).unwrap();
        let rep = enumerate_extensions(&a2, ExtensionTarget::G2).unwrap();
        assert_eq!(rep.candidates.len(), 6);
        assert!(rep.candidates.iter().all(|v| is_g2_long_pattern(v)));
        assert_eq!(rep.extensions.len(), 1);
        assert_eq!(rep.extensions[0].root_count, 12);
    }

    #[test]
    fn d_n_extensions() {
        for (n, raw, classes) in [(3, 1, 1), (4, 3, 2), (5, 1, 1)] {
            let d = build_root_datum(&format!("D{n}"), LatticeChoice::Root).unwrap();
            let rep = enumerate_extensions(&d, ExtensionTarget::B).unwrap();
            assert_eq!(rep.extensions.len(), raw, "D{n}");
            assert_eq!(rep.classes_up_to_symmetry, classes, "D{n}");
            for v in &rep.candidates {
                assert!(is_unit_pattern(v) || (n == 4 && is_half_pattern(v)));
            }
        }
    }

    #[test]
    fn unsupported_pairs() {
        let c2 = build_root_datum("C2", LatticeChoice::Standard).unwrap();
        assert!(enumerate_extensions(&c2, ExtensionTarget::B).is_err());
    }
}
