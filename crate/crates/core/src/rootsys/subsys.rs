//! Reflection subgroups, their positive systems, minimal coset representatives and the
//! compatibility condition on the representative sets of a family of such subgroups.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use super::datum::{RootDatum, Weight};
use super::weyl::WeylGroup;
use crate::error::{Error, Result};

/// A set of positive roots, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PositiveSystem {
    pub roots: Vec<Weight>,
}

impl PositiveSystem {
    pub fn empty() -> Self {
        PositiveSystem { roots: Vec::new() }
    }

    pub fn of(datum: &RootDatum) -> Self {
        let mut roots = datum.positive_roots().to_vec();
        roots.sort();
        PositiveSystem { roots }
    }

    pub fn contains_all(&self, other: &PositiveSystem) -> bool {
        let set: BTreeSet<&Weight> = self.roots.iter().collect();
        other.roots.iter().all(|r| set.contains(r))
    }
}

/// A reflection subgroup of an ambient Weyl group with its induced positive system.
#[derive(Clone, Debug)]
pub struct Subsystem {
    pub simple_roots: Vec<Weight>,
    pub group: WeylGroup,
    pub positive: PositiveSystem,
}

/// The subgroup generated by reflections in the given roots of `ambient`; its positive roots
/// are the roots of the subsystem that are positive in the ambient system.
pub fn reflection_subsystem(ambient: &RootDatum, simple: &[Weight]) -> Result<Subsystem> {
    for r in simple {
        if !ambient.is_root(r) {
            return Err(Error::NotSubsystem(format!("{r:?} is not a root")));
        }
    }
    let gens: Vec<Vec<i64>> = simple.iter().map(|r| ambient.reflection_matrix(r)).collect::<Result<_>>()?;
    let group = WeylGroup::generated_by(ambient.rank, &gens)?;
    let mut roots: BTreeSet<Weight> = BTreeSet::new();
    let mut queue: VecDeque<Weight> = simple.iter().cloned().collect();
    while let Some(r) = queue.pop_front() {
        if !roots.insert(r.clone()) {
            continue;
        }
        for g in &gens {
            queue.push_back(super::datum::apply(g, &r));
        }
    }
    let amb_pos: BTreeSet<&Weight> = ambient.positive_roots().iter().collect();
    let positive = PositiveSystem { roots: roots.into_iter().filter(|r| amb_pos.contains(r)).collect() };
    Ok(Subsystem { simple_roots: simple.to_vec(), group, positive })
}

/// `{w ∈ W : w Φ⁺_sub ⊆ Φ⁺}`, as indices into `w`.
pub fn coset_representatives(ambient: &RootDatum, w: &WeylGroup, sub: &PositiveSystem) -> Result<Vec<usize>> {
    let pos: BTreeSet<&Weight> = ambient.positive_roots().iter().collect();
    for r in &sub.roots {
        if !ambient.is_root(r) {
            return Err(Error::NotSubsystem(format!("{r:?} is not a root of {}", ambient.label)));
        }
    }
    Ok((0..w.order()).filter(|&i| sub.roots.iter().all(|r| pos.contains(&w.act(i, r)))).collect())
}

/// Outcome of the compatibility check for one pair of subsystems.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairOutcome {
    pub j: usize,
    pub k: usize,
    /// The index ℓ realizing the intersection, when found.
    pub realized_by: Option<usize>,
    /// An element of the intersection missing from (or extra in) the closest candidate.
    pub witness: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CosetCompatibilityReport {
    pub holds: bool,
    pub representative_sets: Vec<Vec<usize>>,
    pub pairs: Vec<PairOutcome>,
}

/// For every pair (j, k) looks for ℓ whose positive system contains both and whose
/// representatives are exactly the common representatives of j and k.
pub fn check_coset_compatibility(
    ambient: &RootDatum,
    w: &WeylGroup,
    systems: &[PositiveSystem],
) -> Result<CosetCompatibilityReport> {
    let reps: Vec<BTreeSet<usize>> = systems
        .iter()
        .map(|s| coset_representatives(ambient, w, s).map(|v| v.into_iter().collect()))
        .collect::<Result<_>>()?;
    let mut pairs = Vec::new();
    let mut holds = true;
    for j in 0..systems.len() {
        for k in j..systems.len() {
            let common: BTreeSet<usize> = reps[j].intersection(&reps[k]).copied().collect();
            let candidates: Vec<usize> = (0..systems.len())
                .filter(|&l| systems[l].contains_all(&systems[j]) && systems[l].contains_all(&systems[k]))
                .collect();
            let realized_by = candidates.iter().copied().find(|&l| reps[l] == common);
            let witness = if realized_by.is_some() {
                None
            } else {
                holds = false;
                let closest = candidates.iter().min_by_key(|&&l| reps[l].symmetric_difference(&common).count());
                match closest {
                    Some(&l) => reps[l].symmetric_difference(&common).next().copied(),
                    None => common.iter().next().copied(),
                }
            };
            pairs.push(PairOutcome { j, k, realized_by, witness });
        }
    }
    Ok(CosetCompatibilityReport {
        holds,
        representative_sets: reps.into_iter().map(|s| s.into_iter().collect()).collect(),
        pairs,
    })
}
