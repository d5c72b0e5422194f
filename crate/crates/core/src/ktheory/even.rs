//! Both spheres even-dimensional and all groups of full rank: `K⁰` is the ring of invariants of
//! the group generated by `W_K⁻` and `W_K⁺`, and `K¹` is free of rank one over it.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::diagram::{check_rank_two, Diagram, DiagramWindows, Side};
use super::presentation::{mv_presentation_without_action, KPresentation};
use crate::charring::{orbit_sum, OrbitBasis, TermOrder};
use crate::error::{Error, Result};
use crate::rootsys::bounds::coordinate_bounds;
use crate::rootsys::{RootDatum, Weight, WeylGroup};
use crate::zlinalg::IntMatrix;

const LAMBDA0_SEARCH_BOUND: i64 = 24;

/// The chamber of the effective reflection group, with strictness required only on roots
/// outside `H`.
#[derive(Clone, Debug)]
pub struct RelativeChamber {
    /// Positive roots of the effective group with their coroot functionals.
    positive: Vec<(Weight, bool)>,
    coroots: Vec<Vec<i64>>,
}

impl RelativeChamber {
    pub fn new(d: &Diagram, eff: &WeylGroup) -> Result<Self> {
        let g = &d.g.datum;
        let mut roots: BTreeSet<Weight> = BTreeSet::new();
        for k in [&d.k_minus, &d.k_plus] {
            for r in k.datum.roots() {
                for x in eff.orbit(&r) {
                    roots.insert(x);
                }
            }
        }
        let h_roots: BTreeSet<Weight> = d.h.datum.roots().into_iter().collect();
        let order = TermOrder::for_datum(g);
        let zero = vec![0; g.rank];
        let mut positive = Vec::new();
        let mut coroots = Vec::new();
        for r in roots {
            if order.cmp(&r, &zero).is_gt() {
                coroots.push(g.coroot_functional(&r)?);
                let strict = !h_roots.contains(&r);
                positive.push((r, strict));
            }
        }
        Ok(RelativeChamber { positive, coroots })
    }

    fn pairings<'a>(&'a self, x: &'a [i64]) -> impl Iterator<Item = (i64, bool)> + 'a {
        self.coroots.iter().zip(&self.positive).map(move |(c, (_, s))| (crate::rootsys::dot(c, x), *s))
    }

    pub fn is_dominant(&self, x: &[i64]) -> bool {
        self.pairings(x).all(|(p, _)| p >= 0)
    }

    /// Dominant, and strictly positive on every positive root that is not a root of `H`.
    pub fn is_relatively_strict(&self, x: &[i64]) -> bool {
        self.pairings(x).all(|(p, s)| p > 0 || (p == 0 && !s))
    }

    pub fn positive_root_count(&self) -> usize {
        self.positive.len()
    }
}

/// The shift certificate: `τ` dominant iff `τ + λ₀` relatively strict, over the window.
#[derive(Clone, Debug, Serialize)]
pub struct ShiftCheck {
    pub lambda0: Weight,
    pub dominant: usize,
    pub shifted_strict: usize,
    pub witness: Option<Weight>,
    pub holds: bool,
}

/// Result of the even-sphere computation.
#[derive(Clone, Debug, Serialize)]
pub struct EvenCaseReport {
    pub effective_weyl_order: usize,
    /// `[W_K± : W_H] = 2` on each side with a sphere of positive dimension.
    pub rank_two: [Option<bool>; 2],
    pub k0_rank: usize,
    pub effective_orbits: usize,
    pub k0_is_invariant_ring: bool,
    pub rh_rank: usize,
    pub image_rank: usize,
    pub k1_free_rank: usize,
    pub k1_torsion: Vec<String>,
    pub shift: ShiftCheck,
    /// Dominant `τ` with `τ + λ₀` in the window: the expected `K¹` basis `S_τ · [λ₀]`.
    pub basis_size: usize,
    pub basis_determinant: String,
    /// `K¹` representatives are exactly the relatively strict window weights.
    pub representatives_match: bool,
    pub relatively_strict_count: usize,
    pub dominant_count: usize,
    /// Pairs `(σ, τ)` checked for `S_σ · [τ + λ₀] = [σ + τ + λ₀] + lower`.
    pub graded_pairs_checked: usize,
    pub graded_failure: Option<(Weight, Weight)>,
    /// Free cyclic on `[λ₀]` within the window.
    pub certified: bool,
}

/// Runs the even-sphere analysis on a full-rank diagram.
pub fn even_case(d: &Diagram, w: &DiagramWindows) -> Result<(KPresentation, EvenCaseReport)> {
    if d.sphere_dims.iter().any(|s| s % 2 != 0) {
        return Err(Error::Precondition("both spheres must be even-dimensional".into()));
    }
    if !d.is_full_rank() {
        return Err(Error::Precondition("the even case needs a full-rank diagram".into()));
    }
    let eff = d.effective_weyl()?;
    if !w.h.is_stable_under(&eff) {
        return Err(Error::WindowNotStable("window is not closed under the effective Weyl group".into()));
    }
    let pres = mv_presentation_without_action(d, w)?;
    let chamber = RelativeChamber::new(d, &eff)?;
    let datum = &d.g.datum;

    let rank_two =
        [Side::Minus, Side::Plus].map(|s| (d.sphere_dim(s) > 0).then(|| check_rank_two(d.k(s), &d.h).unwrap_or(false)));

    let eff_basis = OrbitBasis::new(&eff, &w.h.weights, &TermOrder::for_datum(datum))?;
    let effective_orbits = eff_basis.len();

    let lambda0 = relative_lambda0(datum, &chamber)?;
    let shift = shift_check(&chamber, &w.h.weights, &lambda0);

    let dominant: Vec<&Weight> = w.h.weights.iter().filter(|x| chamber.is_dominant(x)).collect();
    let strict: BTreeSet<&Weight> = w.h.weights.iter().filter(|x| chamber.is_relatively_strict(x)).collect();
    let reps: BTreeSet<&Weight> = pres.k1_representatives().into_iter().collect();
    let representatives_match = reps == strict;

    let mut certified = pres.k1.torsion.is_empty() && shift.holds;
    let mut basis_size = 0;
    let mut det = BigInt::zero();
    if w.h.contains(&lambda0) {
        let z = pres.reduce_poly(&orbit_sum(&lambda0, &d.h.weyl))?;
        let mut cols = Vec::new();
        for tau in &dominant {
            let top: Weight = tau.iter().zip(&lambda0).map(|(a, b)| a + b).collect();
            if !w.h.contains(&top) {
                continue;
            }
            cols.push(pres.act_restricted(&orbit_sum(tau, &eff), &z)?);
        }
        basis_size = cols.len();
        if basis_size == pres.k1_generator_count() && basis_size == pres.k1.free_rank {
            det =
                if basis_size == 0 { BigInt::one() } else { IntMatrix::from_columns(basis_size, &cols).determinant() };
        }
    }
    certified &= det.abs().is_one();

    let (graded_pairs_checked, graded_failure) = graded_action_check(d, &pres, &eff, &chamber, &lambda0, w)?;
    certified &= graded_failure.is_none();

    let report = EvenCaseReport {
        effective_weyl_order: eff.order(),
        rank_two,
        k0_rank: pres.k0_rank(),
        effective_orbits,
        k0_is_invariant_ring: pres.k0_rank() == effective_orbits,
        rh_rank: pres.rh.len(),
        image_rank: pres.image_rank(),
        k1_free_rank: pres.k1.free_rank,
        k1_torsion: pres.k1.torsion.iter().map(|t| t.to_string()).collect(),
        shift,
        basis_size,
        basis_determinant: det.to_string(),
        representatives_match,
        relatively_strict_count: strict.len(),
        dominant_count: dominant.len(),
        graded_pairs_checked,
        graded_failure,
        certified: certified && pres.k0_rank() == effective_orbits,
    };
    Ok((pres, report))
}

/// The dominance-minimal relatively strict weight; ties broken by norm, then lexicographically.
pub fn relative_lambda0(datum: &RootDatum, chamber: &RelativeChamber) -> Result<Weight> {
    let r = datum.rank;
    for radius in 0..=LAMBDA0_SEARCH_BOUND {
        let mut found: Vec<Weight> = Vec::new();
        let mut c = vec![-radius; r];
        loop {
            if chamber.is_relatively_strict(&c) {
                found.push(c.clone());
            }
            let mut carry = true;
            for x in c.iter_mut() {
                if *x < radius {
                    *x += 1;
                    carry = false;
                    break;
                }
                *x = -radius;
            }
            if carry {
                break;
            }
        }
        let minimal: Vec<&Weight> =
            found.iter().filter(|m| !found.iter().any(|o| o != *m && datum.dominance_le(o, m))).collect();
        let Some(best) = minimal.into_iter().min_by(|a, b| datum.norm2(a).cmp(&datum.norm2(b)).then_with(|| a.cmp(b)))
        else {
            continue;
        };
        if coordinate_bounds(datum, datum.norm2(best)).iter().all(|&b| b <= radius) {
            return Ok(best.clone());
        }
    }
    Err(Error::NoStrictlyDominant(LAMBDA0_SEARCH_BOUND))
}

fn shift_check(chamber: &RelativeChamber, window: &BTreeSet<Weight>, lambda0: &[i64]) -> ShiftCheck {
    let mut dominant = 0;
    let mut shifted_strict = 0;
    let mut witness = None;
    for t in window {
        let s: Weight = t.iter().zip(lambda0).map(|(a, b)| a + b).collect();
        let a = chamber.is_dominant(t);
        let b = chamber.is_relatively_strict(&s);
        dominant += usize::from(a);
        shifted_strict += usize::from(b);
        if a != b && witness.is_none() {
            witness = Some(t.clone());
        }
    }
    ShiftCheck { lambda0: lambda0.to_vec(), dominant, shifted_strict, holds: witness.is_none(), witness }
}

/// `S_σ · [τ + λ₀]` reduces to `[σ + τ + λ₀]` plus terms lower in the term order, for all
/// dominant σ, τ with `σ + τ + λ₀` in the window.
fn graded_action_check(
    d: &Diagram,
    pres: &KPresentation,
    eff: &WeylGroup,
    chamber: &RelativeChamber,
    lambda0: &[i64],
    w: &DiagramWindows,
) -> Result<(usize, Option<(Weight, Weight)>)> {
    let order = TermOrder::for_datum(&d.g.datum);
    let dominant: Vec<&Weight> = w.h.weights.iter().filter(|x| chamber.is_dominant(x)).collect();
    let add = |a: &[i64], b: &[i64]| -> Weight { a.iter().zip(b).map(|(x, y)| x + y).collect() };
    let mut checked = 0;
    for tau in &dominant {
        let base = add(tau, lambda0);
        if !w.h.contains(&base) {
            continue;
        }
        let Some(base_row) = pres.rh.orbit_index(&base) else { continue };
        let mut e = vec![BigInt::zero(); pres.rh.len()];
        e[base_row] = BigInt::one();
        let start = pres.reduce(&e);
        for sigma in &dominant {
            let top = add(sigma, &base);
            if !w.h.contains(&top) {
                continue;
            }
            checked += 1;
            let v = pres.act_restricted(&orbit_sum(sigma, eff), &start)?;
            let ok = leading_is(pres, &order, &v, &top);
            if !ok {
                return Ok((checked, Some(((*sigma).clone(), (*tau).clone()))));
            }
        }
    }
    Ok((checked, None))
}

fn leading_is(pres: &KPresentation, order: &TermOrder, v: &[BigInt], top: &[i64]) -> bool {
    let lead = v
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(j, c)| (&pres.rh.reps[pres.k1_rows[j]], c))
        .max_by(|a, b| order.cmp(a.0, b.0));
    match lead {
        Some((rep, c)) => c.is_one() && pres.rh.orbit_index(rep) == pres.rh.orbit_index(top),
        None => false,
    }
}
