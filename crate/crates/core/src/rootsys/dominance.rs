//! Weyl chambers, dominant representatives and the minimal strictly dominant weight λ₀.

use std::collections::BTreeSet;

use serde::Serialize;

use super::datum::{RootDatum, Weight};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Chamber {
    StrictlyDominant,
    BoundaryDominant,
    NotDominant,
}

pub fn dominant_chamber_test(datum: &RootDatum, weight: &[i64]) -> Chamber {
    let p = datum.simple_pairings(weight);
    if p.iter().all(|&v| v > 0) {
        Chamber::StrictlyDominant
    } else if p.iter().all(|&v| v >= 0) {
        Chamber::BoundaryDominant
    } else {
        Chamber::NotDominant
    }
}

pub fn is_dominant(datum: &RootDatum, weight: &[i64]) -> bool {
    dominant_chamber_test(datum, weight) != Chamber::NotDominant
}

pub fn is_strictly_dominant(datum: &RootDatum, weight: &[i64]) -> bool {
    dominant_chamber_test(datum, weight) == Chamber::StrictlyDominant
}

/// The dominant weight in the orbit of `x`, reached by reflecting across walls.
pub fn dominant_representative(datum: &RootDatum, x: &[i64]) -> Weight {
    let mut x = x.to_vec();
    'outer: loop {
        for (a, c) in datum.simple_roots.iter().zip(datum.simple_coroots()) {
            let p: i64 = c.iter().zip(&x).map(|(u, v)| u * v).sum();
            if p < 0 {
                for (xi, ai) in x.iter_mut().zip(a) {
                    *xi -= p * ai;
                }
                continue 'outer;
            }
        }
        return x;
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ShiftCertificate {
    pub lambda0: Weight,
    /// Dominant window weights τ (each τ + λ₀ is strictly dominant).
    pub dominant: usize,
    /// Window weights τ with τ + λ₀ strictly dominant.
    pub shifted_strictly_dominant: usize,
    /// A window weight τ breaking the bijection, if any.
    pub witness: Option<Weight>,
    pub holds: bool,
}

/// The dominance-minimal strictly dominant lattice weight (ties broken by norm, then
/// lexicographically), with a certificate that τ ↦ τ + λ₀ maps the dominant window weights
/// bijectively onto the window weights whose shift is strictly dominant.
pub fn minimal_strongly_dominant(
    datum: &RootDatum,
    window: &BTreeSet<Weight>,
    search_bound: i64,
) -> Result<ShiftCertificate> {
    let lambda0 = find_lambda0(datum, search_bound)?;
    let shifted = |t: &Weight| -> Weight { t.iter().zip(&lambda0).map(|(a, b)| a + b).collect() };
    let mut dominant = 0;
    let mut strict = 0;
    let mut witness = None;
    for t in window {
        let d = is_dominant(datum, t);
        let s = is_strictly_dominant(datum, &shifted(t));
        dominant += usize::from(d);
        strict += usize::from(s);
        if d != s && witness.is_none() {
            witness = Some(t.clone());
        }
    }
    Ok(ShiftCertificate { lambda0, dominant, shifted_strictly_dominant: strict, holds: witness.is_none(), witness })
}

fn find_lambda0(datum: &RootDatum, search_bound: i64) -> Result<Weight> {
    let r = datum.rank;
    for radius in 1..=search_bound {
        let mut found: Vec<Weight> = Vec::new();
        let mut c = vec![-radius; r];
        loop {
            if is_strictly_dominant(datum, &c) {
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
        if found.is_empty() {
            continue;
        }
        let minimal: Vec<&Weight> =
            found.iter().filter(|m| !found.iter().any(|o| o != *m && datum.dominance_le(o, m))).collect();
        let best = minimal
            .into_iter()
            .min_by(|a, b| datum.norm2(a).cmp(&datum.norm2(b)).then_with(|| a.cmp(b)))
            .expect("nonempty");
        // Dominant weights below `best` are no longer than it, so once the box covers the
        // ball of that norm the choice is final.
        if box_contains_ball(datum, radius, datum.norm2(best)) {
            return Ok(best.clone());
        }
    }
    Err(Error::NoStrictlyDominant(search_bound))
}

/// Whether the coordinate box of the given radius contains every lattice weight of
/// squared norm at most `n2`.
fn box_contains_ball(datum: &RootDatum, radius: i64, n2: i64) -> bool {
    super::bounds::coordinate_bounds(datum, n2).iter().all(|&b| b <= radius)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_root_datum, LatticeChoice};

    #[test]
    fn chamber_examples() {
        let a1 = build_root_datum("A1", LatticeChoice::Weight).unwrap();
        assert_eq!(dominant_chamber_test(&a1, &[0]), Chamber::BoundaryDominant);
        assert_eq!(dominant_chamber_test(&a1, &[1]), Chamber::StrictlyDominant);
        assert_eq!(dominant_chamber_test(&a1, &[-1]), Chamber::NotDominant);
        let a2 = build_root_datum("A2", LatticeChoice::Weight).unwrap();
        let rho = a2.rho().unwrap();
        assert_eq!(dominant_chamber_test(&a2, &rho), Chamber::StrictlyDominant);
    }

    #[test]
    fn lambda0_examples() {
        let window: BTreeSet<Weight> = (-3..=3).map(|x| vec![x]).collect();
        let a1w = build_root_datum("A1", LatticeChoice::Weight).unwrap();
        let c = minimal_strongly_dominant(&a1w, &window, 10).unwrap();
        assert_eq!(c.lambda0, vec![1]);
        assert!(c.holds);
        // root lattice: X-coordinate 1 is weight 2
        let a1r = build_root_datum("A1", LatticeChoice::Root).unwrap();
        let c = minimal_strongly_dominant(&a1r, &window, 10).unwrap();
        assert_eq!(a1r.to_ambient(&c.lambda0), vec![2]);
        for label in ["A2", "B2", "C3", "G2", "D4"] {
            let d = build_root_datum(label, LatticeChoice::Weight).unwrap();
            let c = minimal_strongly_dominant(&d, &BTreeSet::new(), 10).unwrap();
            assert_eq!(Some(c.lambda0), d.rho(), "{label}");
        }
    }

    #[test]
    fn dominant_representatives() {
        let b2 = build_root_datum("B2", LatticeChoice::Standard).unwrap();
        let w = crate::rootsys::enumerate_weyl(&b2).unwrap();
        for x in w.orbit(&[2, -1]) {
            assert_eq!(dominant_representative(&b2, &x), vec![2, 1]);
        }
    }
}
