use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::LaurentPoly;
use crate::error::{Error, Result};
use crate::rootsys::bounds::lattice_ball;
use crate::rootsys::{dot, neg, RootDatum, Weight, WeylGroup};

/// A finite set of weights on which module computations are carried out exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub rank: usize,
    pub weights: BTreeSet<Weight>,
    /// The norm radius used to build the window, if it came from a ball.
    pub radius: Option<i64>,
    /// Labels of the groups under which the window was closed.
    pub stabilizers: Vec<String>,
}

impl Window {
    pub fn from_weights(rank: usize, weights: impl IntoIterator<Item = Weight>) -> Self {
        Window { rank, weights: weights.into_iter().collect(), radius: None, stabilizers: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.weights.contains(x)
    }

    pub fn is_stable_under(&self, w: &WeylGroup) -> bool {
        w.stabilizes(&self.weights)
    }

    pub fn is_negation_closed(&self) -> bool {
        self.weights.iter().all(|x| self.weights.contains(&neg(x)))
    }

    /// Whether every exponent of `p` lies in the window.
    pub fn supports(&self, p: &LaurentPoly) -> bool {
        p.support().all(|e| self.weights.contains(e))
    }
}

/// All lattice weights of actual norm at most `radius`, closed under the given groups and
/// under negation.
pub fn make_window(datum: &RootDatum, groups: &[(&str, &WeylGroup)], radius: i64) -> Result<Window> {
    if radius < 0 {
        return Err(Error::Precondition(format!("window radius must be nonnegative, got {radius}")));
    }
    let n2 = radius * radius * datum.scale * datum.scale;
    let ball = lattice_ball(datum, n2);
    let weights = close_under(ball, groups.iter().map(|(_, g)| *g));
    Ok(Window {
        rank: datum.rank,
        weights,
        radius: Some(radius),
        stabilizers: groups.iter().map(|(l, _)| l.to_string()).collect(),
    })
}

/// Smallest superset closed under all groups and negation.
pub fn close_under<'a>(
    seed: impl IntoIterator<Item = Weight>,
    groups: impl Iterator<Item = &'a WeylGroup> + Clone,
) -> BTreeSet<Weight> {
    let mut set: BTreeSet<Weight> = BTreeSet::new();
    let mut stack: Vec<Weight> = seed.into_iter().collect();
    while let Some(x) = stack.pop() {
        if !set.insert(x.clone()) {
            continue;
        }
        stack.push(neg(&x));
        for g in groups.clone() {
            for i in 0..g.order() {
                let y = g.act(i, &x);
                if !set.contains(&y) {
                    stack.push(y);
                }
            }
        }
    }
    set
}

/// Total order on exponents: by a height functional, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermOrder {
    height: Vec<i64>,
}

impl TermOrder {
    /// Height is the pairing with the sum of positive coroots of `datum`.
    pub fn for_datum(datum: &RootDatum) -> Self {
        let height = (0..datum.rank)
            .map(|i| {
                let mut e = vec![0; datum.rank];
                e[i] = 1;
                datum.height(&e)
            })
            .collect();
        TermOrder { height }
    }

    pub fn lex(rank: usize) -> Self {
        TermOrder { height: vec![0; rank] }
    }

    pub fn height(&self, x: &[i64]) -> i64 {
        dot(&self.height, x)
    }

    pub fn cmp(&self, a: &[i64], b: &[i64]) -> Ordering {
        self.height(a).cmp(&self.height(b)).then_with(|| a.cmp(b))
    }

    /// Largest exponent of a nonzero polynomial with its coefficient.
    pub fn leading<'a>(&self, p: &'a LaurentPoly) -> Option<(&'a Weight, &'a BigInt)> {
        p.terms().iter().max_by(|a, b| self.cmp(a.0, b.0))
    }

    pub fn max_of<'a>(&self, xs: impl IntoIterator<Item = &'a Weight>) -> Option<&'a Weight> {
        xs.into_iter().max_by(|a, b| self.cmp(a, b))
    }
}

/// Σ of the W-orbit of `weight`, each element with coefficient 1.
pub fn orbit_sum(weight: &[i64], w: &WeylGroup) -> LaurentPoly {
    let mut p = LaurentPoly::zero(weight.len());
    for x in w.orbit(weight) {
        p.add_term(x, BigInt::one());
    }
    p
}

/// Orbit-sum basis of the W-invariants supported in a W-stable window.
#[derive(Clone, Debug)]
pub struct OrbitBasis {
    /// One representative per orbit (the largest in the term order), sorted ascending.
    pub reps: Vec<Weight>,
    pub orbits: Vec<Vec<Weight>>,
    orbit_of: BTreeMap<Weight, usize>,
}

impl OrbitBasis {
    pub fn new(w: &WeylGroup, window: &BTreeSet<Weight>, order: &TermOrder) -> Result<Self> {
        let mut seen: BTreeSet<&Weight> = BTreeSet::new();
        let mut orbits: Vec<(Weight, Vec<Weight>)> = Vec::new();
        for x in window {
            if seen.contains(x) {
                continue;
            }
            let orbit = w.orbit(x);
            for y in &orbit {
                match window.get(y) {
                    Some(y) => {
                        seen.insert(y);
                    }
                    None => {
                        return Err(Error::WindowNotStable(format!(
                            "{y:?} is in the orbit of {x:?} but not in the window"
                        )))
                    }
                }
            }
            let rep = order.max_of(&orbit).expect("orbit is nonempty").clone();
            orbits.push((rep, orbit));
        }
        orbits.sort_by(|a, b| order.cmp(&a.0, &b.0));
        let mut orbit_of = BTreeMap::new();
        for (i, (_, orbit)) in orbits.iter().enumerate() {
            for y in orbit {
                orbit_of.insert(y.clone(), i);
            }
        }
        let (reps, orbits) = orbits.into_iter().unzip();
        Ok(OrbitBasis { reps, orbits, orbit_of })
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn element(&self, i: usize) -> LaurentPoly {
        let mut p = LaurentPoly::zero(self.reps[i].len());
        for x in &self.orbits[i] {
            p.add_term(x.clone(), BigInt::one());
        }
        p
    }

    pub fn orbit_index(&self, x: &[i64]) -> Option<usize> {
        self.orbit_of.get(x).copied()
    }

    /// Coordinates of an invariant polynomial supported in the window.
    pub fn coordinates(&self, p: &LaurentPoly) -> Result<Vec<BigInt>> {
        let mut c = vec![BigInt::zero(); self.len()];
        for e in p.support() {
            if self.orbit_index(e).is_none() {
                return Err(Error::WindowEscape(format!("exponent {e:?} is outside the window")));
            }
        }
        for (i, orbit) in self.orbits.iter().enumerate() {
            let k = p.coeff(&self.reps[i]);
            if orbit.iter().any(|x| p.coeff(x) != k) {
                return Err(Error::Precondition(format!(
                    "polynomial is not invariant on the orbit of {:?}",
                    self.reps[i]
                )));
            }
            c[i] = k;
        }
        Ok(c)
    }

    pub fn combination(&self, coeffs: &[BigInt]) -> LaurentPoly {
        let mut p = LaurentPoly::zero(self.reps.first().map_or(0, Vec::len));
        for (i, k) in coeffs.iter().enumerate() {
            for x in &self.orbits[i] {
                p.add_term(x.clone(), k.clone());
            }
        }
        p
    }
}

/// Orbit sums of one weight per W-orbit of the window: a Z-basis of the invariants it supports.
pub fn invariant_window_basis(w: &WeylGroup, window: &Window) -> Result<Vec<LaurentPoly>> {
    let basis = OrbitBasis::new(w, &window.weights, &TermOrder::lex(window.rank))?;
    Ok((0..basis.len()).map(|i| basis.element(i)).collect())
}
