//! Splitting off a common central torus or direct factor: `K_G(M) ≅ K_G(M̲) ⊗ R(A/F)`.
//!
//! A split is given on the character lattice by a surjection `q: X → X̲` onto the lattice of the
//! reduced diagram together with Weyl-invariant degree functionals `c: X → Z^a` (the characters
//! of `A/F`). The map `(q, c)` must be injective; its index is `|F|`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::diagram::{Diagram, DiagramWindows, Group};
use super::presentation::mv_presentation_without_action;
use crate::charring::{TorusMap, Window};
use crate::error::{Error, Result};
use crate::rootsys::Weight;
use crate::zlinalg::{cokernel, solve_integer, to_big, IntMatrix};

#[derive(Clone, Debug)]
pub struct CentralSplit {
    /// `X → X̲`, rows indexed by reduced coordinates.
    pub quotient: TorusMap,
    /// Degree functionals, one row per cofactor coordinate.
    pub degree: Vec<Vec<i64>>,
    pub reduced: Diagram,
}

impl CentralSplit {
    /// The trivial split: nothing is factored out.
    pub fn identity(d: &Diagram) -> Self {
        CentralSplit { quotient: TorusMap::identity(d.g.rank()), degree: Vec::new(), reduced: d.clone() }
    }
}

/// The tensor factor `R(A/F)`: a Laurent ring in `rank` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cofactor {
    pub rank: usize,
    /// `|F|`, the index of `(q, c)(X)`.
    pub index: BigInt,
}

/// Validates a split of a full-rank diagram and returns the reduced diagram with its cofactor.
pub fn factor_diagram(d: &Diagram, split: &CentralSplit) -> Result<(Diagram, Cofactor)> {
    let red = &split.reduced;
    if !d.is_full_rank() || !red.is_full_rank() {
        return Err(Error::Precondition("splits are supported for full-rank diagrams".into()));
    }
    let r = d.g.rank();
    let (r1, a) = (red.g.rank(), split.degree.len());
    if split.quotient.source_rank != r || split.quotient.target_rank != r1 || r1 + a != r {
        return Err(Error::DimensionMismatch(format!(
            "split of a rank-{r} lattice into ranks {} and {a}",
            split.quotient.target_rank
        )));
    }
    if split.degree.iter().any(|c| c.len() != r) {
        return Err(Error::DimensionMismatch("degree functionals have the wrong length".into()));
    }
    let stacked = stacked(split);
    let index = stacked.determinant().abs();
    if index.is_zero() {
        return Err(Error::Semantic("quotient and degree maps are not jointly injective".into()));
    }
    if !split.quotient.is_surjective() {
        return Err(Error::Semantic("quotient map is not onto the reduced lattice".into()));
    }
    if d.sphere_dims != red.sphere_dims {
        return Err(Error::Semantic("reduced diagram has different sphere dimensions".into()));
    }
    let pairs: [(&Group, &Group); 4] =
        [(&d.g, &red.g), (&d.k_minus, &red.k_minus), (&d.k_plus, &red.k_plus), (&d.h, &red.h)];
    for (orig, small) in pairs {
        check_group(orig, small, split)?;
    }
    Ok((red.clone(), Cofactor { rank: a, index }))
}

fn stacked(split: &CentralSplit) -> IntMatrix {
    let mut rows = split.quotient.matrix.clone();
    rows.extend(split.degree.iter().cloned());
    let n = split.quotient.source_rank;
    IntMatrix::from_fn(rows.len(), n, |i, j| rows[i][j].into())
}

fn check_group(orig: &Group, small: &Group, split: &CentralSplit) -> Result<()> {
    let fail = |what: &str| Err(Error::Semantic(format!("split is inconsistent for {}: {what}", orig.name)));
    if orig.weyl.order() != small.weyl.order() {
        return fail("Weyl groups have different orders");
    }
    let r = orig.rank();
    for &gi in &orig.weyl.generators {
        let w = orig.weyl.element(gi);
        for c in &split.degree {
            let cw: Vec<i64> = (0..r).map(|j| (0..r).map(|k| c[k] * w[k * r + j]).sum()).collect();
            if &cw != c {
                return fail("degree functional is not Weyl-invariant");
            }
        }
        // q·w = w̲·q for some w̲ in the reduced group
        let images: Vec<Weight> = (0..r)
            .map(|j| {
                let col: Vec<i64> = (0..r).map(|i| w[i * r + j]).collect();
                split.quotient.apply(&col)
            })
            .collect();
        let found = small.weyl.elements().iter().any(|m| {
            (0..r).all(|j| {
                let mut e = vec![0; r];
                e[j] = 1;
                crate::rootsys::apply(m, &split.quotient.apply(&e)) == images[j]
            })
        });
        if !found {
            return fail("a Weyl generator does not descend to the reduced group");
        }
    }
    let roots: BTreeSet<Weight> = orig.datum.roots().iter().map(|x| split.quotient.apply(x)).collect();
    let small_roots: BTreeSet<Weight> = small.datum.roots().into_iter().collect();
    if roots != small_roots {
        return fail("roots do not map onto the reduced roots");
    }
    Ok(())
}

/// Comparison of `K¹` of the original diagram with `⊕_e K¹(reduced)` over cofactor degrees.
#[derive(Clone, Debug)]
pub struct RoundTrip {
    pub original: (usize, Vec<BigInt>),
    pub expected: (usize, Vec<BigInt>),
    pub degrees: usize,
    pub original_window: usize,
    pub holds: bool,
}

/// Lifts a reduced window to all degrees in `[-bound, bound]^a`, computes `K¹` of the original
/// diagram there, and compares with the sum of reduced `K¹` over the degree slices.
pub fn factor_round_trip(d: &Diagram, split: &CentralSplit, reduced: &Window, bound: i64) -> Result<RoundTrip> {
    factor_diagram(d, split)?;
    let stacked = stacked(split);
    let a = split.degree.len();
    let mut degrees: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..a {
        degrees =
            degrees.into_iter().flat_map(|e| (-bound..=bound).map(move |k| [e.clone(), vec![k]].concat())).collect();
    }
    let mut original: BTreeSet<Weight> = BTreeSet::new();
    let mut free = 0;
    let mut torsion: Vec<i64> = Vec::new();
    for e in &degrees {
        let mut slice: BTreeSet<Weight> = BTreeSet::new();
        for y in &reduced.weights {
            let rhs = to_big(&[y.clone(), e.clone()].concat());
            if let Some(x) = solve_integer(&stacked, &rhs) {
                let x: Weight = x.iter().map(|v| v.to_i64().expect("small lift")).collect();
                original.insert(x);
                slice.insert(y.clone());
            }
        }
        let w = Window::from_weights(reduced.rank, slice);
        let pres = mv_presentation_without_action(
            &split.reduced,
            &DiagramWindows { h: w.clone(), k_minus: w.clone(), k_plus: w },
        )?;
        free += pres.k1.free_rank;
        torsion.extend(pres.k1.torsion.iter().map(|t| t.to_i64().expect("small torsion")));
    }
    let expected = cokernel(&IntMatrix::diagonal(&torsion)).normalized();
    let expected = (free, expected.1);
    let w = Window::from_weights(d.g.rank(), original.iter().cloned());
    let original_window = w.len();
    let pres = mv_presentation_without_action(d, &DiagramWindows { h: w.clone(), k_minus: w.clone(), k_plus: w })?;
    let got = pres.k1.normalized();
    Ok(RoundTrip { holds: got == expected, original: got, expected, degrees: degrees.len(), original_window })
}
