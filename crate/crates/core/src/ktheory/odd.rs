//! At least one odd sphere: the restriction from an odd side is onto `RH`, `K¹` vanishes and
//! `K⁰` splits as `RH` plus the kernels of the odd-side restrictions.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::diagram::{Diagram, DiagramWindows, Side};
use super::presentation::{mv_presentation_without_action, KPresentation};
use crate::charring::{restrict, weyl_character, LaurentPoly};
use crate::error::{Error, Result};
use crate::rootsys::Weight;
use crate::zlinalg::{kernel_basis, rank, same_lattice, solve_integer, IntMatrix};

/// Which of the four presentations applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OddShape {
    /// One sphere is a circle, the other even: `RK⁻ ⊕ (t−1) RH[t^±]`.
    CircleAndEven,
    /// One odd sphere of dimension ≥ 3, the other even: `RK⁻ ⊕ ρ̄ RH[ρ̄]`.
    SphereAndEven,
    /// Two circles: `RH[t₋^±, t₊^±] / ((t₋ − 1)(t₊ − 1))`.
    TwoCircles,
    /// A circle and an odd sphere of dimension ≥ 3: `RH[t^±, ρ̄] / (ρ̄t − ρ̄)`.
    CircleAndSphere,
    /// Two odd spheres of dimension ≥ 3: `RH[ρ̄₋, ρ̄₊] / (ρ̄₋ρ̄₊)`.
    TwoSpheres,
}

/// Generator `g` of the kernel of restriction on one odd side.
#[derive(Clone, Debug, Serialize)]
pub struct OddSide {
    pub side: Side,
    pub sphere_dim: usize,
    /// `t − 1` or `ρ − dim ρ`, as a character of `K`.
    pub generator: String,
    /// The circle character `t` (dimension 1) or the highest weight of `ρ`.
    pub weight: Weight,
    /// Every RH window basis element is a restriction from this side.
    pub surjective: bool,
    pub uncovered: Vec<Weight>,
    /// Kernel of the restriction equals `g · RK` within the window.
    pub kernel_is_principal: bool,
    pub kernel_rank: usize,
    pub kernel_witness: Option<Vec<String>>,
    #[serde(skip)]
    pub generator_poly: LaurentPoly,
}

#[derive(Clone, Debug, Serialize)]
pub struct OddCaseReport {
    pub shape: OddShape,
    pub sides: Vec<OddSide>,
    pub k0_rank: usize,
    pub k1_trivial: bool,
    /// `rank K⁰ = rank RH + Σ rank ker` (the splitting of `K⁰`).
    pub k0_splits: bool,
    /// For two odd sides: `(g₋, 0)` and `(0, g₊)` lie in `K⁰` and multiply to zero.
    pub cross_relation: Option<bool>,
    pub certified: bool,
}

/// Classifies the diagram and certifies the matching presentation within the window.
pub fn odd_case(d: &Diagram, w: &DiagramWindows) -> Result<(KPresentation, OddCaseReport)> {
    let odd: Vec<Side> = [Side::Minus, Side::Plus].into_iter().filter(|&s| d.sphere_dim(s) % 2 == 1).collect();
    let shape = match odd.as_slice() {
        [] => return Err(Error::Precondition("no odd-dimensional sphere in the diagram".into())),
        [s] => {
            if d.sphere_dim(*s) == 1 {
                OddShape::CircleAndEven
            } else {
                OddShape::SphereAndEven
            }
        }
        _ => match (d.sphere_dim(Side::Minus) == 1, d.sphere_dim(Side::Plus) == 1) {
            (true, true) => OddShape::TwoCircles,
            (false, false) => OddShape::TwoSpheres,
            _ => OddShape::CircleAndSphere,
        },
    };
    let pres = mv_presentation_without_action(d, w)?;
    let mut sides = Vec::new();
    for &s in &odd {
        sides.push(odd_side(d, &pres, s)?);
    }
    let k1_trivial = pres.k1.is_trivial();
    let kernel_total: usize = sides.iter().map(|s| s.kernel_rank).sum();
    // with one odd side, the even side restricts injectively and K⁰ ≅ RK_even ⊕ ker
    let k0_splits = match odd.as_slice() {
        [s] => {
            let even = s.other();
            let f_even = match even {
                Side::Minus => &pres.f_minus,
                Side::Plus => &pres.f_plus,
            };
            rank(f_even) == f_even.cols() && pres.k0_rank() == f_even.cols() + kernel_total
        }
        _ => pres.k0_rank() == pres.rh.len() + kernel_total,
    };
    let cross_relation = (odd.len() == 2).then(|| {
        // (g₋, 0) and (0, g₊) restrict to zero on both sides, and their product is
        // (g₋ · 0, 0 · g₊) = 0
        sides.iter().all(|s| {
            let map = d.to_h(s.side);
            restrict(&s.generator_poly, map).map(|p| p.is_zero()).unwrap_or(false)
        })
    });
    let certified = k1_trivial
        && k0_splits
        && sides.iter().all(|s| s.surjective && s.kernel_is_principal)
        && cross_relation.unwrap_or(true);
    let report =
        OddCaseReport { shape, sides, k0_rank: pres.k0_rank(), k1_trivial, k0_splits, cross_relation, certified };
    Ok((pres, report))
}

fn odd_side(d: &Diagram, pres: &KPresentation, side: Side) -> Result<OddSide> {
    let k = d.k(side);
    let map = d.to_h(side);
    let (basis, f) = match side {
        Side::Minus => (&pres.rk_minus, &pres.f_minus),
        Side::Plus => (&pres.rk_plus, &pres.f_plus),
    };
    let dim = d.sphere_dim(side);
    let (weight, generator_poly, generator) = if dim == 1 {
        let t = circle_character(map)?;
        let p = LaurentPoly::monomial(t.clone(), BigInt::from(1)).sub(&LaurentPoly::one(k.rank()))?;
        (t.clone(), p, format!("t − 1 with t = x{t:?}"))
    } else {
        let hw = d.rho[side as usize].clone().ok_or_else(|| {
            Error::Precondition(format!(
                "{}-dimensional sphere {}/{} needs a representation trivial on {}",
                dim, k.name, d.h.name, d.h.name
            ))
        })?;
        let chi = weyl_character(&k.datum, &k.weyl, &hw)?;
        let dimension = chi.coefficient_sum();
        let r = restrict(&chi, map)?;
        if r != LaurentPoly::one(d.h.rank()).scale(&dimension) {
            return Err(Error::Precondition(format!(
                "representation with highest weight {hw:?} is not trivial on {}",
                d.h.name
            )));
        }
        let p = chi.sub(&LaurentPoly::one(k.rank()).scale(&dimension))?;
        (hw.clone(), p, format!("ρ − {dimension} with ρ of highest weight {hw:?}"))
    };

    // surjectivity onto the RH window
    let mut uncovered = Vec::new();
    for i in 0..pres.rh.len() {
        let mut e = vec![BigInt::zero(); pres.rh.len()];
        e[i] = BigInt::from(1);
        if solve_integer(f, &e).is_none() {
            uncovered.push(pres.rh.reps[i].clone());
        }
    }

    // kernel versus g · RK, both inside the K window
    let kernel = kernel_basis(f);
    let mut products = Vec::new();
    for j in 0..basis.len() {
        let p = generator_poly.mul(&basis.element(j))?;
        if let Ok(c) = basis.coordinates(&p) {
            products.push(c);
        }
    }
    let span = IntMatrix::from_columns(basis.len(), &products);
    let kernel_is_principal = same_lattice(&kernel, &span);
    let kernel_witness = if kernel_is_principal {
        None
    } else {
        (0..kernel.cols())
            .find(|&j| solve_integer(&span, &kernel.column(j)).is_none())
            .map(|j| kernel.column(j).iter().map(|x| x.to_string()).collect())
    };
    Ok(OddSide {
        side,
        sphere_dim: dim,
        generator,
        weight,
        surjective: uncovered.is_empty(),
        uncovered,
        kernel_is_principal,
        kernel_rank: kernel.cols(),
        kernel_witness,
        generator_poly,
    })
}

/// Generator of the rank-one kernel of `X(K) → X(H)`, chosen lexicographically positive.
pub fn circle_character(map: &crate::charring::TorusMap) -> Result<Weight> {
    let ker = kernel_basis(&map.to_int_matrix());
    if ker.cols() != 1 {
        return Err(Error::Precondition(format!("restriction kernel has rank {}, a circle needs rank 1", ker.cols())));
    }
    let mut t: Weight = ker
        .column(0)
        .iter()
        .map(|x| i64::try_from(x).map_err(|_| Error::Unsupported("circle character overflows".into())))
        .collect::<Result<_>>()?;
    if t.iter().find(|x| **x != 0).is_some_and(|x| *x < 0) {
        t.iter_mut().for_each(|x| *x = -*x);
    }
    Ok(t)
}
