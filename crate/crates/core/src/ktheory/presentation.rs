//! The Mayer–Vietoris presentation of `K⁰` and `K¹` of a double mapping cylinder, truncated to
//! weight windows, and the `K⁰`-module structure on `K¹`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::diagram::{Diagram, DiagramWindows, Side};
use crate::charring::{restrict, LaurentPoly, OrbitBasis, TermOrder, TorusMap};
use crate::error::{Error, Result};
use crate::rootsys::Weight;
use crate::zlinalg::{cokernel, kernel_basis, AbelianPresentation, ColumnEchelon, IntMatrix};

/// One entry of the action table: a reduced `K¹` element, or a product that left the window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ActionEntry {
    Value(Vec<BigInt>),
    Escaped,
}

/// `K⁰` and `K¹` of a diagram within a window.
#[derive(Clone, Debug)]
pub struct KPresentation {
    pub rh: OrbitBasis,
    pub rk_minus: OrbitBasis,
    pub rk_plus: OrbitBasis,
    /// Restrictions `RK± → RH` in orbit-sum coordinates (`|rh| × |rk±|`).
    pub f_minus: IntMatrix,
    pub f_plus: IntMatrix,
    /// Columns are a Z-basis of the fiber product, in coordinates `(RK⁻ ; RK⁺)`.
    pub k0: IntMatrix,
    pub k1: AbelianPresentation,
    /// Echelon basis of the image `RK⁻|_H + RK⁺|_H` with lowest terms eliminated first.
    pub image: ColumnEchelon,
    /// RH basis rows carrying `K¹` generators: the free rows, then the torsion rows.
    pub k1_rows: Vec<usize>,
    /// Order of each generator: zero for free generators.
    pub k1_orders: Vec<BigInt>,
    /// `(k0 index, k1 generator index) → k0 · k1`.
    pub action_table: BTreeMap<(usize, usize), ActionEntry>,
    minus_to_h: TorusMap,
}

/// Element of `K*` split by degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedElement {
    pub even: Vec<BigInt>,
    pub odd: Vec<BigInt>,
}

/// Builds the presentation and fills the action table for every basis pair.
pub fn mv_presentation(d: &Diagram, w: &DiagramWindows) -> Result<KPresentation> {
    let mut pres = mv_presentation_without_action(d, w)?;
    for i in 0..pres.k0.cols() {
        for j in 0..pres.k1_rows.len() {
            let mut e = vec![BigInt::zero(); pres.k1_rows.len()];
            e[j] = BigInt::from(1);
            let entry = match k1_module_action(&pres, &pres.k0.column(i), &e) {
                Ok(v) => ActionEntry::Value(v),
                Err(Error::WindowEscape(_)) => ActionEntry::Escaped,
                Err(e) => return Err(e),
            };
            pres.action_table.insert((i, j), entry);
        }
    }
    Ok(pres)
}

/// The presentation with an empty action table.
pub fn mv_presentation_without_action(d: &Diagram, w: &DiagramWindows) -> Result<KPresentation> {
    for (side, k) in [(Side::Minus, &d.k_minus), (Side::Plus, &d.k_plus)] {
        if !w.k(side).is_stable_under(&k.weyl) {
            return Err(Error::WindowNotStable(format!("{} window", k.name)));
        }
    }
    if !w.h.is_stable_under(&d.h.weyl) {
        return Err(Error::WindowNotStable(format!("{} window", d.h.name)));
    }
    if d.is_full_rank() {
        for k in [&d.k_minus, &d.k_plus] {
            if !w.h.is_stable_under(&k.weyl) {
                return Err(Error::WindowNotStable(format!("window is not closed under W({})", k.name)));
            }
        }
    }
    let order = term_order(d);
    let rh = OrbitBasis::new(&d.h.weyl, &w.h.weights, &order)?;
    let rk_minus = OrbitBasis::new(&d.k_minus.weyl, &w.k_minus.weights, &TermOrder::for_datum(&d.k_minus.datum))?;
    let rk_plus = OrbitBasis::new(&d.k_plus.weyl, &w.k_plus.weights, &TermOrder::for_datum(&d.k_plus.datum))?;
    let f_minus = restriction_matrix(&rk_minus, &rh, d.to_h(Side::Minus))?;
    let f_plus = restriction_matrix(&rk_plus, &rh, d.to_h(Side::Plus))?;

    let k0 = kernel_basis(&f_minus.hstack(&f_plus.neg()));
    let middle = f_minus.hstack(&f_plus);
    let k1 = cokernel(&middle);
    let natural: Vec<usize> = (0..rh.len()).collect();
    let image = ColumnEchelon::new(&middle.columns(), rh.len(), &natural);
    let mut k1_rows = image.free_rows();
    let mut k1_orders = vec![BigInt::zero(); k1_rows.len()];
    for (r, p) in image.torsion_rows() {
        k1_rows.push(r);
        k1_orders.push(p);
    }
    Ok(KPresentation {
        rh,
        rk_minus,
        rk_plus,
        f_minus,
        f_plus,
        k0,
        k1,
        image,
        k1_rows,
        k1_orders,
        action_table: BTreeMap::new(),
        minus_to_h: d.to_h(Side::Minus).clone(),
    })
}

/// Height for the ambient group in full rank, otherwise for `H`; then lexicographic.
fn term_order(d: &Diagram) -> TermOrder {
    if d.is_full_rank() {
        TermOrder::for_datum(&d.g.datum)
    } else {
        TermOrder::for_datum(&d.h.datum)
    }
}

fn restriction_matrix(src: &OrbitBasis, dst: &OrbitBasis, map: &TorusMap) -> Result<IntMatrix> {
    let cols = (0..src.len()).map(|j| dst.coordinates(&restrict(&src.element(j), map)?)).collect::<Result<Vec<_>>>()?;
    Ok(IntMatrix::from_columns(dst.len(), &cols))
}

impl KPresentation {
    pub fn k0_rank(&self) -> usize {
        self.k0.cols()
    }

    pub fn k1_generator_count(&self) -> usize {
        self.k1_rows.len()
    }

    pub fn image_rank(&self) -> usize {
        self.image.rank()
    }

    /// Coset representative weights of the `K¹` generators.
    pub fn k1_representatives(&self) -> Vec<&Weight> {
        self.k1_rows.iter().map(|&r| &self.rh.reps[r]).collect()
    }

    /// The two components of the `i`-th `K⁰` basis element as characters of `K⁻` and `K⁺`.
    pub fn k0_pair(&self, i: usize) -> (LaurentPoly, LaurentPoly) {
        self.split_k0(&self.k0.column(i))
    }

    fn split_k0(&self, coords: &[BigInt]) -> (LaurentPoly, LaurentPoly) {
        let n = self.rk_minus.len();
        (self.rk_minus.combination(&coords[..n]), self.rk_plus.combination(&coords[n..]))
    }

    /// The RH element represented by generator coordinates.
    pub fn k1_lift(&self, k1: &[BigInt]) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.rh.len()];
        for (&r, c) in self.k1_rows.iter().zip(k1) {
            v[r] = c.clone();
        }
        v
    }

    /// Reduces an RH coordinate vector modulo the image to generator coordinates.
    pub fn reduce(&self, rh_coords: &[BigInt]) -> Vec<BigInt> {
        let v = self.image.reduce(rh_coords);
        self.k1_rows.iter().map(|&r| v[r].clone()).collect()
    }

    /// Reduces an RH polynomial; fails if it is not supported in the window.
    pub fn reduce_poly(&self, p: &LaurentPoly) -> Result<Vec<BigInt>> {
        Ok(self.reduce(&self.rh.coordinates(p)?))
    }

    /// `r · σ` for an RH element `r` that is a restriction from both sides, reduced.
    pub fn act_restricted(&self, r: &LaurentPoly, k1: &[BigInt]) -> Result<Vec<BigInt>> {
        self.act_on_rh(r, &self.k1_lift(k1))
    }

    /// `r · v` reduced, for any RH window element `v` given in orbit-sum coordinates.
    pub fn act_on_rh(&self, r: &LaurentPoly, v: &[BigInt]) -> Result<Vec<BigInt>> {
        let prod = r.mul(&self.rh.combination(v))?;
        self.reduce_poly(&prod)
    }

    /// Whether two generator-coordinate vectors give the same `K¹` class.
    pub fn k1_equal(&self, a: &[BigInt], b: &[BigInt]) -> bool {
        let diff: Vec<BigInt> = self.k1_lift(a).iter().zip(self.k1_lift(b)).map(|(x, y)| x - y).collect();
        self.image.contains(&diff)
    }

    /// Product in `K* = K⁰ ⊕ K¹`; products of two odd elements vanish.
    ///
    /// The even-even part is not computed here (it would need the product in both RK±); it is
    /// returned as zero and callers use the components directly.
    pub fn odd_part_of_product(&self, x: &GradedElement, y: &GradedElement) -> Result<Vec<BigInt>> {
        let mut out = vec![BigInt::zero(); self.k1_generator_count()];
        for (even, odd) in [(&x.even, &y.odd), (&y.even, &x.odd)] {
            if even.iter().all(Zero::is_zero) || odd.iter().all(Zero::is_zero) {
                continue;
            }
            let v = k1_module_action(self, &self.k0.mul_vec(even), odd)?;
            for (o, c) in out.iter_mut().zip(v) {
                *o += c;
            }
        }
        Ok(self.reduce(&self.k1_lift(&out)))
    }

    /// Even part of a product of two odd elements, which is zero by construction.
    pub fn odd_times_odd(&self, _x: &[BigInt], _y: &[BigInt]) -> Vec<BigInt> {
        vec![BigInt::zero(); self.k0_rank()]
    }

    /// `rank K⁰ + rank image = rank RK⁻ + rank RK⁺` in the window.
    pub fn is_exact(&self) -> bool {
        self.k0_rank() + self.image_rank() == self.rk_minus.len() + self.rk_plus.len()
    }

    /// Every `K⁰` basis pair restricts to the same RH element.
    pub fn fiber_equation_holds(&self) -> bool {
        (0..self.k0_rank()).all(|i| {
            let c = self.k0.column(i);
            let n = self.rk_minus.len();
            self.f_minus.mul_vec(&c[..n]) == self.f_plus.mul_vec(&c[n..])
        })
    }
}

/// `(ρ₋, ρ₊) · σ̄ = overline(ρ₋|_H · σ)`, with the `K⁰` element given in `(RK⁻ ; RK⁺)`
/// coordinates and the `K¹` element in generator coordinates.
pub fn k1_module_action(pres: &KPresentation, k0_elem: &[BigInt], k1_elem: &[BigInt]) -> Result<Vec<BigInt>> {
    if k0_elem.len() != pres.rk_minus.len() + pres.rk_plus.len() || k1_elem.len() != pres.k1_generator_count() {
        return Err(Error::DimensionMismatch("element does not match the presentation".into()));
    }
    let (rho_minus, _) = pres.split_k0(k0_elem);
    let r = restrict(&rho_minus, &pres.minus_to_h)?;
    pres.act_restricted(&r, k1_elem)
}
