//! Circle orbit spaces: a finite-order automorphism `φ` of `RK`, its fixed subring, and the
//! twisted cokernel `coker(1 − φ)`, which is `K¹` of the mapping torus.
//!
//! Coefficients are `Z[1/base]`, with `base = 1` meaning the integers.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::charring::{LaurentPoly, OrbitBasis, TermOrder, Window};
use crate::error::{Error, Result};
use crate::ktheory::ActionEntry;
use crate::rootsys::{apply, enumerate_weyl, identity, mat_mul, RootDatum, Weight, WeylGroup};
use crate::zlinalg::{kernel_basis, localized_cokernel, strip_factors, AbelianPresentation, ColumnEchelon, IntMatrix};

/// `K` with the automorphism of `X(T_K)` induced by conjugation, and its order modulo `W_K`.
#[derive(Clone, Debug)]
pub struct TwistedSetup {
    pub name: String,
    pub datum: RootDatum,
    pub weyl: WeylGroup,
    /// Row-major `rank × rank`, acting on weight coordinates.
    pub automorphism: Vec<i64>,
    pub order: usize,
}

impl TwistedSetup {
    /// Checks that the automorphism normalizes `W`, and that `order` is the least power lying in `W`.
    pub fn new(name: &str, datum: RootDatum, automorphism: Vec<Vec<i64>>, order: usize) -> Result<Self> {
        let r = datum.rank;
        if automorphism.len() != r || automorphism.iter().any(|row| row.len() != r) {
            return Err(Error::DimensionMismatch(format!("automorphism must be {r}×{r}")));
        }
        if order == 0 {
            return Err(Error::Semantic("twist order must be positive".into()));
        }
        let a: Vec<i64> = automorphism.into_iter().flatten().collect();
        if r > 0 && !IntMatrix::from_fn(r, r, |i, j| a[i * r + j].into()).determinant().abs().is_one() {
            return Err(Error::Semantic("automorphism is not invertible over Z".into()));
        }
        let weyl = enumerate_weyl(&datum)?;
        let right: BTreeSet<Vec<i64>> = weyl.elements().iter().map(|w| mat_mul(r, w, &a)).collect();
        for &g in &weyl.generators {
            if !right.contains(&mat_mul(r, &a, weyl.element(g))) {
                return Err(Error::Semantic("automorphism does not normalize the Weyl group".into()));
            }
        }
        let mut p = identity(r);
        for k in 1..=order {
            p = mat_mul(r, &p, &a);
            if weyl.contains(&p) {
                if k != order {
                    return Err(Error::Semantic(format!("the {k}-th power already lies in the Weyl group")));
                }
                return Ok(TwistedSetup { name: name.to_string(), datum, weyl, automorphism: a, order });
            }
        }
        Err(Error::Semantic(format!("the {order}-th power of the automorphism is not in the Weyl group")))
    }

    pub fn rank(&self) -> usize {
        self.datum.rank
    }

    pub fn act(&self, x: &[i64]) -> Weight {
        apply(&self.automorphism, x)
    }

    fn check_window(&self, w: &Window) -> Result<()> {
        if !w.is_stable_under(&self.weyl) {
            return Err(Error::WindowNotStable(format!("window is not closed under W({})", self.name)));
        }
        if w.weights.iter().any(|x| !w.contains(&self.act(x))) {
            return Err(Error::WindowNotStable("window is not closed under the automorphism".into()));
        }
        Ok(())
    }

    fn basis(&self, w: &Window) -> Result<OrbitBasis> {
        self.check_window(w)?;
        OrbitBasis::new(&self.weyl, &w.weights, &TermOrder::for_datum(&self.datum))
    }

    /// The permutation of orbit sums induced by the automorphism.
    fn twist_matrix(&self, basis: &OrbitBasis) -> IntMatrix {
        let n = basis.len();
        let mut m = IntMatrix::zeros(n, n);
        for j in 0..n {
            let i = basis.orbit_index(&self.act(&basis.reps[j])).expect("window is stable");
            m[(i, j)] = BigInt::one();
        }
        m
    }
}

fn one_minus(m: &IntMatrix) -> IntMatrix {
    IntMatrix::from_fn(m.rows(), m.cols(), |i, j| BigInt::from(u8::from(i == j)) - &m[(i, j)])
}

/// Coordinates (in the orbit basis) of a Z-basis of the fixed invariants.
fn fixed_coordinates(s: &TwistedSetup, basis: &OrbitBasis) -> Vec<Vec<BigInt>> {
    let mut seen = vec![false; basis.len()];
    let mut out = Vec::new();
    for j in 0..basis.len() {
        if seen[j] {
            continue;
        }
        let mut c = vec![BigInt::zero(); basis.len()];
        let mut x = basis.reps[j].clone();
        loop {
            let i = basis.orbit_index(&x).expect("window is stable");
            if seen[i] {
                break;
            }
            seen[i] = true;
            c[i] = BigInt::one();
            x = s.act(&x);
        }
        out.push(c);
    }
    out
}

/// Z-basis of the automorphism-fixed `W`-invariants supported in the window.
pub fn fixed_subring_basis(s: &TwistedSetup, w: &Window) -> Result<Vec<LaurentPoly>> {
    let basis = s.basis(w)?;
    Ok(fixed_coordinates(s, &basis).iter().map(|c| basis.combination(c)).collect())
}

/// `coker(1 − φ)` on the window span, with its fixed-ring action.
#[derive(Clone, Debug)]
pub struct TwistedCokernel {
    pub basis: OrbitBasis,
    pub base: i64,
    pub presentation: AbelianPresentation,
    /// Orbit-basis rows carrying generators: free rows, then torsion rows that survive localization.
    pub rows: Vec<usize>,
    pub orders: Vec<BigInt>,
    /// Coordinates of the fixed-subring basis.
    pub fixed: Vec<Vec<BigInt>>,
    /// `(fixed basis index, generator index) → product`.
    pub action_table: BTreeMap<(usize, usize), ActionEntry>,
    echelon: ColumnEchelon,
    kernel_rank: usize,
}

impl TwistedCokernel {
    pub fn generator_count(&self) -> usize {
        self.rows.len()
    }

    pub fn representatives(&self) -> Vec<&Weight> {
        self.rows.iter().map(|&r| &self.basis.reps[r]).collect()
    }

    pub fn generator_index(&self, x: &[i64]) -> Option<usize> {
        let row = self.basis.orbit_index(x)?;
        self.rows.iter().position(|&r| r == row)
    }

    pub fn unit(&self, j: usize) -> Vec<BigInt> {
        let mut e = vec![BigInt::zero(); self.generator_count()];
        e[j] = BigInt::one();
        e
    }

    pub fn lift(&self, g: &[BigInt]) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.basis.len()];
        for (&r, c) in self.rows.iter().zip(g) {
            v[r] = c.clone();
        }
        v
    }

    pub fn reduce(&self, coords: &[BigInt]) -> Vec<BigInt> {
        let v = self.echelon.reduce(coords);
        self.rows.iter().map(|&r| v[r].clone()).collect()
    }

    /// `f · x` for a fixed invariant `f`, reduced; fails if the product leaves the window.
    pub fn act(&self, f: &LaurentPoly, g: &[BigInt]) -> Result<Vec<BigInt>> {
        let p = f.mul(&self.basis.combination(&self.lift(g)))?;
        Ok(self.reduce(&self.basis.coordinates(&p)?))
    }

    /// The largest representative with a nonzero coefficient, and that coefficient.
    pub fn leading_term<'a>(&'a self, g: &'a [BigInt]) -> Option<(&'a Weight, &'a BigInt)> {
        // rows are sorted ascending in the term order, so the last nonzero entry leads
        self.rows
            .iter()
            .zip(g)
            .filter(|(_, c)| !c.is_zero())
            .max_by_key(|(&r, _)| r)
            .map(|(&r, c)| (&self.basis.reps[r], c))
    }

    /// Rank of `ker(1 − φ)`, which equals the number of fixed basis elements.
    pub fn kernel_rank(&self) -> usize {
        self.kernel_rank
    }
}

/// Cokernel of `1 − φ` over `Z[1/base]`, with coset representatives and the action table.
pub fn twisted_cokernel(s: &TwistedSetup, w: &Window, base: i64) -> Result<TwistedCokernel> {
    let basis = s.basis(w)?;
    let n = basis.len();
    let twist = s.twist_matrix(&basis);
    let diff = one_minus(&twist);
    let presentation = localized_cokernel(&diff, base)?;
    let natural: Vec<usize> = (0..n).collect();
    let echelon = ColumnEchelon::new(&diff.columns(), n, &natural);
    let mut rows = echelon.free_rows();
    let mut orders = vec![BigInt::zero(); rows.len()];
    let l = BigInt::from(base);
    for (r, p) in echelon.torsion_rows() {
        if !strip_factors(&p, &l).is_one() {
            rows.push(r);
            orders.push(p);
        }
    }
    let fixed = fixed_coordinates(s, &basis);
    let kernel_rank = kernel_basis(&diff).cols();
    let mut out = TwistedCokernel {
        basis,
        base,
        presentation,
        rows,
        orders,
        fixed,
        action_table: BTreeMap::new(),
        echelon,
        kernel_rank,
    };
    for i in 0..out.fixed.len() {
        let f = out.basis.combination(&out.fixed[i]);
        for j in 0..out.generator_count() {
            let entry = match out.act(&f, &out.unit(j)) {
                Ok(v) => ActionEntry::Value(v),
                Err(Error::WindowEscape(_)) => ActionEntry::Escaped,
                Err(e) => return Err(e),
            };
            out.action_table.insert((i, j), entry);
        }
    }
    Ok(out)
}

/// `K*` of the mapping torus within a window: the fixed ring in degree 0 and a certificate that
/// degree 1 is free cyclic over it.
#[derive(Clone, Debug, Serialize)]
pub struct KCircleReport {
    pub order: usize,
    pub base: i64,
    pub window_weights: usize,
    pub fixed_rank: usize,
    pub kernel_matches_fixed: bool,
    pub cokernel: String,
    pub generator: Weight,
    /// Fixed basis elements whose product with the generator stays in the window.
    pub products: usize,
    pub determinant: String,
    /// Invariant factors of the products matrix that are not units in the coefficients.
    pub obstruction: Vec<String>,
    pub certified: bool,
}

/// The answer over `Z[1/ℓ]` with `ℓ` the order of the twist.
pub fn kcircle(s: &TwistedSetup, w: &Window) -> Result<KCircleReport> {
    kcircle_over(s, w, s.order as i64)
}

/// Same certificate over `Z[1/base]`; `base = 1` tests integral freeness.
pub fn kcircle_over(s: &TwistedSetup, w: &Window, base: i64) -> Result<KCircleReport> {
    let tc = twisted_cokernel(s, w, base)?;
    let zero = vec![0; s.rank()];
    let g = tc
        .generator_index(&zero)
        .ok_or_else(|| Error::Precondition("the window does not contain the trivial weight".into()))?;
    let start = tc.unit(g);
    let mut cols = Vec::new();
    for c in &tc.fixed {
        match tc.act(&tc.basis.combination(c), &start) {
            Ok(v) => cols.push(v),
            Err(Error::WindowEscape(_)) => {}
            Err(e) => return Err(e),
        }
    }
    let products = cols.len();
    let free = tc.presentation.free_rank;
    let square = products == tc.generator_count() && products == free && tc.presentation.torsion.is_empty();
    let l = BigInt::from(base);
    let (det, obstruction) = if square && products > 0 {
        let m = IntMatrix::from_columns(products, &cols);
        let coker = localized_cokernel(&m, base)?;
        let mut obs: Vec<String> = coker.torsion.iter().map(|t| t.to_string()).collect();
        obs.extend(std::iter::repeat_n("0".to_string(), coker.free_rank));
        (m.determinant(), obs)
    } else if square {
        (BigInt::one(), Vec::new())
    } else {
        (BigInt::zero(), vec!["window too small for a square certificate".to_string()])
    };
    let certified = square && strip_factors(&det, &l).abs().is_one();
    Ok(KCircleReport {
        order: s.order,
        base,
        window_weights: w.len(),
        fixed_rank: tc.fixed.len(),
        kernel_matches_fixed: tc.kernel_rank() == tc.fixed.len(),
        cokernel: tc.presentation.to_string(),
        generator: zero,
        products,
        determinant: det.to_string(),
        obstruction,
        certified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charring::make_window;
    use crate::rootsys::{build_root_datum, LatticeChoice};
    use proptest::prelude::*;

    fn so2() -> TwistedSetup {
        let t = build_root_datum("T1", LatticeChoice::Standard).unwrap();
        TwistedSetup::new("SO(2)", t, vec![vec![-1]], 2).unwrap()
    }

    fn line(r: i64) -> Window {
        Window::from_weights(1, (-r..=r).map(|k| vec![k]))
    }

    fn t(k: i64) -> LaurentPoly {
        LaurentPoly::monomial(vec![k], BigInt::one())
    }

    #[test]
    fn so2_fixed_ring() {
        let b = fixed_subring_basis(&so2(), &line(3)).unwrap();
        let expect: Vec<LaurentPoly> =
            std::iter::once(t(0)).chain((1..=3).map(|k| t(k).add(&t(-k)).unwrap())).collect();
        assert_eq!(b.len(), expect.len());
        assert!(expect.iter().all(|p| b.contains(p)));
    }

    #[test]
    fn trivial_twist_fixes_everything() {
        let t2 = build_root_datum("A2", LatticeChoice::Weight).unwrap();
        let s = TwistedSetup::new("SU(3)", t2.clone(), vec![vec![1, 0], vec![0, 1]], 1).unwrap();
        let w = make_window(&t2, &[("W", &s.weyl)], 3).unwrap();
        let b = fixed_subring_basis(&s, &w).unwrap();
        assert_eq!(b.len(), OrbitBasis::new(&s.weyl, &w.weights, &TermOrder::for_datum(&t2)).unwrap().len());
        let r = kcircle(&s, &w).unwrap();
        assert!(r.certified);
        assert_eq!(r.determinant, "1");
    }

    #[test]
    fn so2_cokernel_representatives_and_action() {
        let tc = twisted_cokernel(&so2(), &line(6), 1).unwrap();
        let reps: Vec<Weight> = tc.representatives().into_iter().cloned().collect();
        assert_eq!(reps, (0..=6).map(|k| vec![k]).collect::<Vec<_>>());
        let q = t(1).add(&t(-1)).unwrap();
        let one = tc.unit(tc.generator_index(&[0]).unwrap());
        let two_t: Vec<BigInt> = tc.unit(tc.generator_index(&[1]).unwrap()).iter().map(|x| x * 2).collect();
        assert_eq!(tc.act(&q, &one).unwrap(), two_t);
        let mut x = tc.unit(tc.generator_index(&[1]).unwrap());
        for n in 1..=5 {
            x = tc.act(&q, &x).unwrap();
            let (lead, c) = tc.leading_term(&x).unwrap();
            assert_eq!((lead.clone(), c.clone()), (vec![n + 1], BigInt::one()));
        }
        // [t] · q → [t² + 1]
        let y = tc.act(&q, &tc.unit(tc.generator_index(&[1]).unwrap())).unwrap();
        let mut e = tc.unit(tc.generator_index(&[2]).unwrap());
        e[tc.generator_index(&[0]).unwrap()] = BigInt::one();
        assert_eq!(y, e);
    }

    #[test]
    fn so2_free_only_after_inverting_two() {
        let s = so2();
        let w = line(5);
        let loc = kcircle(&s, &w).unwrap();
        assert!(loc.certified, "{loc:?}");
        assert_eq!(loc.base, 2);
        let int = kcircle_over(&s, &w, 1).unwrap();
        assert!(!int.certified);
        assert!(int.obstruction.iter().all(|f| f == "2"));
        assert_eq!(int.obstruction.len(), 5);
    }

    #[test]
    fn rejects_bad_setups() {
        let t = build_root_datum("T1", LatticeChoice::Standard).unwrap();
        assert!(TwistedSetup::new("SO(2)", t.clone(), vec![vec![-1]], 3).is_err());
        assert!(TwistedSetup::new("SO(2)", t.clone(), vec![vec![2]], 1).is_err());
        let a1 = build_root_datum("A1", LatticeChoice::Weight).unwrap();
        // −1 is already in the Weyl group of SU(2)
        assert!(TwistedSetup::new("SU(2)", a1.clone(), vec![vec![-1]], 2).is_err());
        assert!(TwistedSetup::new("SU(2)", a1, vec![vec![-1]], 1).is_ok());
        let s = so2();
        let lopsided = Window::from_weights(1, (-1..=2).map(|k| vec![k]));
        assert!(matches!(fixed_subring_basis(&s, &lopsided), Err(Error::WindowNotStable(_))));
    }

    fn su3_conjugation() -> (TwistedSetup, RootDatum) {
        // λ ↦ −w₀λ swaps the two fundamental weights
        let a2 = build_root_datum("A2", LatticeChoice::Weight).unwrap();
        (TwistedSetup::new("SU(3)", a2.clone(), vec![vec![0, 1], vec![1, 0]], 2).unwrap(), a2)
    }

    #[test]
    fn su3_outer_twist() {
        let (s, a2) = su3_conjugation();
        let w = make_window(&a2, &[("W", &s.weyl)], 4).unwrap();
        let tc = twisted_cokernel(&s, &w, 1).unwrap();
        assert!(tc.presentation.torsion.is_empty());
        assert_eq!(tc.kernel_rank(), tc.fixed.len());
        assert_eq!(tc.presentation.free_rank, tc.fixed.len());
        let r = kcircle(&s, &w).unwrap();
        assert!(r.kernel_matches_fixed);
    }

    proptest! {
        #[test]
        fn kernel_of_twist_is_fixed_subspace(radius in 0i64..8) {
            let s = so2();
            let tc = twisted_cokernel(&s, &line(radius), 1).unwrap();
            prop_assert_eq!(tc.kernel_rank(), tc.fixed.len());
            prop_assert_eq!(tc.presentation.free_rank, tc.fixed.len());
            let loc = twisted_cokernel(&s, &line(radius), 2).unwrap();
            let n = tc.basis.len();
            prop_assert_eq!(n, tc.fixed.iter().map(|c| c.iter().filter(|x| x.is_one()).count()).sum::<usize>());
            let diff = one_minus(&s.twist_matrix(&tc.basis));
            prop_assert_eq!(loc.presentation, localized_cokernel(&diff, 2).unwrap());
        }

        #[test]
        fn fixed_elements_are_fixed(radius in 0i64..4) {
            let (s, a2) = su3_conjugation();
            let w = make_window(&a2, &[("W", &s.weyl)], radius).unwrap();
            for f in fixed_subring_basis(&s, &w).unwrap() {
                prop_assert_eq!(f.weyl_act(&s.automorphism).unwrap(), f);
            }
        }
    }
}
