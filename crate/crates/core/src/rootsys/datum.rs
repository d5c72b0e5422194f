use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::frames::{classical_frame, parse_label, FactorType};
use crate::error::{Error, Result};
use crate::zlinalg::rational::{q_from_i64, q_inverse, q_mul, q_to_scaled_i64};
use crate::zlinalg::IntMatrix;

/// A character-lattice vector in X-coordinates.
pub type Weight = Vec<i64>;

/// Upper bound on the number of roots or group elements produced by any closure.
pub const CLOSURE_BOUND: usize = 200_000;

/// Which lattice between root and weight lattice serves as X.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeChoice {
    Root,
    Weight,
    /// The lattice of the classical matrix group: SU, SO, Sp, G2, F4 and tori.
    Standard,
    /// Explicit basis, columns given in the ambient frame of the label.
    Explicit(Vec<Vec<i64>>),
}

/// Root datum realized inside an integer ambient frame.
///
/// Actual Euclidean coordinates are `ambient / scale`. The character lattice X is spanned by
/// the columns of `lattice_basis`; all weights, roots and Weyl matrices are written in that basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    pub label: String,
    pub rank: usize,
    pub ambient_dim: usize,
    pub scale: i64,
    pub lattice_basis: IntMatrix,
    pub simple_roots: Vec<Weight>,
    basis: Vec<Vec<i64>>,
    gram: Vec<Vec<i64>>,
    coroots: Vec<Weight>,
    positive: Vec<Weight>,
    height: Vec<i64>,
    to_x_num: Vec<Vec<i64>>,
    to_x_den: i64,
    simple_coord_num: Vec<Vec<i64>>,
    simple_coord_den: i64,
}

impl RootDatum {
    /// Builds and validates a datum from an ambient frame.
    ///
    /// `basis` lists the lattice basis vectors and `simple_roots` the simple roots, both in
    /// ambient coordinates.
    pub fn new(
        label: &str,
        ambient_dim: usize,
        scale: i64,
        basis: Vec<Vec<i64>>,
        simple_roots: Vec<Vec<i64>>,
    ) -> Result<Self> {
        if scale <= 0 {
            return Err(Error::InvalidRootData(format!("scale must be positive, got {scale}")));
        }
        if basis.iter().chain(&simple_roots).any(|v| v.len() != ambient_dim) {
            return Err(Error::InvalidRootData(format!("vectors must have ambient dimension {ambient_dim}")));
        }
        let rank = basis.len();
        let gram: Vec<Vec<i64>> = basis.iter().map(|a| basis.iter().map(|b| dot(a, b)).collect()).collect();
        let gram_q = q_from_i64(&gram);
        let Some(gram_inv) = q_inverse(&gram_q) else {
            return Err(Error::InvalidRootData("lattice basis is linearly dependent".into()));
        };
        // ambient -> X: x = (BᵀB)⁻¹ Bᵀ a
        let bt = q_from_i64(&basis);
        let to_x = q_mul(&gram_inv, &bt);
        let (to_x_num, to_x_den) =
            q_to_scaled_i64(&to_x).ok_or_else(|| Error::InvalidRootData("lattice basis entries too large".into()))?;

        let mut datum = RootDatum {
            label: label.to_string(),
            rank,
            ambient_dim,
            scale,
            lattice_basis: IntMatrix::from_columns(
                ambient_dim,
                &basis.iter().map(|c| crate::zlinalg::to_big(c)).collect::<Vec<_>>(),
            ),
            simple_roots: Vec::new(),
            basis,
            gram,
            coroots: Vec::new(),
            positive: Vec::new(),
            height: vec![0; rank],
            to_x_num,
            to_x_den,
            simple_coord_num: Vec::new(),
            simple_coord_den: 1,
        };

        let mut simple = Vec::with_capacity(simple_roots.len());
        for a in &simple_roots {
            let x = datum
                .from_ambient(a)
                .ok_or_else(|| Error::LatticeNotStable(format!("simple root {a:?} does not lie in the lattice")))?;
            simple.push(x);
        }
        datum.simple_roots = simple;
        datum.validate_cartan()?;
        datum.coroots = datum.simple_roots.iter().map(|a| datum.coroot_functional(a)).collect::<Result<_>>()?;

        // Coordinates with respect to the simple roots, for weights in their span.
        if !simple_roots.is_empty() {
            let s_rows: Vec<Vec<i64>> = simple_roots.clone();
            let sts =
                q_from_i64(&s_rows.iter().map(|a| s_rows.iter().map(|b| dot(a, b)).collect()).collect::<Vec<_>>());
            let sts_inv =
                q_inverse(&sts).ok_or_else(|| Error::InvalidRootData("simple roots are linearly dependent".into()))?;
            // c = (SᵀS)⁻¹ Sᵀ B x
            let stb: Vec<Vec<i64>> = s_rows.iter().map(|a| datum.basis.iter().map(|b| dot(a, b)).collect()).collect();
            let q = q_mul(&sts_inv, &q_from_i64(&stb));
            let (num, den) =
                q_to_scaled_i64(&q).ok_or_else(|| Error::InvalidRootData("simple-root coordinates overflow".into()))?;
            datum.simple_coord_num = num;
            datum.simple_coord_den = den;
        }

        datum.positive = datum.compute_positive_roots()?;
        let mut height = vec![0i64; rank];
        for a in &datum.positive {
            let c = datum.coroot_functional(a)?;
            for (h, ci) in height.iter_mut().zip(c) {
                *h += ci;
            }
        }
        datum.height = height;
        Ok(datum)
    }

    /// A rank-0 datum (the trivial group).
    pub fn trivial() -> Self {
        RootDatum::new("T0", 0, 1, vec![], vec![]).expect("trivial datum is valid")
    }

    /// Direct product; frames are concatenated with a common scale.
    pub fn product(label: &str, factors: &[RootDatum]) -> Result<Self> {
        let scale = factors.iter().fold(1i64, |acc, f| acc.lcm(&f.scale));
        let dim: usize = factors.iter().map(|f| f.ambient_dim).sum();
        let mut basis = Vec::new();
        let mut roots = Vec::new();
        let mut offset = 0;
        for f in factors {
            let k = scale / f.scale;
            let embed = |v: &[i64]| {
                let mut out = vec![0i64; dim];
                for (i, x) in v.iter().enumerate() {
                    out[offset + i] = x * k;
                }
                out
            };
            basis.extend(f.basis.iter().map(|b| embed(b)));
            roots.extend(f.simple_roots.iter().map(|r| embed(&f.to_ambient(r))));
            offset += f.ambient_dim;
        }
        RootDatum::new(label, dim, scale, basis, roots)
    }

    pub fn semisimple_rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn basis_vectors(&self) -> &[Vec<i64>] {
        &self.basis
    }

    /// Ambient coordinates of an X-vector.
    pub fn to_ambient(&self, x: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.ambient_dim];
        for (b, &c) in self.basis.iter().zip(x) {
            for (o, bi) in out.iter_mut().zip(b) {
                *o += bi * c;
            }
        }
        out
    }

    /// X-coordinates of an ambient vector, if it lies in the lattice.
    pub fn from_ambient(&self, a: &[i64]) -> Option<Weight> {
        if a.len() != self.ambient_dim {
            return None;
        }
        let mut x = Vec::with_capacity(self.rank);
        for row in &self.to_x_num {
            let s: i64 = row.iter().zip(a).map(|(r, v)| r * v).sum();
            if s % self.to_x_den != 0 {
                return None;
            }
            x.push(s / self.to_x_den);
        }
        (self.to_ambient(&x) == a).then_some(x)
    }

    /// Ambient inner product of two X-vectors (actual inner product times scale²).
    pub fn inner(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut s = 0;
        for (i, xi) in x.iter().enumerate() {
            if *xi == 0 {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                s += xi * self.gram[i][j] * yj;
            }
        }
        s
    }

    pub fn norm2(&self, x: &[i64]) -> i64 {
        self.inner(x, x)
    }

    /// Integer row vector `c` with `⟨x, α^∨⟩ = c·x`; fails if α's reflection does not preserve X.
    pub fn coroot_functional(&self, alpha: &[i64]) -> Result<Vec<i64>> {
        let n = self.norm2(alpha);
        if n == 0 {
            return Err(Error::InvalidRootData("zero root".into()));
        }
        let mut c = Vec::with_capacity(self.rank);
        for j in 0..self.rank {
            let num = 2 * (0..self.rank).map(|k| self.gram[j][k] * alpha[k]).sum::<i64>();
            if num % n != 0 {
                return Err(Error::LatticeNotStable(format!("reflection in {alpha:?} does not preserve the lattice")));
            }
            c.push(num / n);
        }
        Ok(c)
    }

    /// `⟨x, α^∨⟩` for an arbitrary root α.
    pub fn pairing(&self, x: &[i64], alpha: &[i64]) -> Result<i64> {
        Ok(dot(&self.coroot_functional(alpha)?, x))
    }

    /// Pairings of x with the simple coroots.
    pub fn simple_pairings(&self, x: &[i64]) -> Vec<i64> {
        self.coroots.iter().map(|c| dot(c, x)).collect()
    }

    pub fn simple_coroots(&self) -> &[Weight] {
        &self.coroots
    }

    /// Reflection matrix (row-major rank×rank) in X-coordinates.
    pub fn reflection_matrix(&self, alpha: &[i64]) -> Result<Vec<i64>> {
        let c = self.coroot_functional(alpha)?;
        let n = self.rank;
        let mut m = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                m[i * n + j] = i64::from(i == j) - alpha[i] * c[j];
            }
        }
        Ok(m)
    }

    pub fn reflect(&self, x: &[i64], alpha: &[i64]) -> Result<Weight> {
        let p = self.pairing(x, alpha)?;
        Ok(x.iter().zip(alpha).map(|(a, b)| a - p * b).collect())
    }

    pub fn simple_reflections(&self) -> Vec<Vec<i64>> {
        self.simple_roots.iter().map(|a| self.reflection_matrix(a).expect("validated at construction")).collect()
    }

    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        self.simple_roots.iter().map(|a| self.coroots.iter().map(|c| dot(c, a)).collect()).collect()
    }

    fn validate_cartan(&self) -> Result<()> {
        let k = self.simple_roots.len();
        for i in 0..k {
            for j in 0..k {
                let ai = &self.simple_roots[i];
                let aj = &self.simple_roots[j];
                let num = 2 * self.inner(ai, aj);
                let den = self.norm2(aj);
                if den == 0 || num % den != 0 {
                    return Err(Error::InvalidRootData(format!(
                        "Cartan integer for simple roots {i},{j} is not an integer"
                    )));
                }
                let cij = num / den;
                if i == j {
                    continue;
                }
                let cji = 2 * self.inner(aj, ai) / self.norm2(ai);
                if cij > 0 || (cij == 0) != (cji == 0) || cij * cji > 3 {
                    return Err(Error::InvalidRootData(format!(
                        "invalid Cartan entries a[{i}][{j}]={cij}, a[{j}][{i}]={cji}"
                    )));
                }
            }
        }
        Ok(())
    }

    fn compute_positive_roots(&self) -> Result<Vec<Weight>> {
        let refl = self.simple_reflections();
        let mut seen: BTreeSet<Weight> = BTreeSet::new();
        let mut queue: VecDeque<Weight> = self.simple_roots.iter().cloned().collect();
        seen.extend(self.simple_roots.iter().cloned());
        while let Some(r) = queue.pop_front() {
            for m in &refl {
                let s = apply(m, &r);
                if seen.insert(s.clone()) {
                    if seen.len() > CLOSURE_BOUND {
                        return Err(Error::WeylClosureBound(CLOSURE_BOUND));
                    }
                    queue.push_back(s);
                }
            }
        }
        let mut pos = Vec::new();
        for r in seen {
            let c = self.simple_coordinates(&r).expect("roots lie in the root span");
            if c.iter().all(|&v| v >= 0) {
                pos.push(r);
            } else if !c.iter().all(|&v| v <= 0) {
                return Err(Error::InvalidRootData(format!("root {r:?} is neither positive nor negative")));
            }
        }
        Ok(pos)
    }

    /// Coordinates of x in the simple roots, scaled by a fixed positive denominator;
    /// `None` when x is outside their real span.
    pub fn simple_coordinates(&self, x: &[i64]) -> Option<Vec<i64>> {
        if self.simple_roots.is_empty() {
            return x.iter().all(|&v| v == 0).then(Vec::new);
        }
        let c: Vec<i64> = self.simple_coord_num.iter().map(|row| dot(row, x)).collect();
        // verify membership: Σ c_i α_i == den · x
        let mut back = vec![0i64; self.rank];
        for (ci, a) in c.iter().zip(&self.simple_roots) {
            for (b, ai) in back.iter_mut().zip(a) {
                *b += ci * ai;
            }
        }
        let target: Vec<i64> = x.iter().map(|v| v * self.simple_coord_den).collect();
        (back == target).then_some(c)
    }

    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive
    }

    /// All roots, positive ones followed by their negatives.
    pub fn roots(&self) -> Vec<Weight> {
        let mut out = self.positive.clone();
        out.extend(self.positive.iter().map(|r| neg(r)));
        out
    }

    pub fn is_root(&self, x: &[i64]) -> bool {
        self.positive.iter().any(|r| r == x || r.iter().zip(x).all(|(a, b)| *a == -b))
    }

    /// Pairing with the sum of positive coroots; strictly increases along positive roots.
    pub fn height(&self, x: &[i64]) -> i64 {
        dot(&self.height, x)
    }

    /// `τ ≤ σ` in the dominance order: σ − τ is a nonnegative combination of positive roots.
    pub fn dominance_le(&self, tau: &[i64], sigma: &[i64]) -> bool {
        let d: Vec<i64> = sigma.iter().zip(tau).map(|(a, b)| a - b).collect();
        self.simple_coordinates(&d).is_some_and(|c| c.iter().all(|&v| v >= 0))
    }

    /// Fundamental weights in ambient coordinates, if integral in this frame.
    pub fn fundamental_weights_ambient(&self) -> Option<Vec<Vec<i64>>> {
        let cartan = self.cartan_matrix();
        if cartan.is_empty() {
            return Some(Vec::new());
        }
        // ω_i = Σ_k (C⁻¹)_{ik} α_k with C_{ik} = ⟨α_i, α_k^∨⟩
        let inv = q_inverse(&q_from_i64(&cartan))?;
        let roots_amb: Vec<Vec<i64>> = self.simple_roots.iter().map(|r| self.to_ambient(r)).collect();
        let w = q_mul(&inv, &q_from_i64(&roots_amb));
        w.iter()
            .map(|row| {
                row.iter().map(|x| x.is_integer().then(|| x.to_integer()).and_then(|v: BigInt| v.to_i64())).collect()
            })
            .collect()
    }

    /// Fundamental weights in X-coordinates, if they lie in X.
    pub fn fundamental_weights(&self) -> Option<Vec<Weight>> {
        self.fundamental_weights_ambient()?.iter().map(|w| self.from_ambient(w)).collect()
    }

    /// Half the sum of the positive roots, if it lies in X.
    pub fn rho(&self) -> Option<Weight> {
        let mut s = vec![0i64; self.rank];
        for r in &self.positive {
            for (a, b) in s.iter_mut().zip(r) {
                *a += b;
            }
        }
        s.iter().all(|v| v % 2 == 0).then(|| s.iter().map(|v| v / 2).collect())
    }

    /// Gram matrix of the lattice basis in ambient units.
    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn neg(a: &[i64]) -> Weight {
    a.iter().map(|x| -x).collect()
}

/// Row-major square matrix times vector.
pub fn apply(m: &[i64], x: &[i64]) -> Weight {
    let n = x.len();
    (0..n).map(|i| (0..n).map(|j| m[i * n + j] * x[j]).sum()).collect()
}

/// Builds a recognized type (possibly a product such as `"A1xT1"`) with the given lattice.
pub fn build_root_datum(label: &str, lattice: LatticeChoice) -> Result<RootDatum> {
    let factors = parse_label(label)?;
    if let LatticeChoice::Explicit(basis) = &lattice {
        let frames: Vec<RootDatum> =
            factors.iter().map(|f| factor_datum(f, &LatticeChoice::Root)).collect::<Result<_>>()?;
        let frame = RootDatum::product(label, &frames)?;
        let roots: Vec<Vec<i64>> = frame.simple_roots.iter().map(|r| frame.to_ambient(r)).collect();
        return RootDatum::new(label, frame.ambient_dim, frame.scale, basis.clone(), roots);
    }
    let data: Vec<RootDatum> = factors.iter().map(|f| factor_datum(f, &lattice)).collect::<Result<_>>()?;
    if data.len() == 1 {
        let mut d = data.into_iter().next().expect("one factor");
        d.label = label.to_string();
        return Ok(d);
    }
    RootDatum::product(label, &data)
}

fn factor_datum(f: &FactorType, lattice: &LatticeChoice) -> Result<RootDatum> {
    let frame = classical_frame(f)?;
    let label = f.to_string();
    let root_lattice = || frame.simple_roots.clone();
    let basis: Vec<Vec<i64>> = match (f, lattice) {
        (FactorType::Torus(_), _) => identity_basis(frame.ambient_dim, frame.scale),
        (_, LatticeChoice::Root) => root_lattice(),
        (_, LatticeChoice::Weight) => {
            let probe = RootDatum::new(&label, frame.ambient_dim, frame.scale, root_lattice(), root_lattice())?;
            probe.fundamental_weights_ambient().ok_or_else(|| {
                Error::InvalidRootData(format!("fundamental weights of {label} are not integral in its frame"))
            })?
        }
        (FactorType::A(1) | FactorType::B(_) | FactorType::C(_) | FactorType::D(_), LatticeChoice::Standard) => {
            identity_basis(frame.ambient_dim, frame.scale)
        }
        (FactorType::A(_), LatticeChoice::Standard) => {
            return factor_datum(f, &LatticeChoice::Weight);
        }
        (_, LatticeChoice::Standard) => root_lattice(),
        (_, LatticeChoice::Explicit(b)) => b.clone(),
    };
    RootDatum::new(&label, frame.ambient_dim, frame.scale, basis, frame.simple_roots)
}

fn identity_basis(dim: usize, scale: i64) -> Vec<Vec<i64>> {
    (0..dim).map(|i| (0..dim).map(|j| if i == j { scale } else { 0 }).collect()).collect()
}
