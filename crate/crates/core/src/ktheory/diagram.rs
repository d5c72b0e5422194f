//! Cohomogeneity-one diagrams `G ⊃ K⁻, K⁺ ⊃ H` on the level of root data and character lattices.

use serde::Serialize;

use crate::charring::{make_window, TorusMap, Window};
use crate::error::{Error, Result};
use crate::rootsys::{enumerate_weyl, RootDatum, Weight, WeylGroup};

/// A compact connected group, recorded by its root datum and enumerated Weyl group.
#[derive(Clone, Debug)]
pub struct Group {
    pub name: String,
    pub datum: RootDatum,
    pub weyl: WeylGroup,
}

impl Group {
    pub fn new(name: &str, datum: RootDatum) -> Result<Self> {
        let weyl = enumerate_weyl(&datum)?;
        Ok(Group { name: name.to_string(), datum, weyl })
    }

    /// A subgroup of full rank: same frame and lattice as `parent`, other simple roots
    /// (in ambient coordinates of the parent's frame).
    pub fn subgroup(name: &str, parent: &RootDatum, simple_roots: Vec<Vec<i64>>) -> Result<Self> {
        let datum =
            RootDatum::new(name, parent.ambient_dim, parent.scale, parent.basis_vectors().to_vec(), simple_roots)?;
        Group::new(name, datum)
    }

    pub fn rank(&self) -> usize {
        self.datum.rank
    }

    /// Real dimension: the rank plus the number of roots.
    pub fn dimension(&self) -> usize {
        self.datum.rank + 2 * self.datum.positive_roots().len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Minus,
    Plus,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Minus => Side::Plus,
            Side::Plus => Side::Minus,
        }
    }
}

/// The four isotropy groups with the restriction maps between their character lattices.
#[derive(Clone, Debug)]
pub struct Diagram {
    pub g: Group,
    pub k_minus: Group,
    pub k_plus: Group,
    pub h: Group,
    /// Restriction `X(G) → X(K⁻)`.
    pub g_to_minus: TorusMap,
    /// Restriction `X(G) → X(K⁺)`.
    pub g_to_plus: TorusMap,
    /// Restriction `X(K⁻) → X(H)`.
    pub minus_to_h: TorusMap,
    /// Restriction `X(K⁺) → X(H)`.
    pub plus_to_h: TorusMap,
    /// Dimensions of `K⁻/H` and `K⁺/H`.
    pub sphere_dims: [usize; 2],
    /// Highest weights of representations of `K⁻`, `K⁺` that are trivial on `H`; used for odd
    /// spheres of dimension at least three.
    pub rho: [Option<Weight>; 2],
}

/// Windows for the three rings in a diagram; the G-side is never truncated separately.
#[derive(Clone, Debug)]
pub struct DiagramWindows {
    pub h: Window,
    pub k_minus: Window,
    pub k_plus: Window,
}

impl DiagramWindows {
    pub fn k(&self, side: Side) -> &Window {
        match side {
            Side::Minus => &self.k_minus,
            Side::Plus => &self.k_plus,
        }
    }
}

impl Diagram {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        g: Group,
        k_minus: Group,
        k_plus: Group,
        h: Group,
        g_to_minus: TorusMap,
        g_to_plus: TorusMap,
        minus_to_h: TorusMap,
        plus_to_h: TorusMap,
        sphere_dims: [usize; 2],
    ) -> Result<Self> {
        let d = Diagram {
            g,
            k_minus,
            k_plus,
            h,
            g_to_minus,
            g_to_plus,
            minus_to_h,
            plus_to_h,
            sphere_dims,
            rho: [None, None],
        };
        d.validate()?;
        Ok(d)
    }

    /// All four groups on one lattice with identity restriction maps.
    pub fn full_rank(g: Group, k_minus: Group, k_plus: Group, h: Group, sphere_dims: [usize; 2]) -> Result<Self> {
        let r = g.rank();
        if [&k_minus, &k_plus, &h].iter().any(|x| x.rank() != r) {
            return Err(Error::Semantic("full-rank diagram needs four groups of equal rank".into()));
        }
        let id = TorusMap::identity(r);
        Diagram::new(g, k_minus, k_plus, h, id.clone(), id.clone(), id.clone(), id, sphere_dims)
    }

    pub fn with_rho(mut self, side: Side, highest_weight: Weight) -> Result<Self> {
        let k = self.k(side);
        if highest_weight.len() != k.rank() {
            return Err(Error::Semantic(format!("rho for {} must have rank {}", k.name, k.rank())));
        }
        if !crate::rootsys::is_dominant(&k.datum, &highest_weight) {
            return Err(Error::NotDominant(highest_weight));
        }
        self.rho[side as usize] = Some(highest_weight);
        Ok(self)
    }

    pub fn k(&self, side: Side) -> &Group {
        match side {
            Side::Minus => &self.k_minus,
            Side::Plus => &self.k_plus,
        }
    }

    pub fn to_h(&self, side: Side) -> &TorusMap {
        match side {
            Side::Minus => &self.minus_to_h,
            Side::Plus => &self.plus_to_h,
        }
    }

    pub fn from_g(&self, side: Side) -> &TorusMap {
        match side {
            Side::Minus => &self.g_to_minus,
            Side::Plus => &self.g_to_plus,
        }
    }

    pub fn sphere_dim(&self, side: Side) -> usize {
        self.sphere_dims[side as usize]
    }

    /// Equal ranks everywhere and identity restriction maps.
    pub fn is_full_rank(&self) -> bool {
        let r = self.g.rank();
        let id = TorusMap::identity(r);
        [&self.k_minus, &self.k_plus, &self.h].iter().all(|x| x.rank() == r)
            && [&self.g_to_minus, &self.g_to_plus, &self.minus_to_h, &self.plus_to_h].iter().all(|m| **m == id)
    }

    /// The group generated by both `W_K±` inside `GL(X)` (full-rank diagrams only).
    pub fn effective_weyl(&self) -> Result<WeylGroup> {
        if !self.is_full_rank() {
            return Err(Error::Precondition("the effective Weyl group needs a full-rank diagram".into()));
        }
        let mut gens: Vec<Vec<i64>> = Vec::new();
        for w in [&self.k_minus.weyl, &self.k_plus.weyl] {
            gens.extend(w.generators.iter().map(|&i| w.element(i).to_vec()));
        }
        WeylGroup::generated_by(self.g.rank(), &gens)
    }

    fn validate(&self) -> Result<()> {
        let checks = [
            (&self.g, &self.k_minus, &self.g_to_minus),
            (&self.g, &self.k_plus, &self.g_to_plus),
            (&self.k_minus, &self.h, &self.minus_to_h),
            (&self.k_plus, &self.h, &self.plus_to_h),
        ];
        for (big, small, map) in checks {
            if map.source_rank != big.rank() || map.target_rank != small.rank() {
                return Err(Error::DimensionMismatch(format!(
                    "restriction {} → {} must be {}×{}",
                    big.name,
                    small.name,
                    small.rank(),
                    big.rank()
                )));
            }
            check_equivariant(big, small, map)?;
        }
        let via_minus = self.minus_to_h.after(&self.g_to_minus)?;
        let via_plus = self.plus_to_h.after(&self.g_to_plus)?;
        if via_minus != via_plus {
            return Err(Error::Semantic("the two restrictions X(G) → X(H) disagree".into()));
        }
        for side in [Side::Minus, Side::Plus] {
            let k = self.k(side);
            let actual = k
                .dimension()
                .checked_sub(self.h.dimension())
                .ok_or_else(|| Error::Semantic(format!("{} is smaller than {}", k.name, self.h.name)))?;
            if actual != self.sphere_dim(side) {
                return Err(Error::Semantic(format!(
                    "declared sphere dimension {} but dim {} − dim {} = {actual}",
                    self.sphere_dim(side),
                    k.name,
                    self.h.name
                )));
            }
        }
        if self.is_full_rank() {
            for k in [&self.k_minus, &self.k_plus] {
                if !k.weyl.contains_group(&self.h.weyl) || !self.g.weyl.contains_group(&k.weyl) {
                    return Err(Error::Semantic(format!(
                        "Weyl groups are not nested along {} ⊆ {} ⊆ {}",
                        self.h.name, k.name, self.g.name
                    )));
                }
            }
        }
        Ok(())
    }

    /// Weight windows for the rings of `H` and `K±`.
    ///
    /// Full rank: one ball of the given radius closed under every Weyl group of the diagram.
    /// Otherwise the `H`-window is a `W_H`-closed ball and each `K`-window consists of the
    /// `W_K`-orbits in a ball of radius `preimage_radius` whose restriction lands in it.
    pub fn windows(&self, radius: i64, preimage_radius: i64) -> Result<DiagramWindows> {
        if self.is_full_rank() {
            let groups = [
                (self.g.name.as_str(), &self.g.weyl),
                (self.k_minus.name.as_str(), &self.k_minus.weyl),
                (self.k_plus.name.as_str(), &self.k_plus.weyl),
                (self.h.name.as_str(), &self.h.weyl),
            ];
            let w = make_window(&self.h.datum, &groups, radius)?;
            return Ok(DiagramWindows { h: w.clone(), k_minus: w.clone(), k_plus: w });
        }
        let h = make_window(&self.h.datum, &[(self.h.name.as_str(), &self.h.weyl)], radius)?;
        let mut ks = Vec::new();
        for side in [Side::Minus, Side::Plus] {
            let k = self.k(side);
            let map = self.to_h(side);
            let mut ball = make_window(&k.datum, &[(k.name.as_str(), &k.weyl)], preimage_radius)?;
            let keep: Vec<Weight> = ball
                .weights
                .iter()
                .filter(|x| k.weyl.orbit(x).iter().all(|y| h.contains(&map.apply(y))))
                .cloned()
                .collect();
            ball.weights = keep.into_iter().collect();
            ks.push(ball);
        }
        let k_plus = ks.pop().expect("two sides");
        let k_minus = ks.pop().expect("two sides");
        Ok(DiagramWindows { h, k_minus, k_plus })
    }
}

/// `map: X(big) → X(small)` must intertwine `W_small` with elements of `W_big`.
fn check_equivariant(big: &Group, small: &Group, map: &TorusMap) -> Result<()> {
    let (n, m) = (big.rank(), small.rank());
    let flat = |rows: &[Vec<i64>]| -> Vec<i64> { rows.iter().flatten().copied().collect() };
    let f = flat(&map.matrix);
    let f = &f;
    // (m×m)·(m×n) and (m×n)·(n×n) as flat row-major products
    let left = |s: &[i64]| -> Vec<i64> {
        (0..m).flat_map(|i| (0..n).map(move |j| (0..m).map(|k| s[i * m + k] * f[k * n + j]).sum())).collect()
    };
    let right = |w: &[i64]| -> Vec<i64> {
        let w = w.to_vec();
        (0..m)
            .flat_map(|i| {
                let w = w.clone();
                (0..n).map(move |j| (0..n).map(|k| f[i * n + k] * w[k * n + j]).sum())
            })
            .collect()
    };
    let images: std::collections::HashSet<Vec<i64>> = big.weyl.elements().iter().map(|w| right(w)).collect();
    for &gi in &small.weyl.generators {
        let s = small.weyl.element(gi);
        if !images.contains(&left(s)) {
            return Err(Error::Semantic(format!(
                "restriction {} → {} is not compatible with the Weyl group of {}",
                big.name, small.name, small.name
            )));
        }
    }
    Ok(())
}

/// `|W_K| / |W_H| = 2`, the rank of `RH` over `RK` for an even sphere `K/H` of full rank.
pub fn check_rank_two(k: &Group, h: &Group) -> Result<bool> {
    if k.rank() != h.rank() {
        return Err(Error::Precondition("rank-two test needs a full-rank pair".into()));
    }
    if !k.weyl.contains_group(&h.weyl) {
        return Err(Error::Semantic(format!("W({}) is not a subgroup of W({})", h.name, k.name)));
    }
    Ok(k.weyl.order() == 2 * h.weyl.order())
}

/// `rk G = max(rk K⁻, rk K⁺)`.
pub fn formality_rank_check(d: &Diagram) -> bool {
    d.g.rank() == d.k_minus.rank().max(d.k_plus.rank())
}
