//! Bredon cohomology of the pushout with coefficients in a system of abelian groups on the three
//! orbit types: `H⁰` is the fiber product, `H¹` the cokernel of the difference map, and
//! everything above degree one vanishes.

use crate::error::{Error, Result};
use crate::zlinalg::{cokernel, hermite_columns, kernel_basis, solve_integer, AbelianPresentation, IntMatrix};

#[derive(Clone, Debug)]
pub struct BredonResult {
    pub h0: AbelianPresentation,
    /// Columns span the lift of `H⁰` in `Z^a ⊕ Z^b`.
    pub h0_lift: IntMatrix,
    pub h1: AbelianPresentation,
}

/// `values` are `F(G/K⁻)`, `F(G/K⁺)`, `F(G/H)`; `maps` send generators of the first two into the
/// third.
pub fn bredon_pushout(values: [&AbelianPresentation; 3], maps: [&IntMatrix; 2]) -> Result<BredonResult> {
    let [a, b, c] = values;
    let [fm, fp] = maps;
    if fm.rows() != c.generator_count
        || fp.rows() != c.generator_count
        || fm.cols() != a.generator_count
        || fp.cols() != b.generator_count
    {
        return Err(Error::DimensionMismatch("coefficient maps do not match the groups".into()));
    }
    let rc = &c.relations;
    // relations must map into relations
    for (f, src) in [(fm, a), (fp, b)] {
        for j in 0..src.relations.cols() {
            if solve_integer(rc, &f.mul_vec(&src.relations.column(j))).is_none() {
                return Err(Error::Semantic("a coefficient map does not respect relations".into()));
            }
        }
    }
    let h1 = cokernel(&rc.hstack(fm).hstack(fp));

    let n = a.generator_count + b.generator_count;
    let ker = kernel_basis(&fm.hstack(&fp.neg()).hstack(rc));
    let projected: Vec<_> = (0..ker.cols()).map(|j| ker.column(j)[..n].to_vec()).collect();
    let natural: Vec<usize> = (0..n).collect();
    let lift_cols = hermite_columns(&projected, n, &natural);
    let lift = IntMatrix::from_columns(n, &lift_cols);
    let mut rels = Vec::new();
    for j in 0..a.relations.cols() {
        let mut v = a.relations.column(j);
        v.resize(n, Default::default());
        rels.push(v);
    }
    for j in 0..b.relations.cols() {
        let mut v = vec![Default::default(); a.generator_count];
        v.extend(b.relations.column(j));
        rels.push(v);
    }
    let mut rel_coords = Vec::new();
    for r in rels {
        let x = solve_integer(&lift, &r)
            .ok_or_else(|| Error::Semantic("relations do not lie in the fiber product".into()))?;
        rel_coords.push(x);
    }
    let h0 = cokernel(&IntMatrix::from_columns(lift.cols(), &rel_coords));
    Ok(BredonResult { h0, h0_lift: lift, h1 })
}

/// `Z^n` with no relations.
pub fn free_group(n: usize) -> AbelianPresentation {
    cokernel(&IntMatrix::zeros(n, 0))
}
