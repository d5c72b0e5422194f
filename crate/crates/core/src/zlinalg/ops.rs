//! Kernels, cokernels, fiber products, integer solving and column echelon forms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{smith_normal_form, AbelianPresentation, IntMatrix};
use crate::error::{Error, Result};

/// Presentation of `Z^rows / im(a)`.
pub fn cokernel(a: &IntMatrix) -> AbelianPresentation {
    let snf = smith_normal_form(a);
    let diag = snf.diagonal();
    let torsion = diag.iter().filter(|x| !x.is_one()).cloned().collect();
    AbelianPresentation { generator_count: a.rows(), relations: a.clone(), free_rank: a.rows() - diag.len(), torsion }
}

/// Columns form a Z-basis of `{x : a·x = 0}`, in Hermite normal form.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(a);
    let r = snf.rank();
    let cols: Vec<Vec<BigInt>> = (r..a.cols()).map(|j| snf.v.column(j)).collect();
    let order: Vec<usize> = (0..a.cols()).collect();
    let hnf = hermite_columns(&cols, a.cols(), &order);
    IntMatrix::from_columns(a.cols(), &hnf)
}

/// Z-basis of `{(x, y) : f·x = g·y}`, stacked as columns of length `f.cols() + g.cols()`.
pub fn fiber_product_basis(f: &IntMatrix, g: &IntMatrix) -> Result<IntMatrix> {
    if f.rows() != g.rows() {
        return Err(Error::DimensionMismatch(format!("fiber product of maps into Z^{} and Z^{}", f.rows(), g.rows())));
    }
    Ok(kernel_basis(&f.hstack(&g.neg())))
}

/// Cokernel over `Z[1/ℓ]`: torsion coefficients lose every prime factor of ℓ.
pub fn localized_cokernel(a: &IntMatrix, base: i64) -> Result<AbelianPresentation> {
    if base <= 0 {
        return Err(Error::InvalidLocalization(base));
    }
    let mut p = cokernel(a);
    let l = BigInt::from(base);
    p.torsion = p.torsion.iter().map(|c| strip_factors(c, &l)).filter(|c| !c.is_one()).collect();
    Ok(p)
}

/// Removes from `c` every prime that divides `l`.
pub fn strip_factors(c: &BigInt, l: &BigInt) -> BigInt {
    let mut c = c.clone();
    loop {
        let g = c.gcd(l);
        if g.is_one() || g.is_zero() {
            return c;
        }
        c /= g;
    }
}

/// Some integer solution of `a·x = b`, if one exists.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows(), b.len(), "right-hand side length mismatch");
    let snf = smith_normal_form(a);
    let ub = snf.u.mul_vec(b);
    let diag = snf.diagonal();
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, c) in ub.iter().enumerate() {
        if i < diag.len() {
            let (q, r) = c.div_rem(&diag[i]);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !c.is_zero() {
            return None;
        }
    }
    Some(snf.v.mul_vec(&y))
}

/// Whether the columns of `a` and of `b` span the same sublattice.
pub fn same_lattice(a: &IntMatrix, b: &IntMatrix) -> bool {
    a.rows() == b.rows()
        && b.columns().iter().all(|c| solve_integer(a, c).is_some())
        && a.columns().iter().all(|c| solve_integer(b, c).is_some())
}

/// Rank of an integer matrix.
pub fn rank(a: &IntMatrix) -> usize {
    smith_normal_form(a).rank()
}

/// Column Hermite normal form of the span of `cols`, eliminating rows in the given order.
///
/// The result is the unique basis in which each column has a positive pivot in a distinct
/// row, is zero in all rows earlier in `order`, and every other basis column has its entry in
/// that pivot row reduced into `[0, pivot)`.
pub fn hermite_columns(cols: &[Vec<BigInt>], len: usize, order: &[usize]) -> Vec<Vec<BigInt>> {
    let ech = ColumnEchelon::new(cols, len, order);
    ech.pivots.into_iter().map(|p| p.column).collect()
}

#[derive(Clone, Debug)]
pub struct Pivot {
    pub row: usize,
    pub column: Vec<BigInt>,
}

impl Pivot {
    pub fn value(&self) -> &BigInt {
        &self.column[self.row]
    }
}

/// Echelon basis of a sublattice `L ⊆ Z^len` with a canonical reduction map `Z^len → Z^len / L`.
#[derive(Clone, Debug)]
pub struct ColumnEchelon {
    pub len: usize,
    pub order: Vec<usize>,
    pub pivots: Vec<Pivot>,
}

impl ColumnEchelon {
    pub fn new(cols: &[Vec<BigInt>], len: usize, order: &[usize]) -> Self {
        assert_eq!(order.len(), len, "row order must list every row");
        let mut active: Vec<Vec<BigInt>> = cols.iter().filter(|c| c.iter().any(|x| !x.is_zero())).cloned().collect();
        let mut pivots: Vec<Pivot> = Vec::new();
        for &r in order {
            loop {
                let mut best: Option<usize> = None;
                for (k, c) in active.iter().enumerate() {
                    if !c[r].is_zero() && best.is_none_or(|b| c[r].abs() < active[b][r].abs()) {
                        best = Some(k);
                    }
                }
                let Some(b) = best else { break };
                let piv = active[b].clone();
                let mut others_nonzero = false;
                for (k, c) in active.iter_mut().enumerate() {
                    if k == b || c[r].is_zero() {
                        continue;
                    }
                    let q = c[r].div_floor(&piv[r]);
                    for (x, p) in c.iter_mut().zip(&piv) {
                        *x -= &q * p;
                    }
                    others_nonzero |= !c[r].is_zero();
                }
                if !others_nonzero {
                    let mut col = active.swap_remove(b);
                    if col[r].is_negative() {
                        col.iter_mut().for_each(|x| *x = -&*x);
                    }
                    pivots.push(Pivot { row: r, column: col });
                    active.retain(|c| c.iter().any(|x| !x.is_zero()));
                    break;
                }
            }
        }
        debug_assert!(active.iter().all(|c| c.iter().all(Zero::is_zero)));
        // Reduce every pivot column against later pivots.
        for j in 0..pivots.len() {
            let (head, tail) = pivots.split_at_mut(j);
            let pj = &tail[0];
            for pi in head.iter_mut() {
                let q = pi.column[pj.row].div_floor(pj.value());
                if !q.is_zero() {
                    for (x, p) in pi.column.iter_mut().zip(&pj.column) {
                        *x -= &q * p;
                    }
                }
            }
        }
        ColumnEchelon { len, order: order.to_vec(), pivots }
    }

    /// Canonical representative of `v + L`: pivot rows end up in `[0, pivot)`.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut v = v.to_vec();
        for p in &self.pivots {
            let q = v[p.row].div_floor(p.value());
            if !q.is_zero() {
                for (x, c) in v.iter_mut().zip(&p.column) {
                    *x -= &q * c;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_pivot_row(&self, r: usize) -> bool {
        self.pivots.iter().any(|p| p.row == r)
    }

    /// Rows without a pivot, in natural order: free generators of the quotient.
    pub fn free_rows(&self) -> Vec<usize> {
        (0..self.len).filter(|&r| !self.is_pivot_row(r)).collect()
    }

    /// Pivot rows whose pivot exceeds 1: they carry torsion in the quotient.
    pub fn torsion_rows(&self) -> Vec<(usize, BigInt)> {
        let mut t: Vec<(usize, BigInt)> =
            self.pivots.iter().filter(|p| !p.value().is_one()).map(|p| (p.row, p.value().clone())).collect();
        t.sort();
        t
    }
}
