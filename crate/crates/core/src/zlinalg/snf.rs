//! Smith normal form by row/column reduction with minimal-absolute-value pivoting.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// `u · a · v = d` with `u`, `v` unimodular and `d` diagonal, `d[i] | d[i+1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    /// Nonzero diagonal entries, all positive.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d[(i, i)].clone()).take_while(|x| !x.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().len()
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    let m = a.rows();
    let n = a.cols();
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        let Some((pi, pj)) = min_abs_entry(&d, t, t..m, t..n) else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let pivot = d[(t, t)].clone();
            let mut dirty = false;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -d[(i, t)].div_floor(&pivot);
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                dirty |= !d[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -d[(t, j)].div_floor(&pivot);
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                dirty |= !d[(t, j)].is_zero();
            }
            if dirty {
                // A remainder smaller than the pivot is left in row or column t; move it up.
                let row_best = min_abs_entry(&d, t, t..t + 1, t + 1..n);
                let col_best = min_abs_entry(&d, t, t + 1..m, t..t + 1);
                let pick = match (row_best, col_best) {
                    (Some(r), Some(c)) => {
                        if d[r].abs() <= d[c].abs() {
                            r
                        } else {
                            c
                        }
                    }
                    (Some(r), None) => r,
                    (None, Some(c)) => c,
                    (None, None) => unreachable!(),
                };
                d.swap_rows(t, pick.0);
                u.swap_rows(t, pick.0);
                d.swap_cols(t, pick.1);
                v.swap_cols(t, pick.1);
                continue;
            }
            // Row and column t are clear; enforce divisibility on the rest.
            let offender = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !d[(i, j)].is_multiple_of(&pivot));
            match offender {
                Some((i, _)) => {
                    let one = BigInt::from(1);
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SnfResult { u, d, v }
}

fn min_abs_entry(
    d: &IntMatrix,
    _t: usize,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in rows {
        for j in cols.clone() {
            let x = &d[(i, j)];
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().is_none_or(|(_, b)| ax < *b) {
                best = Some(((i, j), ax));
            }
        }
    }
    best.map(|(p, _)| p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn check(a: &IntMatrix) -> SnfResult {
        let r = smith_normal_form(a);
        assert_eq!(&(&r.u * a) * &r.v, r.d, "u·a·v != d for {a:?}");
        assert!(r.d.is_diagonal());
        assert!(r.u.determinant().abs().is_one());
        assert!(r.v.determinant().abs().is_one());
        let diag = r.diagonal();
        for w in diag.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        r
    }

    #[test]
    fn identity_and_zero() {
        let r = check(&IntMatrix::identity(3));
        assert_eq!(r.d, IntMatrix::identity(3));
        let r = check(&IntMatrix::zeros(2, 2));
        assert!(r.d.is_zero());
    }

    #[test]
    fn diag_2_3() {
        let r = check(&IntMatrix::diagonal(&[2, 3]));
        assert_eq!(r.d, IntMatrix::diagonal(&[1, 6]));
    }

    #[test]
    fn rectangular_and_negative() {
        check(&IntMatrix::from_rows(&[[2, 4, 4], [-6, 6, 12], [10, -4, -16]]));
        let r = check(&IntMatrix::from_rows(&[[0, -3], [0, 0], [0, 0]]));
        assert_eq!(r.diagonal(), vec![BigInt::from(3)]);
        check(&IntMatrix::from_rows(&[[2, 3]]));
        check(&IntMatrix::zeros(0, 3));
    }
}
