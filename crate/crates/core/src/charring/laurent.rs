use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rootsys::{apply, Weight};

/// An element of the group ring Z[X]: finitely many exponents with nonzero integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    rank: usize,
    terms: BTreeMap<Weight, BigInt>,
}

impl LaurentPoly {
    pub fn zero(rank: usize) -> Self {
        LaurentPoly { rank, terms: BTreeMap::new() }
    }

    pub fn one(rank: usize) -> Self {
        Self::monomial(vec![0; rank], BigInt::one())
    }

    pub fn monomial(exp: Weight, coeff: BigInt) -> Self {
        let mut p = Self::zero(exp.len());
        p.add_term(exp, coeff);
        p
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, combining repeats.
    pub fn from_terms(rank: usize, terms: impl IntoIterator<Item = (Weight, BigInt)>) -> Result<Self> {
        let mut p = Self::zero(rank);
        for (e, c) in terms {
            if e.len() != rank {
                return Err(Error::LatticeMismatch(format!("exponent {e:?} in a polynomial on a rank-{rank} lattice")));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> &BTreeMap<Weight, BigInt> {
        &self.terms
    }

    pub fn coeff(&self, exp: &[i64]) -> BigInt {
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = &Weight> {
        self.terms.keys()
    }

    /// Sum of coefficients: the dimension of a genuine character.
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub(crate) fn add_term(&mut self, exp: Weight, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        debug_assert_eq!(exp.len(), self.rank);
        let entry = self.terms.entry(exp);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check(&self, other: &LaurentPoly) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::LatticeMismatch(format!(
                "polynomials on lattices of rank {} and {}",
                self.rank, other.rank
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, k: &BigInt) -> LaurentPoly {
        let mut out = Self::zero(self.rank);
        if k.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect();
        out
    }

    pub fn mul(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check(other)?;
        let mut out = Self::zero(self.rank);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let e: Weight = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> LaurentPoly {
        let mut out = Self::one(self.rank);
        for _ in 0..n {
            out = out.mul(self).expect("same lattice");
        }
        out
    }

    /// Multiplies by the monomial x^shift.
    pub fn shift(&self, shift: &[i64]) -> LaurentPoly {
        let mut out = Self::zero(self.rank);
        out.terms =
            self.terms.iter().map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone())).collect();
        out
    }

    /// Applies a lattice automorphism (row-major matrix on X-coordinates) to every exponent.
    pub fn weyl_act(&self, m: &[i64]) -> Result<LaurentPoly> {
        if m.len() != self.rank * self.rank {
            return Err(Error::LatticeMismatch(format!(
                "matrix with {} entries acting on a rank-{} lattice",
                m.len(),
                self.rank
            )));
        }
        let mut out = Self::zero(self.rank);
        for (e, c) in &self.terms {
            out.add_term(apply(m, e), c.clone());
        }
        Ok(out)
    }

    /// Pushes exponents forward along an arbitrary map, accumulating coefficients.
    pub fn map_exponents(&self, target_rank: usize, f: impl Fn(&[i64]) -> Weight) -> LaurentPoly {
        let mut out = Self::zero(target_rank);
        for (e, c) in &self.terms {
            out.add_term(f(e), c.clone());
        }
        out
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_default()
    }
}

fn fmt_exp(e: &[i64]) -> String {
    let parts: Vec<String> = e.iter().map(|x| x.to_string()).collect();
    format!("x({})", parts.join(","))
}

impl fmt::Display for LaurentPoly {
    /// Terms in descending lexicographic order, e.g. `x(1) + 2 x(0) + x(-1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if a.is_one() {
                write!(f, "{}", fmt_exp(e))?;
            } else {
                write!(f, "{a} {}", fmt_exp(e))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(k: i64) -> LaurentPoly {
        LaurentPoly::monomial(vec![k], BigInt::one())
    }

    #[test]
    fn arithmetic() {
        let q = t(1).add(&t(-1)).unwrap();
        let q2 = q.mul(&q).unwrap();
        let expect = t(2).add(&t(0).scale(&BigInt::from(2))).unwrap().add(&t(-2)).unwrap();
        assert_eq!(q2, expect);
        assert_eq!(LaurentPoly::one(1).mul(&q).unwrap(), q);
        // t ↦ t⁻¹ fixes t + t⁻¹
        assert_eq!(q.weyl_act(&[-1]).unwrap(), q);
        assert!(q.sub(&q).unwrap().is_zero());
        assert_eq!(q2.to_string(), "x(2) + 2 x(0) + x(-2)");
    }

    #[test]
    fn mismatched_lattices() {
        let a = LaurentPoly::one(1);
        let b = LaurentPoly::one(2);
        assert!(a.mul(&b).is_err());
        assert!(a.weyl_act(&[1, 0, 0, 1]).is_err());
        assert!(LaurentPoly::from_terms(1, [(vec![1, 2], BigInt::one())]).is_err());
    }
}
