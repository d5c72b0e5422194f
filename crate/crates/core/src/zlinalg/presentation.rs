use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::IntMatrix;
use crate::error::{Error, Result};

/// A finitely generated abelian group `Z^generator_count / im(relations)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianPresentation {
    pub generator_count: usize,
    pub relations: IntMatrix,
    pub free_rank: usize,
    /// Torsion coefficients greater than one, in divisibility order.
    pub torsion: Vec<BigInt>,
}

impl AbelianPresentation {
    /// `(free rank, sorted torsion coefficients)`: two presentations are isomorphic iff these agree.
    pub fn normalized(&self) -> (usize, Vec<BigInt>) {
        let mut t = self.torsion.clone();
        t.sort();
        (self.free_rank, t)
    }

    /// The invariant factors in one list: torsion coefficients followed by a zero per free summand.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let mut out = self.torsion.clone();
        out.extend(std::iter::repeat_n(BigInt::zero(), self.free_rank));
        out
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_isomorphic(&self, other: &AbelianPresentation) -> bool {
        self.normalized() == other.normalized()
    }
}

impl fmt::Display for AbelianPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|t| format!("Z/{t}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            n => parts.push(format!("Z^{n}")),
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// An element `numerator / base^exponent` of `Z[1/base]`, reduced so that `base` does not
/// divide the numerator when the exponent is positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalizedScalar {
    numerator: BigInt,
    base: BigInt,
    exponent: u32,
}

impl LocalizedScalar {
    pub fn new(numerator: BigInt, base: i64, exponent: u32) -> Result<Self> {
        if base <= 0 {
            return Err(Error::InvalidLocalization(base));
        }
        let mut s = LocalizedScalar { numerator, base: BigInt::from(base), exponent };
        s.normalize();
        Ok(s)
    }

    pub fn integer(n: BigInt, base: i64) -> Result<Self> {
        Self::new(n, base, 0)
    }

    /// `n / d` if `d` is a unit of `Z[1/base]` (a divisor of some power of base).
    pub fn from_ratio(n: &BigInt, d: &BigInt, base: i64) -> Result<Option<Self>> {
        if base <= 0 {
            return Err(Error::InvalidLocalization(base));
        }
        if d.is_zero() {
            return Ok(None);
        }
        let b = BigInt::from(base);
        // d divides base^k for some k iff every prime of d divides base
        if !super::strip_factors(d, &b).is_one() && !(-super::strip_factors(d, &b)).is_one() {
            return Ok(None);
        }
        let mut k = 0u32;
        let mut pow = BigInt::one();
        while !pow.is_multiple_of(d) {
            pow *= &b;
            k += 1;
        }
        // n/d = n·(base^k / d) / base^k
        let num = n * (&pow / d);
        Ok(Some(Self::new(num, base, k)?))
    }

    fn normalize(&mut self) {
        if self.numerator.is_zero() {
            self.exponent = 0;
            return;
        }
        if self.base.is_one() {
            self.exponent = 0;
            return;
        }
        while self.exponent > 0 && self.numerator.is_multiple_of(&self.base) {
            self.numerator /= &self.base;
            self.exponent -= 1;
        }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.numerator
    }

    pub fn denominator(&self) -> BigInt {
        num_traits::pow(self.base.clone(), self.exponent as usize)
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn is_integral(&self) -> bool {
        self.exponent == 0
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    fn check_base(&self, other: &Self) {
        assert_eq!(self.base, other.base, "mixing localizations at different bases");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_base(other);
        let e = self.exponent.max(other.exponent);
        let a = &self.numerator * num_traits::pow(self.base.clone(), (e - self.exponent) as usize);
        let b = &other.numerator * num_traits::pow(self.base.clone(), (e - other.exponent) as usize);
        let mut s = LocalizedScalar { numerator: a + b, base: self.base.clone(), exponent: e };
        s.normalize();
        s
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_base(other);
        let mut s = LocalizedScalar {
            numerator: &self.numerator * &other.numerator,
            base: self.base.clone(),
            exponent: self.exponent + other.exponent,
        };
        s.normalize();
        s
    }
}

impl fmt::Display for LocalizedScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 0 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/{}", self.numerator, self.denominator())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ls(n: i64, b: i64, e: u32) -> LocalizedScalar {
        LocalizedScalar::new(BigInt::from(n), b, e).unwrap()
    }

    #[test]
    fn lowest_terms_keep_power_denominator() {
        assert_eq!(ls(4, 2, 3), ls(1, 2, 1));
        // 2/6 stays as 2/6: 6 does not divide 2
        let s = ls(2, 6, 1);
        assert_eq!(s.denominator(), BigInt::from(6));
        assert!(ls(0, 2, 5).is_integral());
    }

    #[test]
    fn arithmetic() {
        let half = ls(1, 2, 1);
        assert_eq!(half.add(&half), ls(1, 2, 0));
        assert_eq!(half.mul(&ls(2, 2, 0)), ls(1, 2, 0));
        assert_eq!(LocalizedScalar::from_ratio(&BigInt::from(3), &BigInt::from(4), 2).unwrap(), Some(ls(3, 2, 2)));
        assert_eq!(LocalizedScalar::from_ratio(&BigInt::from(1), &BigInt::from(3), 2).unwrap(), None);
        assert!(LocalizedScalar::new(BigInt::from(1), 0, 0).is_err());
    }

    #[test]
    fn display() {
        let p = AbelianPresentation {
            generator_count: 3,
            relations: IntMatrix::zeros(3, 0),
            free_rank: 2,
            torsion: vec![BigInt::from(2)],
        };
        assert_eq!(p.to_string(), "Z/2 + Z^2");
        assert_eq!(p.invariant_factors(), vec![BigInt::from(2), BigInt::zero(), BigInt::zero()]);
    }
}
