use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type QMatrix = Vec<Vec<BigRational>>;

pub fn q_from_i64(rows: &[Vec<i64>]) -> QMatrix {
    rows.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()).collect()
}

pub fn q_mul(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let n = b.first().map_or(0, Vec::len);
    a.iter().map(|row| (0..n).map(|j| row.iter().zip(b).map(|(x, brow)| x * &brow[j]).sum()).collect()).collect()
}

pub fn q_transpose(a: &QMatrix) -> QMatrix {
    let n = a.first().map_or(0, Vec::len);
    (0..n).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Inverse of a square rational matrix by Gauss-Jordan elimination, `None` if singular.
pub fn q_inverse(a: &QMatrix) -> Option<QMatrix> {
    let n = a.len();
    let mut m: QMatrix = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(c, p);
        let inv = m[c][c].recip();
        for x in m[c].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                let pivot_row = m[c].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Writes a rational matrix as `num / den` with `den > 0` minimal; `None` if an entry overflows i64.
pub fn q_to_scaled_i64(a: &QMatrix) -> Option<(Vec<Vec<i64>>, i64)> {
    let mut den = BigInt::one();
    for r in a {
        for x in r {
            den = den.lcm(x.denom());
        }
    }
    let num: Option<Vec<Vec<i64>>> =
        a.iter().map(|r| r.iter().map(|x| (x.numer() * (&den / x.denom())).to_i64()).collect()).collect();
    Some((num?, den.to_i64()?))
}

/// Largest integer `k ≥ 0` with `k² ≤ p/q` for `p ≥ 0`, `q > 0`.
pub fn isqrt_ratio(p: &BigInt, q: &BigInt) -> BigInt {
    assert!(!p.is_negative() && q.is_positive());
    let v = p / q;
    let mut k = v.sqrt();
    while &(&k + 1u32) * &(&k + 1u32) * q <= *p {
        k += 1u32;
    }
    while &k * &k * q > *p {
        k -= 1u32;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        let a = q_from_i64(&[vec![2, -1], vec![-1, 2]]);
        let inv = q_inverse(&a).unwrap();
        assert_eq!(q_mul(&a, &inv), q_from_i64(&[vec![1, 0], vec![0, 1]]));
        let (num, den) = q_to_scaled_i64(&inv).unwrap();
        assert_eq!((num, den), (vec![vec![2, 1], vec![1, 2]], 3));
        assert!(q_inverse(&q_from_i64(&[vec![1, 2], vec![2, 4]])).is_none());
    }

    #[test]
    fn integer_square_root_of_ratio() {
        let b = |x: i64| BigInt::from(x);
        assert_eq!(isqrt_ratio(&b(9), &b(1)), b(3));
        assert_eq!(isqrt_ratio(&b(8), &b(1)), b(2));
        assert_eq!(isqrt_ratio(&b(9), &b(4)), b(1));
        assert_eq!(isqrt_ratio(&b(0), &b(7)), b(0));
    }
}
