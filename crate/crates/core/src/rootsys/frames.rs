//! Integer realizations of the classical root systems.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    G2,
    F4,
    Torus(usize),
}

impl fmt::Display for FactorType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorType::A(n) => write!(f, "A{n}"),
            FactorType::B(n) => write!(f, "B{n}"),
            FactorType::C(n) => write!(f, "C{n}"),
            FactorType::D(n) => write!(f, "D{n}"),
            FactorType::G2 => write!(f, "G2"),
            FactorType::F4 => write!(f, "F4"),
            FactorType::Torus(k) => write!(f, "T{k}"),
        }
    }
}

impl FactorType {
    pub fn weyl_order(&self) -> u64 {
        let fact = |n: usize| (1..=n as u64).product::<u64>();
        match *self {
            FactorType::A(n) => fact(n + 1),
            FactorType::B(n) | FactorType::C(n) => (1u64 << n) * fact(n),
            FactorType::D(n) => (1u64 << (n - 1)) * fact(n),
            FactorType::G2 => 12,
            FactorType::F4 => 1152,
            FactorType::Torus(_) => 1,
        }
    }
}

/// Parses labels like `"B4"`, `"A1xT1"`, `"C2×A1"`, `"T^2"`.
pub fn parse_label(label: &str) -> Result<Vec<FactorType>> {
    let unknown = || Error::Unsupported(format!("unrecognized root system label {label:?}"));
    let mut out = Vec::new();
    for part in label.split(['x', '×']) {
        let part = part.trim();
        let (head, tail) = part.split_at(part.chars().next().map_or(0, char::len_utf8));
        let tail = tail.trim_start_matches('^');
        let n: usize = tail.parse().map_err(|_| unknown())?;
        let f = match (head, n) {
            ("A", n) if n >= 1 => FactorType::A(n),
            ("B", n) if n >= 1 => FactorType::B(n),
            ("C", n) if n >= 1 => FactorType::C(n),
            ("D", n) if n >= 2 => FactorType::D(n),
            ("G", 2) => FactorType::G2,
            ("F", 4) => FactorType::F4,
            ("T", k) => FactorType::Torus(k),
            _ => return Err(unknown()),
        };
        out.push(f);
    }
    Ok(out)
}

/// Order of the Weyl group of a recognized label.
pub fn classical_weyl_order(label: &str) -> Option<u64> {
    parse_label(label).ok().map(|fs| fs.iter().map(FactorType::weyl_order).product())
}

pub struct Frame {
    pub ambient_dim: usize,
    pub scale: i64,
    pub simple_roots: Vec<Vec<i64>>,
}

fn unit(dim: usize, i: usize, k: i64) -> Vec<i64> {
    let mut v = vec![0; dim];
    v[i] = k;
    v
}

fn diff(dim: usize, i: usize, j: usize, k: i64) -> Vec<i64> {
    let mut v = vec![0; dim];
    v[i] = k;
    v[j] = -k;
    v
}

/// The orthonormal-coordinate realization of a factor, scaled so that all weights are integral.
///
/// - `A1`: R¹ with root 2 (the normalization of Sp(1)).
/// - `An`, n ≥ 2: R^{n+1} at scale n+1, roots e_i − e_{i+1}.
/// - `Bn`: scale 2, roots e_i − e_{i+1}, e_n.
/// - `Cn`: scale 1, roots e_i − e_{i+1}, 2e_n.
/// - `Dn`: scale 2, roots e_i − e_{i+1}, e_{n−1} + e_n.
/// - `G2`: R³ at scale 1, short (1,−1,0), long (−2,1,1).
/// - `F4`: R⁴ at scale 2, roots e₂−e₃, e₃−e₄, e₄, ½(e₁−e₂−e₃−e₄).
pub fn classical_frame(f: &FactorType) -> Result<Frame> {
    let frame = match *f {
        FactorType::A(1) => Frame { ambient_dim: 1, scale: 1, simple_roots: vec![vec![2]] },
        FactorType::A(n) => {
            let k = (n + 1) as i64;
            Frame { ambient_dim: n + 1, scale: k, simple_roots: (0..n).map(|i| diff(n + 1, i, i + 1, k)).collect() }
        }
        FactorType::B(n) => {
            let mut r: Vec<Vec<i64>> = (0..n - 1).map(|i| diff(n, i, i + 1, 2)).collect();
            r.push(unit(n, n - 1, 2));
            Frame { ambient_dim: n, scale: 2, simple_roots: r }
        }
        FactorType::C(n) => {
            let mut r: Vec<Vec<i64>> = (0..n - 1).map(|i| diff(n, i, i + 1, 1)).collect();
            r.push(unit(n, n - 1, 2));
            Frame { ambient_dim: n, scale: 1, simple_roots: r }
        }
        FactorType::D(n) => {
            let mut r: Vec<Vec<i64>> = (0..n - 1).map(|i| diff(n, i, i + 1, 2)).collect();
            let mut last = vec![0; n];
            last[n - 2] = 2;
            last[n - 1] = 2;
            r.push(last);
            Frame { ambient_dim: n, scale: 2, simple_roots: r }
        }
        FactorType::G2 => Frame { ambient_dim: 3, scale: 1, simple_roots: vec![vec![1, -1, 0], vec![-2, 1, 1]] },
        FactorType::F4 => Frame {
            ambient_dim: 4,
            scale: 2,
            simple_roots: vec![vec![0, 2, -2, 0], vec![0, 0, 2, -2], vec![0, 0, 0, 2], vec![1, -1, -1, -1]],
        },
        FactorType::Torus(k) => Frame { ambient_dim: k, scale: 1, simple_roots: vec![] },
    };
    Ok(frame)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels() {
        assert_eq!(parse_label("B4").unwrap(), vec![FactorType::B(4)]);
        assert_eq!(parse_label("A1xT1").unwrap(), vec![FactorType::A(1), FactorType::Torus(1)]);
        assert_eq!(parse_label("C2×A1").unwrap(), vec![FactorType::C(2), FactorType::A(1)]);
        assert_eq!(parse_label("T^2").unwrap(), vec![FactorType::Torus(2)]);
        assert!(parse_label("E8").is_err());
        assert!(parse_label("D1").is_err());
        assert_eq!(classical_weyl_order("F4"), Some(1152));
        assert_eq!(classical_weyl_order("B4"), Some(384));
        assert_eq!(classical_weyl_order("D4"), Some(192));
        assert_eq!(classical_weyl_order("C3"), Some(48));
        assert_eq!(classical_weyl_order("A1xA1"), Some(4));
    }
}
