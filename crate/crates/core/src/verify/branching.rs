//! Restrictions of characters along the inclusions with odd-dimensional sphere quotients.

use std::time::Instant;

use num_bigint::BigInt;
use serde_json::{json, Value};

use super::{LemmaReport, Status};
use crate::charring::{restrict, weyl_character, LaurentPoly, TorusMap};
use crate::error::{Error, Result};
use crate::rootsys::{build_root_datum, dominant_representative, enumerate_weyl, LatticeChoice, RootDatum, Weight};

/// `restrict(χ_hw) = Σ mult · χ_μ`, weights in ambient coordinates.
struct Identity {
    name: &'static str,
    hw: Vec<i64>,
    rhs: Vec<(i64, Vec<i64>)>,
}

struct Family {
    id: &'static str,
    source: (&'static str, &'static str, LatticeChoice),
    target: (&'static str, &'static str, LatticeChoice),
    /// Map of actual coordinates with its denominator; `None` for a rank-zero target.
    ambient: Option<(Vec<Vec<i64>>, i64)>,
    identities: Vec<Identity>,
}

fn families() -> Vec<Family> {
    use LatticeChoice::*;
    let g2 = build_root_datum("G2", Standard).expect("G2 builds");
    let g2_amb = |x: &[i64]| g2.to_ambient(&dominant_representative(&g2, &g2.from_ambient(x).expect("G2 root")));
    let short = g2_amb(&[1, -1, 0]);
    let long = g2_amb(&[-2, 1, 1]);
    vec![
        Family {
            id: "branching-sp",
            source: ("Sp(2)", "C2", Standard),
            target: ("Sp(1)", "A1", Standard),
            ambient: Some((vec![vec![0, 1]], 1)),
            identities: vec![Identity { name: "σ ↦ σ + 2", hw: vec![1, 0], rhs: vec![(1, vec![1]), (2, vec![0])] }],
        },
        Family {
            id: "branching-su",
            source: ("SU(3)", "A2", Weight),
            target: ("SU(2)", "A1", Weight),
            ambient: Some((vec![vec![1, -1, 0]], 1)),
            identities: vec![Identity {
                name: "σ ↦ σ + 1",
                hw: vec![2, -1, -1],
                rhs: vec![(1, vec![1]), (1, vec![0])],
            }],
        },
        Family {
            id: "branching-su2-point",
            source: ("SU(2)", "A1", Weight),
            target: ("1", "1", Root),
            ambient: None,
            identities: vec![Identity { name: "σ ↦ 2", hw: vec![1], rhs: vec![(2, vec![])] }],
        },
        Family {
            id: "branching-spin-even",
            source: ("Spin(8)", "D4", Weight),
            target: ("Spin(7)", "B3", Weight),
            ambient: Some((vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0]], 1)),
            identities: vec![
                Identity {
                    name: "σ ↦ σ + 1", hw: vec![2, 0, 0, 0], rhs: vec![(1, vec![2, 0, 0]), (1, vec![0, 0, 0])]
                },
                Identity { name: "Δ+ ↦ Δ", hw: vec![1, 1, 1, 1], rhs: vec![(1, vec![1, 1, 1])] },
                Identity { name: "Δ- ↦ Δ", hw: vec![1, 1, 1, -1], rhs: vec![(1, vec![1, 1, 1])] },
            ],
        },
        Family {
            id: "branching-g2",
            source: ("Spin(7)", "B3", Weight),
            target: ("G2", "G2", Standard),
            ambient: Some((vec![vec![1, 0, -1], vec![-1, 1, 0], vec![0, -1, 1]], 1)),
            identities: vec![
                Identity {
                    name: "δ ↦ 1 + σ", hw: vec![1, 1, 1], rhs: vec![(1, vec![0, 0, 0]), (1, short.clone())]
                },
                Identity { name: "λ²σ ↦ σ + Ad", hw: vec![2, 2, 0], rhs: vec![(1, short), (1, long)] },
            ],
        },
        Family {
            id: "branching-spin9",
            source: ("Spin(9)", "B4", Weight),
            target: ("Spin(7)", "B3", Weight),
            // the standard basis vectors go to four of the spin weights of Spin(7)
            ambient: Some((vec![vec![1, 1, -1, -1], vec![1, -1, 1, -1], vec![1, -1, -1, 1]], 2)),
            identities: vec![
                Identity {
                    name: "Δ ↦ δ + σ + 1",
                    hw: vec![1, 1, 1, 1],
                    rhs: vec![(1, vec![1, 1, 1]), (1, vec![2, 0, 0]), (1, vec![0, 0, 0])],
                },
                Identity {
                    name: "σ ↦ δ + 1", hw: vec![2, 0, 0, 0], rhs: vec![(1, vec![1, 1, 1]), (1, vec![0, 0, 0])]
                },
            ],
        },
    ]
}

fn datum(label: &str, lattice: &LatticeChoice) -> Result<RootDatum> {
    if label == "1" {
        return Ok(RootDatum::trivial());
    }
    build_root_datum(label, lattice.clone())
}

fn weight(d: &RootDatum, amb: &[i64]) -> Result<Weight> {
    d.from_ambient(amb).ok_or_else(|| Error::LatticeMismatch(format!("{amb:?} is not in the lattice of {}", d.label)))
}

fn character(d: &RootDatum, amb: &[i64]) -> Result<LaurentPoly> {
    if d.rank == 0 {
        return Ok(LaurentPoly::one(0));
    }
    let w = enumerate_weyl(d)?;
    weyl_character(d, &w, &weight(d, amb)?)
}

fn check_family(f: &Family) -> Result<(bool, Value, Value)> {
    let src = datum(f.source.1, &f.source.2)?;
    let dst = datum(f.target.1, &f.target.2)?;
    let map = match &f.ambient {
        Some((m, den)) => TorusMap::from_ambient(&src, &dst, m, *den)?,
        None => TorusMap::new(src.rank, 0, Vec::new())?,
    };
    let mut rows = Vec::new();
    let mut counterexample = Value::Null;
    let mut ok = true;
    for id in &f.identities {
        let lhs = restrict(&character(&src, &id.hw)?, &map)?;
        let mut rhs = LaurentPoly::zero(dst.rank);
        for (m, hw) in &id.rhs {
            rhs = rhs.add(&character(&dst, hw)?.scale(&BigInt::from(*m)))?;
        }
        let holds = lhs == rhs;
        let dims = (lhs.coefficient_sum(), rhs.coefficient_sum());
        if !holds && counterexample.is_null() {
            let diff = lhs.sub(&rhs)?;
            counterexample = json!({
                "identity": id.name,
                "difference": diff.terms().iter().map(|(e, c)| json!([e, c.to_string()])).collect::<Vec<_>>(),
            });
        }
        ok &= holds && dims.0 == dims.1;
        rows.push(json!({
            "identity": id.name,
            "holds": holds,
            "dimension": dims.0.to_string(),
            "image_dimension": dims.1.to_string(),
            "terms": lhs.len(),
        }));
    }
    let witnesses = json!({ "source": f.source.0, "target": f.target.0, "identities": rows });
    Ok((ok, witnesses, counterexample))
}

/// Checks every listed restriction identity by exact character computation.
pub fn verify_branching_table() -> Vec<LemmaReport> {
    families()
        .iter()
        .map(|f| {
            let start = Instant::now();
            match check_family(f) {
                Ok((ok, w, c)) => LemmaReport::finish(f.id, ok, Status::Pass, w, c, start),
                Err(e) => LemmaReport::error(f.id, &e, start),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn whole_table_holds() {
        for r in verify_branching_table() {
            assert_eq!(r.status, Status::Pass, "{r:?}");
        }
    }

    #[test]
    fn a_wrong_identity_fails_with_a_witness() {
        let mut f = families().remove(0);
        f.identities[0].rhs = vec![(1, vec![1]), (1, vec![0])];
        let (ok, _, c) = check_family(&f).unwrap();
        assert!(!ok);
        assert!(c.get("difference").is_some());
    }
}
