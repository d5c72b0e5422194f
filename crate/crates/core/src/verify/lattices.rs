//! Lattices obtained by adjoining roots: A2 inside G2, Dn inside Bn, and the F4 root lattice as
//! the union of two Spin(9) lattices.

use std::time::Instant;

use serde_json::{json, Value};

use super::{LemmaReport, Status};
use crate::error::Result;
use crate::rootsys::extension::{is_g2_long_pattern, is_half_pattern, is_unit_pattern};
use crate::rootsys::{build_root_datum, enumerate_extensions, ExtensionTarget, LatticeChoice};
use crate::zlinalg::{same_lattice, solve_integer, to_big, IntMatrix};

fn g2() -> Result<(bool, Value, Value)> {
    let a2 = build_root_datum("A2", LatticeChoice::Root)?;
    let rep = enumerate_extensions(&a2, ExtensionTarget::G2)?;
    let patterns = rep.candidates.iter().all(|v| is_g2_long_pattern(v));
    let ok = patterns && rep.candidates.len() == 6 && rep.extensions.len() == 1 && rep.extensions[0].root_count == 12;
    let counterexample = json!({
        "candidates": rep.candidates.len(),
        "extensions": rep.extensions.len(),
        "off_pattern": rep.candidates.iter().find(|v| !is_g2_long_pattern(v)).map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
    });
    Ok((ok, serde_json::to_value(&rep).expect("serializable"), counterexample))
}

/// `Dn` extends to `Bn` in one way up to symmetry, except `D4`, where triality gives a second.
fn b(n: usize) -> Result<(bool, Value, Value)> {
    let d = build_root_datum(&format!("D{n}"), LatticeChoice::Root)?;
    let rep = enumerate_extensions(&d, ExtensionTarget::B)?;
    let expected = if n == 4 { 2 } else { 1 };
    let patterns = rep.candidates.iter().all(|v| is_unit_pattern(v) || (n == 4 && is_half_pattern(v)));
    let ok =
        patterns && rep.classes_up_to_symmetry == expected && rep.extensions.iter().all(|e| e.root_count == 2 * n * n);
    let counterexample = json!({
        "classes_up_to_symmetry": rep.classes_up_to_symmetry,
        "expected": expected,
        "patterns_ok": patterns,
    });
    let mut w = serde_json::to_value(&rep).expect("serializable");
    w["raw_extensions"] = json!(rep.extensions.len());
    Ok((ok, w, counterexample))
}

/// In doubled coordinates, span(2e_i, −e₁−e₂−e₃+e₄) is the F4 root lattice.
fn f4_union() -> Result<(bool, Value, Value)> {
    let f4 = build_root_datum("F4", LatticeChoice::Root)?;
    let mut gens: Vec<Vec<i64>> = (0..4).map(|i| (0..4).map(|j| if i == j { 2 } else { 0 }).collect()).collect();
    gens.push(vec![-1, -1, -1, 1]);
    let union = IntMatrix::from_columns(4, &gens.iter().map(|g| to_big(g)).collect::<Vec<_>>());
    let roots: Vec<Vec<i64>> = f4.roots().iter().map(|r| f4.to_ambient(r)).collect();
    let outside = roots.iter().find(|r| solve_integer(&union, &to_big(r)).is_none());
    let root_lattice =
        IntMatrix::from_columns(4, &f4.simple_roots.iter().map(|r| to_big(&f4.to_ambient(r))).collect::<Vec<_>>());
    let equal = same_lattice(&union, &root_lattice);
    let ok = outside.is_none() && equal;
    let witnesses = json!({
        "generators": gens,
        "roots_checked": roots.len(),
        "same_as_root_lattice": equal,
    });
    Ok((ok, witnesses, json!({ "root_outside": outside })))
}

pub fn verify_lattice_extensions() -> Vec<LemmaReport> {
    let cases: [(&str, fn() -> Result<(bool, Value, Value)>); 5] = [
        ("lattice-g2", g2),
        ("lattice-b3", || b(3)),
        ("lattice-b4", || b(4)),
        ("lattice-b5", || b(5)),
        ("lattice-f4-union", f4_union),
    ];
    cases
        .iter()
        .map(|(id, f)| {
            let start = Instant::now();
            match f() {
                Ok((ok, w, c)) => LemmaReport::finish(id, ok, Status::Pass, w, c, start),
                Err(e) => LemmaReport::error(id, &e, start),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_lattice_lemmas_pass() {
        for r in verify_lattice_extensions() {
            assert_eq!(r.status, Status::Pass, "{r:?}");
        }
    }

    #[test]
    fn d4_has_three_raw_extensions() {
        let r = verify_lattice_extensions().into_iter().find(|r| r.lemma_id == "lattice-b4").unwrap();
        assert_eq!(r.witnesses["raw_extensions"], 3);
        assert_eq!(r.witnesses["classes_up_to_symmetry"], 2);
    }
}
