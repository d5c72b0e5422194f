//! Compatibility of the coset representative sets of the isotropy Weyl groups.

use std::collections::BTreeSet;
use std::time::Instant;

use serde_json::{json, Value};

use super::{LemmaReport, Status};
use crate::error::{Error, Result};
use crate::rootsys::{
    build_root_datum, check_coset_compatibility, coset_representatives, enumerate_weyl, reflection_subsystem,
    LatticeChoice, PositiveSystem, RootDatum, Weight,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CosetCase {
    /// F4 with two Spin(9) isotropy groups meeting in Spin(8).
    F4,
    /// Sp(3) with Sp(2)×Sp(1) and Sp(1)×Sp(2) meeting in Sp(1)³.
    C3,
}

struct CaseData {
    id: &'static str,
    label: &'static str,
    lattice: LatticeChoice,
    /// Simple roots of K⁻, K⁺ and H, in ambient coordinates.
    subgroups: [(&'static str, Vec<Vec<i64>>); 3],
}

fn data(case: CosetCase) -> CaseData {
    match case {
        CosetCase::F4 => CaseData {
            id: "cosets-f4",
            label: "F4",
            lattice: LatticeChoice::Root,
            subgroups: [
                ("Spin(9)", vec![vec![2, -2, 0, 0], vec![0, 2, -2, 0], vec![0, 0, 2, -2], vec![0, 0, 0, 2]]),
                ("Spin(9)'", vec![vec![2, -2, 0, 0], vec![0, 2, -2, 0], vec![0, 0, 2, -2], vec![-1, -1, -1, 1]]),
                ("Spin(8)", vec![vec![2, -2, 0, 0], vec![0, 2, -2, 0], vec![0, 0, 2, -2], vec![0, 0, 2, 2]]),
            ],
        },
        CosetCase::C3 => CaseData {
            id: "cosets-c3",
            label: "C3",
            lattice: LatticeChoice::Standard,
            subgroups: [
                ("Sp(2)xSp(1)", vec![vec![1, -1, 0], vec![0, 2, 0], vec![0, 0, 2]]),
                ("Sp(1)xSp(2)", vec![vec![2, 0, 0], vec![0, 1, -1], vec![0, 0, 2]]),
                ("Sp(1)^3", vec![vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2]]),
            ],
        },
    }
}

fn weights(d: &RootDatum, amb: &[Vec<i64>]) -> Result<Vec<Weight>> {
    amb.iter().map(|a| d.from_ambient(a).ok_or_else(|| Error::LatticeMismatch(format!("{a:?} is not in X")))).collect()
}

fn check(case: CosetCase) -> Result<(bool, Value, Value)> {
    let c = data(case);
    let d = build_root_datum(c.label, c.lattice.clone())?;
    let w = enumerate_weyl(&d)?;
    let mut systems = vec![PositiveSystem::of(&d)];
    let mut orders = vec![w.order()];
    for (_, simple) in &c.subgroups {
        let sub = reflection_subsystem(&d, &weights(&d, simple)?)?;
        orders.push(sub.group.order());
        systems.push(sub.positive);
    }
    systems.push(PositiveSystem::empty());
    orders.push(1);
    let report = check_coset_compatibility(&d, &w, &systems)?;

    let names: Vec<&str> =
        std::iter::once(c.label).chain(c.subgroups.iter().map(|(n, _)| *n)).chain(std::iter::once("1")).collect();
    let index_ok: Vec<bool> =
        report.representative_sets.iter().zip(&orders).map(|(r, o)| r.len() * o == w.order()).collect();
    let whole_group_reps = coset_representatives(&d, &w, &systems[0])?;
    let sanity = whole_group_reps == vec![0];
    let minus: BTreeSet<usize> = report.representative_sets[1].iter().copied().collect();
    let plus: BTreeSet<usize> = report.representative_sets[2].iter().copied().collect();
    let intersection: Vec<usize> = minus.intersection(&plus).copied().collect();

    let ok = report.holds && sanity && index_ok.iter().all(|&b| b);
    let counterexample = if !report.holds {
        let bad = report.pairs.iter().find(|p| p.realized_by.is_none()).expect("a failing pair");
        json!({ "pair": [names[bad.j], names[bad.k]], "element": bad.witness })
    } else if !sanity {
        json!({ "whole_group_representatives": whole_group_reps })
    } else {
        json!({ "index_mismatch": names.iter().zip(&index_ok).filter(|(_, &b)| !b).map(|(n, _)| *n).collect::<Vec<_>>() })
    };
    let witnesses = json!({
        "group": c.label,
        "weyl_order": w.order(),
        "subgroups": names.iter().zip(&orders).zip(&report.representative_sets).map(|((n, o), r)| json!({
            "name": n,
            "weyl_order": o,
            "representatives": r.len(),
        })).collect::<Vec<_>>(),
        "minus_plus_intersection": intersection,
        "pairs": report.pairs,
    });
    Ok((ok, witnesses, counterexample))
}

pub fn verify_cosets(case: CosetCase) -> LemmaReport {
    let start = Instant::now();
    let id = data(case).id;
    match check(case) {
        Ok((ok, w, c)) => LemmaReport::finish(id, ok, Status::Pass, w, c, start),
        Err(e) => LemmaReport::error(id, &e, start),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_representatives() {
        let r = verify_cosets(CosetCase::F4);
        assert_eq!(r.status, Status::Pass, "{r:?}");
        let subs = r.witnesses["subgroups"].as_array().unwrap();
        assert_eq!(subs[1]["representatives"], 3);
        assert_eq!(subs[2]["representatives"], 3);
        assert_eq!(r.witnesses["minus_plus_intersection"], json!([0]));
    }

    #[test]
    fn c3_holds() {
        let r = verify_cosets(CosetCase::C3);
        assert_eq!(r.status, Status::Pass, "{r:?}");
        assert_eq!(r.witnesses["weyl_order"], 48);
    }
}
