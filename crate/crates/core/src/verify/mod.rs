//! Finite checks of the lemmas the K-theory computations rest on, each producing a report with
//! witnesses.

mod branching;
mod cosets;
mod dihedral;
mod lattices;

use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};

pub use branching::verify_branching_table;
pub use cosets::{verify_cosets, CosetCase};
pub use dihedral::{
    verify_dihedral_case, verify_dihedral_cases, verify_dihedral_classification, verify_even_f4, verify_mapping_torus,
    verify_not_free_so4, verify_weyl_orders, DIHEDRAL_CASES,
};
pub use lattices::verify_lattice_extensions;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// Every check passed, but the claim concerns an infinite ring and only a window was checked.
    WindowLimited,
}

impl Status {
    pub fn is_success(self) -> bool {
        self != Status::Fail
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::WindowLimited => "window-limited",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LemmaReport {
    pub lemma_id: String,
    pub status: Status,
    /// Always has a `counterexample` entry when the status is `fail`.
    pub witnesses: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

impl LemmaReport {
    /// `status` on success; on failure the counterexample is attached to the witnesses.
    fn finish(
        id: &str,
        ok: bool,
        success: Status,
        mut witnesses: Value,
        counterexample: Value,
        start: Instant,
    ) -> Self {
        let status = if ok { success } else { Status::Fail };
        if !ok {
            let c = if counterexample.is_null() { json!("unspecified") } else { counterexample };
            witnesses.as_object_mut().expect("witnesses are objects").insert("counterexample".into(), c);
        }
        LemmaReport {
            lemma_id: id.to_string(),
            status,
            witnesses,
            runtime_ms: Some(start.elapsed().as_millis() as u64),
        }
    }

    fn error(id: &str, e: &Error, start: Instant) -> Self {
        Self::finish(id, false, Status::Pass, json!({}), json!({ "error": e.to_string() }), start)
    }
}

/// Every runnable lemma id, in suite order.
pub const LEMMA_IDS: &[&str] = &[
    "weyl-orders",
    "cosets-f4",
    "cosets-c3",
    "lattice-g2",
    "lattice-b3",
    "lattice-b4",
    "lattice-b5",
    "lattice-f4-union",
    "branching-sp",
    "branching-su",
    "branching-su2-point",
    "branching-spin-even",
    "branching-g2",
    "branching-spin9",
    "dihedral-classification",
    "dihedral-d4",
    "dihedral-d6",
    "dihedral-d8",
    "dihedral-d12",
    "not-free-so4",
    "mapping-torus-so2",
    "even-f4",
];

/// Group ids that expand to several lemmas.
pub const LEMMA_GROUPS: &[&str] = &["all", "cosets", "lattice", "branching", "dihedral"];

/// Runs one lemma id or a group id.
pub fn run(id: &str) -> Result<Vec<LemmaReport>> {
    let prefixed = |p: &str| -> Vec<&str> { LEMMA_IDS.iter().copied().filter(|i| i.starts_with(p)).collect() };
    let ids: Vec<&str> = match id {
        "all" => LEMMA_IDS.to_vec(),
        "cosets" => prefixed("cosets-"),
        "lattice" => prefixed("lattice-"),
        "branching" => prefixed("branching-"),
        "dihedral" => prefixed("dihedral-"),
        other if LEMMA_IDS.contains(&other) => vec![other],
        other => return Err(Error::Semantic(format!("unknown lemma id {other:?}"))),
    };
    let mut out = Vec::new();
    // several ids share one computation; run each family once
    let mut branching: Option<Vec<LemmaReport>> = None;
    let mut lattices: Option<Vec<LemmaReport>> = None;
    for id in ids {
        let report = match id {
            "weyl-orders" => verify_weyl_orders(),
            "cosets-f4" => verify_cosets(CosetCase::F4),
            "cosets-c3" => verify_cosets(CosetCase::C3),
            i if i.starts_with("lattice-") => {
                let all = lattices.get_or_insert_with(verify_lattice_extensions);
                all.iter().find(|r| r.lemma_id == i).cloned().expect("every lattice id is produced")
            }
            i if i.starts_with("branching-") => {
                let all = branching.get_or_insert_with(verify_branching_table);
                all.iter().find(|r| r.lemma_id == i).cloned().expect("every branching id is produced")
            }
            "dihedral-classification" => verify_dihedral_classification(),
            i if i.starts_with("dihedral-") => {
                let (_, file) = DIHEDRAL_CASES.iter().find(|(l, _)| *l == i).expect("listed case");
                verify_dihedral_case(i, file, None)
            }
            "not-free-so4" => verify_not_free_so4(),
            "mapping-torus-so2" => verify_mapping_torus(),
            "even-f4" => verify_even_f4(None),
            _ => unreachable!("ids come from LEMMA_IDS"),
        };
        out.push(report);
    }
    Ok(out)
}
