//! The JSON report: input echo, window metadata, `K⁰` and `K¹` blocks, the action table and
//! any lemma reports. Field order is fixed by the structs and maps are sorted, so equal inputs
//! give byte-identical output.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::diagram_file::{DiagramFile, Loaded};
use crate::charring::{LaurentPoly, OrbitBasis};
use crate::error::{Error, Result};
use crate::ktheory::{even_case, mv_presentation, odd_case, ActionEntry, Diagram, KPresentation};
use crate::mappingtorus::{kcircle_over, twisted_cokernel, TwistedSetup};
use crate::rootsys::Weight;
use crate::verify::LemmaReport;

pub const REPORT_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportFile {
    pub tool: String,
    pub version: String,
    pub report_version: String,
    pub input: DiagramFile,
    pub window: WindowMeta,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k0: Option<K0Block>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k1: Option<K1Block>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub action: Vec<ActionRow>,
    /// The even-sphere, odd-sphere or mapping-torus analysis.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub analysis: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lemmas: Vec<LemmaReport>,
    /// Whether every certificate in the report holds.
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowMeta {
    pub radius: i64,
    pub preimage_radius: i64,
    pub localize: i64,
    pub h_weights: usize,
    pub k_minus_weights: usize,
    pub k_plus_weights: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub exponent: Weight,
    pub coefficient: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct K0Element {
    pub minus: Vec<Term>,
    pub plus: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct K0Block {
    pub rank: usize,
    pub basis: Vec<K0Element>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct K1Block {
    pub group: String,
    pub free_rank: usize,
    pub invariant_factors: Vec<String>,
    /// Orbit representative of each generator.
    pub representatives: Vec<Weight>,
    /// Order of each generator, zero when free.
    pub orders: Vec<String>,
}

/// `k0 · k1`; `value` is absent when the product leaves the window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionRow {
    pub k0: usize,
    pub k1: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<Vec<String>>,
}

/// Overrides applied on top of the file's own settings.
#[derive(Clone, Debug, Default)]
pub struct ComputeOptions {
    pub radius: Option<i64>,
    pub localize: Option<i64>,
    /// Skip the action table (it is quadratic in the window size).
    pub skip_action: bool,
}

impl ReportFile {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(src: &str) -> Result<Self> {
        serde_json::from_str(src).map_err(|e| Error::Parse { line: e.line(), col: e.column(), msg: e.to_string() })
    }

    /// Short human-readable summary.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}: ", self.input.name);
        out.push_str(if self.certified { "certified\n" } else { "NOT certified\n" });
        let w = &self.window;
        let coeffs = if w.localize == 1 { "Z".to_string() } else { format!("Z[1/{}]", w.localize) };
        out.push_str(&format!("  window radius {} ({} weights for H), coefficients {coeffs}\n", w.radius, w.h_weights));
        if let Some(k0) = &self.k0 {
            out.push_str(&format!("  K^0: rank {} in the window\n", k0.rank));
        }
        if let Some(k1) = &self.k1 {
            out.push_str(&format!(
                "  K^1: free rank {}, torsion [{}]\n",
                k1.free_rank,
                k1.invariant_factors.iter().filter(|f| f.as_str() != "0").cloned().collect::<Vec<_>>().join(", ")
            ));
            let shown: Vec<String> = k1.representatives.iter().take(12).map(|r| format!("{r:?}")).collect();
            let more = if k1.representatives.len() > 12 { ", ..." } else { "" };
            out.push_str(&format!("  K^1 representatives: {}{more}\n", shown.join(", ")));
        }
        if !self.action.is_empty() {
            let escaped = self.action.iter().filter(|r| r.value.is_none()).count();
            out.push_str(&format!("  action table: {} entries, {escaped} leave the window\n", self.action.len()));
        }
        for l in &self.lemmas {
            out.push_str(&format!("  {}: {}\n", l.lemma_id, l.status));
        }
        out
    }
}

fn terms(p: &LaurentPoly) -> Vec<Term> {
    p.terms().iter().map(|(e, c)| Term { exponent: e.clone(), coefficient: c.to_string() }).collect()
}

fn strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

/// Runs the computation a file describes.
pub fn compute_report(loaded: &Loaded, opts: &ComputeOptions) -> Result<ReportFile> {
    let mut input = loaded.file.clone();
    if let Some(r) = opts.radius {
        input.window.radius = r;
    }
    let localize = opts.localize.unwrap_or_else(|| input.localization());
    if localize <= 0 {
        return Err(Error::InvalidLocalization(localize));
    }
    match (&loaded.diagram, &loaded.twist) {
        (Some(d), _) => diagram_report(input, d, localize, opts),
        (None, Some(s)) => twist_report(input, s, localize),
        (None, None) => Err(Error::Semantic("nothing to compute".into())),
    }
}

fn diagram_report(input: DiagramFile, d: &Diagram, localize: i64, opts: &ComputeOptions) -> Result<ReportFile> {
    let radius = input.window.radius;
    let preimage = input.window.preimage();
    let w = d.windows(radius, preimage)?;
    let window = WindowMeta {
        radius,
        preimage_radius: preimage,
        localize,
        h_weights: w.h.len(),
        k_minus_weights: w.k_minus.len(),
        k_plus_weights: w.k_plus.len(),
    };
    let odd = d.sphere_dims.iter().any(|s| s % 2 == 1);
    let (pres, analysis, certified) = if odd {
        let (p, r) = odd_case(d, &w)?;
        let c = r.certified;
        (p, serde_json::to_value(&r).expect("serializable"), c)
    } else if d.is_full_rank() {
        let (p, r) = even_case(d, &w)?;
        let c = r.certified;
        (p, serde_json::to_value(&r).expect("serializable"), c)
    } else {
        return Err(Error::Unsupported(
            "even spheres with K and H of different ranks are outside the supported cases".into(),
        ));
    };
    let pres = if opts.skip_action { pres } else { mv_presentation(d, &w)? };
    let k1 = localized_k1(&pres, localize)?;
    Ok(ReportFile {
        tool: "equivk".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        report_version: REPORT_VERSION.into(),
        input,
        window,
        k0: Some(k0_block(&pres)),
        k1: Some(k1),
        action: action_rows(&pres),
        analysis: Some(analysis),
        lemmas: Vec::new(),
        certified,
    })
}

fn k0_block(p: &KPresentation) -> K0Block {
    let basis = (0..p.k0_rank())
        .map(|i| {
            let (a, b) = p.k0_pair(i);
            K0Element { minus: terms(&a), plus: terms(&b) }
        })
        .collect();
    K0Block { rank: p.k0_rank(), basis }
}

fn localized_k1(p: &KPresentation, localize: i64) -> Result<K1Block> {
    let loc = crate::zlinalg::localized_cokernel(&p.f_minus.hstack(&p.f_plus), localize)?;
    let l = BigInt::from(localize);
    let keep: Vec<usize> = (0..p.k1_generator_count())
        .filter(|&j| {
            p.k1_orders[j] == BigInt::from(0)
                || !crate::zlinalg::strip_factors(&p.k1_orders[j], &l).eq(&BigInt::from(1))
        })
        .collect();
    Ok(K1Block {
        group: loc.to_string(),
        free_rank: loc.free_rank,
        invariant_factors: strings(&loc.invariant_factors()),
        representatives: keep.iter().map(|&j| p.rh.reps[p.k1_rows[j]].clone()).collect(),
        orders: keep.iter().map(|&j| p.k1_orders[j].to_string()).collect(),
    })
}

fn action_rows(p: &KPresentation) -> Vec<ActionRow> {
    p.action_table
        .iter()
        .map(|(&(k0, k1), e)| ActionRow {
            k0,
            k1,
            value: match e {
                ActionEntry::Value(v) => Some(strings(v)),
                ActionEntry::Escaped => None,
            },
        })
        .collect()
}

fn twist_report(input: DiagramFile, s: &TwistedSetup, localize: i64) -> Result<ReportFile> {
    let radius = input.window.radius;
    let w = crate::charring::make_window(&s.datum, &[(s.name.as_str(), &s.weyl)], radius)?;
    let tc = twisted_cokernel(s, &w, localize)?;
    let report = kcircle_over(s, &w, localize)?;
    let basis: &OrbitBasis = &tc.basis;
    let k0 = K0Block {
        rank: tc.fixed.len(),
        basis: tc
            .fixed
            .iter()
            .map(|c| {
                let p = basis.combination(c);
                K0Element { minus: terms(&p), plus: terms(&p) }
            })
            .collect(),
    };
    let k1 = K1Block {
        group: tc.presentation.to_string(),
        free_rank: tc.presentation.free_rank,
        invariant_factors: strings(&tc.presentation.invariant_factors()),
        representatives: tc.representatives().into_iter().cloned().collect(),
        orders: strings(&tc.orders),
    };
    let action = tc
        .action_table
        .iter()
        .map(|(&(k0, k1), e)| ActionRow {
            k0,
            k1,
            value: match e {
                ActionEntry::Value(v) => Some(strings(v)),
                ActionEntry::Escaped => None,
            },
        })
        .collect();
    Ok(ReportFile {
        tool: "equivk".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        report_version: REPORT_VERSION.into(),
        window: WindowMeta {
            radius,
            preimage_radius: radius,
            localize,
            h_weights: w.len(),
            k_minus_weights: w.len(),
            k_plus_weights: w.len(),
        },
        input,
        k0: Some(k0),
        k1: Some(k1),
        action,
        certified: report.certified,
        analysis: Some(serde_json::to_value(&report).expect("serializable")),
        lemmas: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::example;

    fn run(name: &str, opts: &ComputeOptions) -> ReportFile {
        let f = DiagramFile::parse(example(name).unwrap()).unwrap();
        compute_report(&f.load().unwrap(), opts).unwrap()
    }

    #[test]
    fn report_round_trips() {
        let r = run("sp2", &ComputeOptions { radius: Some(2), ..Default::default() });
        let json = r.to_json();
        assert_eq!(ReportFile::from_json(&json).unwrap(), r);
        assert_eq!(run("sp2", &ComputeOptions { radius: Some(2), ..Default::default() }).to_json(), json);
        assert!(r.certified);
        assert!(r.to_text().contains("certified"));
    }

    #[test]
    fn twist_report_localizes() {
        let r = run("so-n-so2-torus", &ComputeOptions::default());
        assert!(r.certified);
        let z = run("so-n-so2-torus", &ComputeOptions { localize: Some(1), ..Default::default() });
        assert!(!z.certified);
        assert_eq!(z.k1.unwrap().representatives.len(), 7);
    }

    #[test]
    fn bad_localization_is_rejected() {
        let f = DiagramFile::parse(example("sp2").unwrap()).unwrap();
        let err = compute_report(&f.load().unwrap(), &ComputeOptions { localize: Some(0), ..Default::default() });
        assert!(matches!(err, Err(Error::InvalidLocalization(0))));
    }
}
