//! The TOML diagram file: groups, embeddings, and either a diagram or a twisted setup.
//!
//! ```toml
//! name = "sp2"
//!
//! [[group]]
//! name = "Sp(2)"
//! label = "C2"
//! lattice = "standard"
//!
//! [[group]]
//! name = "Sp(1)xU(1)"
//! parent = "Sp(2)"
//! simple_roots = [[2, 0]]
//!
//! [diagram]
//! g = "Sp(2)"
//! k_minus = "Sp(1)xSp(1)"
//! k_plus = "Sp(1)xSp(1)"
//! h = "Sp(1)xU(1)"
//! sphere_dims = [2, 2]
//!
//! [window]
//! radius = 4
//! ```
//!
//! Subgroups listed with `parent` share the parent's frame and lattice; `simple_roots` are
//! ambient vectors in that frame. An embedding not listed defaults to the identity when the
//! ranks agree.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::charring::TorusMap;
use crate::error::{Error, Result};
use crate::ktheory::{Diagram, Group, Side};
use crate::mappingtorus::TwistedSetup;
use crate::rootsys::{build_root_datum, LatticeChoice, RootDatum};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramFile {
    pub name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub description: String,
    #[serde(default, rename = "group")]
    pub groups: Vec<GroupSpec>,
    #[serde(default, rename = "embedding", skip_serializing_if = "Vec::is_empty")]
    pub embeddings: Vec<EmbeddingSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagram: Option<DiagramSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<TwistSpec>,
    pub window: WindowSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<CoefficientSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub name: String,
    /// Cartan label such as `C2` or `A1xT1`; omitted for subgroups.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    /// `root`, `weight`, `standard` or `explicit`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<String>,
    /// Lattice basis vectors in the ambient frame, for `explicit`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parent: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simple_roots: Option<Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmbeddingSpec {
    /// The larger group; the map goes `X(from) → X(to)`.
    pub from: String,
    pub to: String,
    /// Lattice coordinates, `rank(to) × rank(from)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<i64>>>,
    /// Alternatively a map of actual coordinates `ambient / denominator`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ambient: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub denominator: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramSpec {
    pub g: String,
    pub k_minus: String,
    pub k_plus: String,
    pub h: String,
    pub sphere_dims: [usize; 2],
    /// Highest weight of a representation trivial on `H`, for odd spheres of dimension ≥ 3.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho_minus: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho_plus: Option<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwistSpec {
    pub group: String,
    pub automorphism: Vec<Vec<i64>>,
    pub order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowSpec {
    pub radius: i64,
    /// Radius of the `K` balls when `K` and `H` have different ranks; defaults to `2·radius + 2`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preimage_radius: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefficientSpec {
    /// Invert this integer; 1 means integer coefficients.
    pub localize: i64,
}

/// A parsed and validated file.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub file: DiagramFile,
    pub diagram: Option<Diagram>,
    pub twist: Option<TwistedSetup>,
}

impl WindowSpec {
    pub fn preimage(&self) -> i64 {
        self.preimage_radius.unwrap_or(2 * self.radius + 2)
    }
}

impl DiagramFile {
    pub fn parse(src: &str) -> Result<Self> {
        toml::from_str(src).map_err(|e| {
            let (line, col) = e.span().map_or((0, 0), |s| line_col(src, s.start));
            Error::Parse { line, col, msg: e.message().to_string() }
        })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("diagram files serialize")
    }

    pub fn localization(&self) -> i64 {
        self.coefficients.as_ref().map_or(1, |c| c.localize)
    }

    /// Builds the groups and the diagram or twist, checking every invariant.
    pub fn load(&self) -> Result<Loaded> {
        match (&self.diagram, &self.twist) {
            (None, None) => return Err(Error::Semantic("file needs a [diagram] or a [twist] section".into())),
            (Some(_), Some(_)) => {
                return Err(Error::Semantic("file has both a [diagram] and a [twist] section".into()))
            }
            _ => {}
        }
        if self.window.radius < 0 {
            return Err(Error::Semantic("window radius must be nonnegative".into()));
        }
        if self.localization() <= 0 {
            return Err(Error::InvalidLocalization(self.localization()));
        }
        let groups = self.build_groups()?;
        let get =
            |name: &str| groups.get(name).cloned().ok_or_else(|| Error::Semantic(format!("unknown group {name:?}")));
        let mut diagram = None;
        let mut twist = None;
        if let Some(d) = &self.diagram {
            let (g, km, kp, h) = (get(&d.g)?, get(&d.k_minus)?, get(&d.k_plus)?, get(&d.h)?);
            let map = |a: &Group, b: &Group| self.embedding(a, b);
            let mut built = Diagram::new(
                g.clone(),
                km.clone(),
                kp.clone(),
                h.clone(),
                map(&g, &km)?,
                map(&g, &kp)?,
                map(&km, &h)?,
                map(&kp, &h)?,
                d.sphere_dims,
            )?;
            for (side, rho) in [(Side::Minus, &d.rho_minus), (Side::Plus, &d.rho_plus)] {
                if let Some(hw) = rho {
                    built = built.with_rho(side, hw.clone())?;
                }
            }
            diagram = Some(built);
        }
        if let Some(t) = &self.twist {
            let k = get(&t.group)?;
            twist = Some(TwistedSetup::new(&k.name, k.datum, t.automorphism.clone(), t.order)?);
        }
        for e in &self.embeddings {
            get(&e.from)?;
            get(&e.to)?;
        }
        Ok(Loaded { file: self.clone(), diagram, twist })
    }

    fn build_groups(&self) -> Result<BTreeMap<String, Group>> {
        let mut out: BTreeMap<String, Group> = BTreeMap::new();
        for spec in &self.groups {
            if out.contains_key(&spec.name) {
                return Err(Error::Semantic(format!("group {:?} is defined twice", spec.name)));
            }
            let group = match (&spec.parent, &spec.label) {
                (Some(parent), None) => {
                    let p = out.get(parent).ok_or_else(|| {
                        Error::Semantic(format!("parent {parent:?} of {:?} must be defined first", spec.name))
                    })?;
                    if spec.lattice.is_some() || spec.basis.is_some() {
                        return Err(Error::Semantic(format!(
                            "subgroup {:?} inherits its lattice and cannot set one",
                            spec.name
                        )));
                    }
                    let roots = spec.simple_roots.clone().unwrap_or_default();
                    Group::subgroup(&spec.name, &p.datum, roots)?
                }
                (None, Some(label)) => {
                    if spec.simple_roots.is_some() {
                        return Err(Error::Semantic(format!(
                            "{:?}: simple_roots are only allowed with a parent",
                            spec.name
                        )));
                    }
                    Group::new(&spec.name, datum_for(spec, label)?)?
                }
                (Some(_), Some(_)) => {
                    return Err(Error::Semantic(format!("{:?} has both a label and a parent", spec.name)))
                }
                (None, None) => return Err(Error::Semantic(format!("{:?} needs a label or a parent", spec.name))),
            };
            out.insert(spec.name.clone(), group);
        }
        Ok(out)
    }

    fn embedding(&self, from: &Group, to: &Group) -> Result<TorusMap> {
        let found: Vec<&EmbeddingSpec> =
            self.embeddings.iter().filter(|e| e.from == from.name && e.to == to.name).collect();
        match found.as_slice() {
            [] if from.rank() == to.rank() => Ok(TorusMap::identity(from.rank())),
            [] => Err(Error::Semantic(format!(
                "no embedding listed from {:?} to {:?} and the ranks differ",
                from.name, to.name
            ))),
            [e] => match (&e.matrix, &e.ambient) {
                (Some(m), None) if e.denominator.is_none() => TorusMap::new(from.rank(), to.rank(), m.clone()),
                (None, Some(a)) => TorusMap::from_ambient(&from.datum, &to.datum, a, e.denominator.unwrap_or(1)),
                _ => Err(Error::Semantic(format!(
                    "embedding {:?} → {:?} needs exactly one of matrix or ambient (with optional denominator)",
                    e.from, e.to
                ))),
            },
            _ => Err(Error::Semantic(format!("embedding {:?} → {:?} is listed twice", from.name, to.name))),
        }
    }
}

fn datum_for(spec: &GroupSpec, label: &str) -> Result<RootDatum> {
    if label == "1" || label == "T0" {
        return Ok(RootDatum::trivial());
    }
    let lattice = match (spec.lattice.as_deref(), &spec.basis) {
        (Some("root"), None) => LatticeChoice::Root,
        (Some("weight"), None) => LatticeChoice::Weight,
        (Some("standard") | None, None) => LatticeChoice::Standard,
        (Some("explicit"), Some(b)) => LatticeChoice::Explicit(b.clone()),
        (Some("explicit"), None) => {
            return Err(Error::Semantic(format!("{:?}: explicit lattice needs a basis", spec.name)))
        }
        (_, Some(_)) => {
            return Err(Error::Semantic(format!("{:?}: a basis requires lattice = \"explicit\"", spec.name)))
        }
        (Some(other), None) => {
            return Err(Error::Semantic(format!(
                "{:?}: unknown lattice {other:?} (expected root, weight, standard or explicit)",
                spec.name
            )))
        }
    };
    build_root_datum(label, lattice)
}

/// One-based line and column of a byte offset.
fn line_col(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SP2: &str = r#"
name = "sp2"

[[group]]
name = "G"
label = "C2"
lattice = "standard"

[[group]]
name = "K"
parent = "G"
simple_roots = [[2, 0], [0, 2]]

[[group]]
name = "H"
parent = "G"
simple_roots = [[2, 0]]

[diagram]
g = "G"
k_minus = "K"
k_plus = "K"
h = "H"
sphere_dims = [2, 2]

[window]
radius = 3
"#;

    #[test]
    fn parses_and_loads() {
        let f = DiagramFile::parse(SP2).unwrap();
        let l = f.load().unwrap();
        assert!(l.diagram.unwrap().is_full_rank());
        assert_eq!(DiagramFile::parse(&f.to_toml()).unwrap(), f);
    }

    #[test]
    fn unknown_keys_have_positions() {
        let bad = SP2.replace("radius = 3", "radius = 3\nsize = 4");
        match DiagramFile::parse(&bad) {
            Err(Error::Parse { line, col, msg }) => {
                assert_eq!((line, col), (28, 1));
                assert!(msg.contains("size"), "{msg}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn semantic_errors_name_the_problem() {
        let bad = SP2.replace("sphere_dims = [2, 2]", "sphere_dims = [2, 3]");
        let err = DiagramFile::parse(&bad).unwrap().load().unwrap_err();
        assert!(matches!(err, Error::Semantic(_)), "{err}");
        let bad = SP2.replace("h = \"H\"", "h = \"Q\"");
        assert!(DiagramFile::parse(&bad).unwrap().load().unwrap_err().to_string().contains("\"Q\""));
        let bad = SP2.replace("[diagram]", "[diagramm]");
        assert!(matches!(DiagramFile::parse(&bad), Err(Error::Parse { .. })));
    }

    #[test]
    fn twist_files() {
        let src = r#"
name = "circle"
[[group]]
name = "SO(2)"
label = "T1"
[twist]
group = "SO(2)"
automorphism = [[-1]]
order = 2
[window]
radius = 2
[coefficients]
localize = 2
"#;
        let l = DiagramFile::parse(src).unwrap().load().unwrap();
        assert_eq!(l.twist.unwrap().order, 2);
        assert_eq!(l.file.localization(), 2);
    }
}
