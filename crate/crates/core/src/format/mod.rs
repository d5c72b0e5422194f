//! Input and output formats: TOML diagram files and JSON reports, plus the bundled examples.

mod diagram_file;
mod report;

pub use diagram_file::{
    CoefficientSpec, DiagramFile, DiagramSpec, EmbeddingSpec, GroupSpec, Loaded, TwistSpec, WindowSpec,
};
pub use report::{
    compute_report, ActionRow, ComputeOptions, K0Block, K0Element, K1Block, ReportFile, Term, WindowMeta,
    REPORT_VERSION,
};

/// Bundled example files, by name.
pub const EXAMPLES: &[(&str, &str)] = &[
    ("sp2", include_str!("../../data/sp2.toml")),
    ("f4-spin9", include_str!("../../data/f4-spin9.toml")),
    ("su3-d6", include_str!("../../data/su3-d6.toml")),
    ("sp2-d8", include_str!("../../data/sp2-d8.toml")),
    ("g2-d12", include_str!("../../data/g2-d12.toml")),
    ("spin4-d4", include_str!("../../data/spin4-d4.toml")),
    ("so4-d4", include_str!("../../data/so4-d4.toml")),
    ("so-n-so2-torus", include_str!("../../data/so-n-so2-torus.toml")),
    ("suspension", include_str!("../../data/suspension.toml")),
];

pub fn example(name: &str) -> Option<&'static str> {
    EXAMPLES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

/// Parses and validates a bundled example.
pub fn load_example(name: &str) -> crate::Result<Loaded> {
    let src = example(name).ok_or_else(|| crate::Error::Semantic(format!("unknown example {name:?}")))?;
    DiagramFile::parse(src)?.load()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_example_loads() {
        for (name, src) in EXAMPLES {
            let f = DiagramFile::parse(src).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(&f.name, name);
            f.load().unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }
}
