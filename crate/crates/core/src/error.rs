use thiserror::Error;

/// Everything that can go wrong in the library. Variants name the violated invariant.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("localization base must be positive, got {0}")]
    InvalidLocalization(i64),
    #[error("invalid root data: {0}")]
    InvalidRootData(String),
    #[error("lattice is not reflection-stable: {0}")]
    LatticeNotStable(String),
    #[error("Weyl group closure exceeded {0} elements")]
    WeylClosureBound(usize),
    #[error("root subsystem not contained in ambient roots: {0}")]
    NotSubsystem(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),
    #[error("non-exact division: {0}")]
    InexactDivision(String),
    #[error("lattice mismatch: {0}")]
    LatticeMismatch(String),
    #[error("window is not stable: {0}")]
    WindowNotStable(String),
    #[error("product leaves the window: {0}")]
    WindowEscape(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("certification failed: {0}")]
    Certification(String),
    #[error("no strictly dominant lattice weight within search bound {0}")]
    NoStrictlyDominant(i64),
    #[error("{line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("invalid diagram: {0}")]
    Semantic(String),
}

pub type Result<T> = std::result::Result<T, Error>;
