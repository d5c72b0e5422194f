//! Root data, Weyl groups, positive systems and the lattice combinatorics built on them.

pub mod bounds;
mod datum;
pub mod dihedral;
pub mod dominance;
pub mod extension;
pub mod frames;
pub mod subsys;
mod weyl;

pub use datum::{apply, build_root_datum, dot, neg, LatticeChoice, RootDatum, Weight, CLOSURE_BOUND};
pub use dihedral::{classify_dihedral_pairs, DihedralPair};
pub use dominance::{
    dominant_chamber_test, dominant_representative, is_dominant, is_strictly_dominant, minimal_strongly_dominant,
    Chamber, ShiftCertificate,
};
pub use extension::{enumerate_extensions, ExtensionReport, ExtensionTarget};
pub use frames::classical_weyl_order;
pub use subsys::{
    check_coset_compatibility, coset_representatives, reflection_subsystem, CosetCompatibilityReport, PositiveSystem,
    Subsystem,
};
pub use weyl::{enumerate_weyl, identity, mat_mul, matrix_order, WeylGroup};
