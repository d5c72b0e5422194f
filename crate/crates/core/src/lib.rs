//! Exact computation of equivariant K-theory for cohomogeneity-one spaces.
//!
//! Everything is integer arithmetic on root data: Weyl groups are explicit matrix groups,
//! representation rings are Weyl-invariant Laurent polynomials, and K-groups come out of
//! Smith normal forms over finite weight windows.

pub mod charring;
pub mod error;
pub mod format;
pub mod ktheory;
pub mod mappingtorus;
pub mod rootsys;
pub mod verify;
pub mod zlinalg;

pub use error::{Error, Result};
pub use zlinalg::{AbelianPresentation, IntMatrix, LocalizedScalar, SnfResult};
