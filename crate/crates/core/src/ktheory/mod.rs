//! Equivariant K-theory of double mapping cylinders from representation rings.

pub mod bredon;
pub mod diagram;
pub mod even;
pub mod factor;
pub mod odd;
pub mod presentation;

pub use bredon::{bredon_pushout, BredonResult};
pub use diagram::{check_rank_two, formality_rank_check, Diagram, DiagramWindows, Group, Side};
pub use even::{even_case, EvenCaseReport};
pub use factor::{factor_diagram, factor_round_trip, CentralSplit, Cofactor, RoundTrip};
pub use odd::{odd_case, OddCaseReport, OddShape};
pub use presentation::{
    k1_module_action, mv_presentation, mv_presentation_without_action, ActionEntry, GradedElement, KPresentation,
};

#[cfg(test)]
mod tests;
