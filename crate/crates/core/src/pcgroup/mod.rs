//! Polycyclic presentations, collection, and enumeration-backed structure.

mod collect;
mod group;
mod presentation;
mod quotient;

pub use collect::GroupElement;
pub use group::{Abelianization, ConjugacyClass, PcGroup, Subgroup, DEFAULT_ELEMENT_BOUND};
pub use presentation::{parse_presentation, render_word, Letter, NormalWord, PcPresentation, Word};
pub use quotient::Quotient;
