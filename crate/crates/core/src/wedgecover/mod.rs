//! The tails cover of a polycyclic presentation, which realizes `F/[R,F]`.
//! Its derived subgroup is `G ∧ G`, and the torsion of its tail subgroup is
//! the Schur multiplier.

mod cover;
mod exterior;
mod table;

pub use cover::{build_cover, CoverElement, TailedCover};
pub use exterior::{ExtSquareData, DEFAULT_COVER_BOUND};
pub use table::{evaluate_wedge_word, WedgeFactor, WedgeTable};
