//! `M_0(G)` and `B̃_0(G) = M(G)/M_0(G)`, with the structural cross-checks:
//! the five-term sequence, the class-2 reduction, Blackburn–Evens and
//! Frobenius groups.

mod class2;
mod fiveterm;
mod frobenius;
mod m0;

pub use class2::{blackburn_evens_multiplier_order, class2_check, Class2Report};
pub use fiveterm::{five_term_check, Check, FiveTermReport};
pub use frobenius::{frobenius_checks, FrobeniusReport};
pub use m0::{
    bogomolov_multiplier, m0_lattice, m0_lattice_classes, m0_lattice_pairs, BogomolovReport, Method,
};
