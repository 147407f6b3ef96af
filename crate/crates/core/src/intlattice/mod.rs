//! Exact integer lattice arithmetic: Hermite and Smith normal forms,
//! lattice membership, sums, saturation and abelian quotient invariants.

mod lattice;
mod matrix;

pub use lattice::{
    index, left_kernel, quotient_invariants, IntegerLattice, InvariantList, LatticeIndex,
};
pub use matrix::{det, diagonal, hnf, snf, unimodular_inverse, IntMatrix};
