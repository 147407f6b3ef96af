//! Schur multipliers, nonabelian exterior squares and Bogomolov multipliers
//! of finite solvable groups given by polycyclic presentations.

pub mod bogomolov;
pub mod catalog;
pub mod error;
pub mod intlattice;
pub mod pcgroup;
pub mod verify;
pub mod wedgecover;

pub use error::{Error, Result};
