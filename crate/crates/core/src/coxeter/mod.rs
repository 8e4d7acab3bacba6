//! Finite Coxeter groups: matrices, enumeration, and a braid-move oracle.

mod matrix;
mod system;
pub mod tits;

pub use matrix::{CoxeterMatrix, MAX_RANK};
pub use system::{CoxeterSystem, Elem, Side, DEFAULT_CAP};
