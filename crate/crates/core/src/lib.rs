//! Exact computation in Iwahori–Hecke algebras with unequal parameters and
//! in quasi-split foldings of finite Coxeter systems.

pub mod coxeter;
pub mod error;
pub mod folding;
pub mod grothendieck;
pub mod group;
pub mod hecke;
pub mod laurent;

pub use coxeter::{CoxeterMatrix, CoxeterSystem, Elem, Side};
pub use error::{Error, ParseError, Result};
pub use laurent::LaurentPoly;
