//! Weighted Grothendieck group computations: cyclotomic scalars, class
//! functions, character-twist quotients, trace specialization of
//! equivariant decompositions, and `sl_2` plethysm coefficients.

pub mod character;
pub mod cyclo;
pub mod decomp;
pub mod plethysm;
pub mod quotient;

pub use character::{character, CharacterKind, ClassFunction};
pub use cyclo::CycloScalar;
pub use decomp::{
    compare_folded_product, compare_sides, element_stabilizer, forget_specialize, trace_specialize, CompareReport,
    DecompEntry, EntrySpec, EquivDecomp,
};
pub use plethysm::{dihedral_equal_coeffs, sl2_tensor_decompose, subset_fixed_counts};
pub use quotient::{weighted_basis_abelian, weighted_quotient, GSetDatum, GSetOrbit, QuotientBasis};
