//! Congruence certificates for separating an element of an SL(2) matrix group over a number
//! field from a double coset of abelian subgroups, from an abelian subgroup, or from every
//! conjugate of a parabolic subgroup, together with an independent brute-force verifier.

pub mod algebra;
pub mod budget;
pub mod certificate;
pub mod doublecoset;
pub mod error;
pub mod mobius;
pub mod number_field;
pub mod residue;
pub mod separation;

pub use budget::SearchBudget;
pub use error::{Error, Result};
