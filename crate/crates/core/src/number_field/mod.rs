//! Number fields `ℚ[T]/(f)`: arithmetic, quadratic adjunction and complex embeddings.

mod adjoin;
mod element;
mod embedding;
mod field;
mod minpoly;
mod sqrt;

pub use adjoin::{adjoin_quadratic_root, Adjunction, FieldMap};
pub use element::{nf_arith, ArithOp, NfElem};
pub use embedding::{
    compare_modulus_to_one, complex_embedding, extend_embedding, isolate_roots, log_modulus,
    non_unit_embedding, recover_exponent, ComplexBox, EmbeddingHandle, ExponentMatch,
    BASE_PRECISION,
};
pub use field::{FieldExt, FieldRef, IrreducibilityCheck, NumberField};
pub use minpoly::min_poly_of;
pub use sqrt::{rational_sqrt, sqrt_in_field};
