//! Double-coset separation: the case engines, abelian-subgroup separation, conjugacy
//! distinguishing for parabolics and the exact membership probe.

mod cases;
mod context;
mod dispatch;
mod problem;
mod subgroup_ops;

pub use dispatch::{membership_probe, reassemble, separate_double_coset};
pub use problem::{
    elem_from_json, elem_to_json, field_from_json, field_to_json, mat_from_json, mat_to_json,
    spec_from_json, spec_to_json, Outcome, Problem, UnsupportedReason,
};
pub use subgroup_ops::{
    distinguish_conj_parabolic, sep_from_cyclic_loxodromic, sep_from_cyclic_parabolic,
    sep_from_maximal_abelian, separate_subgroup,
};
