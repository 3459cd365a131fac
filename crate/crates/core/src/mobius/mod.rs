//! `SL(2)` matrices over number fields: classification, diagonalization and the
//! conjugations that put pairs of subgroups into normal form.

mod classify;
mod matrix;
mod normalize;
mod parabolic;
mod subgroup;

pub use classify::{classify, diagonalize, Diagonalization, MatrixClass};
pub use matrix::Mat2;
pub use normalize::{case_for, normalize_case, CaseData, CaseId, NormalizedProblem};
pub use parabolic::{apply_point, fixed_point, frame_conjugator, infinity_conjugator, to_infinity};
pub use subgroup::{translation, SubgroupKind, SubgroupSpec};
