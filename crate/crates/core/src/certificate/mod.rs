//! Portable separation certificates and their independent verifier.

mod finite;
mod schema;
mod verify;

pub use finite::{subgroup_closure, FMat, FiniteField, FiniteRing};
pub use schema::{
    canonical_json, json_bigint, json_u64, parse, problem_digest, serialize, Auxiliary, Claim,
    ResidueRingSpec, SeparationCertificate, CERTIFICATE_VERSION,
};
pub use verify::{verify, whole_group_oracle, VerificationReport};
