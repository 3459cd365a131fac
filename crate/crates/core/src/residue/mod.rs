//! Good primes, residue class field maps and finite-field predicates.

mod map;
mod order;
mod primes;
mod span;

pub use map::{reduce, reduce_rational, residue_split, FFElem, MapRef, ResidueMap};
pub use order::{
    discrete_log, group_order_factors, has_order, in_cyclic, mult_order, order_divisible_by,
};
pub use primes::{good_primes, TrackedRing};
pub use span::{span_member, span_member_images};
