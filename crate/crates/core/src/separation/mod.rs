//! Order-constrained prime search, multiplicative power separation and additive lattice
//! separation.

mod additive;
mod order_prime;
mod power;

pub use additive::{
    rational_coordinates, separate_additive, separate_from_lattice, AdditiveBranch,
    AdditiveOutcome, AdditiveSeparation,
};
pub use order_prime::{find_order_prime, is_root_of_unity, OrderMode, OrderPrimeResult};
pub use power::{exact_power_exponent, separate_power, PowerOutcome, PowerSeparation};
