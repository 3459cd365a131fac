//! Exact integer, rational and polynomial arithmetic.

pub mod factor;
pub mod integer;
pub mod linalg;
pub mod modp;
pub mod poly_fp;
pub mod poly_q;
pub mod rational;
pub mod resultant;

pub use factor::{factor_mod_p, is_irreducible};
pub use poly_fp::PolyFp;
pub use poly_q::PolyQ;
pub use rational::{format_rational, parse_rational, rat, ratio, Rational};
pub use resultant::{discriminant, resultant};
