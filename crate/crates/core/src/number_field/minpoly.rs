//! Minimal polynomials of field elements.

use num_traits::One;

use crate::algebra::{linalg, PolyQ, Rational};

use super::element::NfElem;
use super::field::FieldExt;

/// Monic minimal polynomial of `x` over ℚ, from the first linear dependence among its powers.
pub fn min_poly_of(x: &NfElem) -> PolyQ {
    let field = x.field();
    let mut current = field.one();
    let mut powers: Vec<Vec<Rational>> = vec![current.coeffs().to_vec()];
    for _ in 1..=field.degree() {
        current = &current * x;
        let target = current.coeffs().to_vec();
        if let Some(sol) = linalg::solve_columns_q(&powers, &target) {
            let mut coeffs: Vec<Rational> = sol.into_iter().map(|c| -c).collect();
            coeffs.push(Rational::one());
            return PolyQ::new(coeffs);
        }
        powers.push(target);
    }
    unreachable!("powers up to the field degree are always dependent")
}
