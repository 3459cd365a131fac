//! Fixed points of parabolics and the Möbius frames that move them.

use crate::number_field::{FieldExt, FieldRef, NfElem};

use super::matrix::Mat2;

/// Fixed point of a parabolic on `P¹(k)`; `None` stands for `∞`.
pub fn fixed_point(k: &Mat2) -> Option<NfElem> {
    if k.c.is_zero() {
        return None;
    }
    let half = crate::algebra::ratio(1, 2);
    let s = k.trace().scale(&half);
    Some(&(&s - &k.d) * &k.c.inv().ok()?)
}

/// `(0 −1; 1 −ξ)`, sending `ξ` to `∞`.
pub fn to_infinity(xi: &NfElem) -> Mat2 {
    let f = xi.field();
    Mat2::raw(f.zero(), f.from_int(-1), f.one(), -xi)
}

/// Image of a point of `P¹` under a Möbius map (`None` is `∞`).
pub fn apply_point(m: &Mat2, z: Option<&NfElem>) -> Option<NfElem> {
    let (num, den) = match z {
        None => (m.a.clone(), m.c.clone()),
        Some(z) => (&(&m.a * z) + &m.b, &(&m.c * z) + &m.d),
    };
    if den.is_zero() {
        None
    } else {
        Some(&num * &den.inv().ok()?)
    }
}

/// Conjugator `C` with `C(from) = ∞`.
pub fn infinity_conjugator(field: &FieldRef, from: Option<&NfElem>) -> Mat2 {
    match from {
        None => Mat2::identity(field),
        Some(xi) => to_infinity(xi),
    }
}

/// Conjugator `C` with `C(from) = ∞` and `C(zero) = 0`, for distinct points.
pub fn frame_conjugator(field: &FieldRef, from: Option<&NfElem>, zero: Option<&NfElem>) -> Mat2 {
    let c1 = infinity_conjugator(field, from);
    match apply_point(&c1, zero) {
        Some(z) => Mat2::upper(&-&z).mul(&c1),
        None => c1,
    }
}
