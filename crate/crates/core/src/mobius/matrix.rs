//! Determinant-one 2×2 matrices over a number field.

use std::fmt;

use crate::error::{Error, Result};
use crate::number_field::{FieldExt, FieldMap, FieldRef, NfElem};

/// A 2×2 matrix of determinant 1 over a number field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub a: NfElem,
    pub b: NfElem,
    pub c: NfElem,
    pub d: NfElem,
}

impl Mat2 {
    pub fn new(a: NfElem, b: NfElem, c: NfElem, d: NfElem) -> Result<Self> {
        if !(a.same_field(&b) && a.same_field(&c) && a.same_field(&d)) {
            return Err(Error::FieldMismatch);
        }
        let m = Mat2 { a, b, c, d };
        if !m.det().is_one() {
            return Err(Error::InvalidInput("determinant is not 1".into()));
        }
        Ok(m)
    }

    /// Construction without the determinant check, for intermediate products known to be in SL(2).
    pub(crate) fn raw(a: NfElem, b: NfElem, c: NfElem, d: NfElem) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn from_ints(field: &FieldRef, e: [[i64; 2]; 2]) -> Result<Self> {
        Self::new(
            field.from_int(e[0][0]),
            field.from_int(e[0][1]),
            field.from_int(e[1][0]),
            field.from_int(e[1][1]),
        )
    }

    pub fn identity(field: &FieldRef) -> Self {
        Mat2::raw(field.one(), field.zero(), field.zero(), field.one())
    }

    pub fn diag(lambda: &NfElem) -> Result<Self> {
        let f = lambda.field();
        Ok(Mat2::raw(lambda.clone(), f.zero(), f.zero(), lambda.inv()?))
    }

    pub fn upper(tau: &NfElem) -> Self {
        let f = tau.field();
        Mat2::raw(f.one(), tau.clone(), f.zero(), f.one())
    }

    pub fn lower(w: &NfElem) -> Self {
        let f = w.field();
        Mat2::raw(f.one(), f.zero(), w.clone(), f.one())
    }

    pub fn field(&self) -> &FieldRef {
        self.a.field()
    }

    pub fn entries(&self) -> [&NfElem; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn det(&self) -> NfElem {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    pub fn trace(&self) -> NfElem {
        &self.a + &self.d
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2::raw(
            &(&self.a * &o.a) + &(&self.b * &o.c),
            &(&self.a * &o.b) + &(&self.b * &o.d),
            &(&self.c * &o.a) + &(&self.d * &o.c),
            &(&self.c * &o.b) + &(&self.d * &o.d),
        )
    }

    /// Inverse of a determinant-1 matrix.
    pub fn inv(&self) -> Mat2 {
        Mat2::raw(self.d.clone(), -&self.b, -&self.c, self.a.clone())
    }

    pub fn neg(&self) -> Mat2 {
        Mat2::raw(-&self.a, -&self.b, -&self.c, -&self.d)
    }

    pub fn pow(&self, e: i64) -> Mat2 {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Mat2::identity(self.field());
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        acc
    }

    /// `C · self · C⁻¹`.
    pub fn conj(&self, c: &Mat2) -> Mat2 {
        c.mul(self).mul(&c.inv())
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.d.is_one() && self.b.is_zero() && self.c.is_zero()
    }

    pub fn is_pm_identity(&self) -> bool {
        self.is_identity() || self.neg().is_identity()
    }

    /// Equality, up to sign when `projective`.
    pub fn eq_mod_sign(&self, o: &Mat2, projective: bool) -> bool {
        self == o || (projective && self == &o.neg())
    }

    pub fn commutes_with(&self, o: &Mat2) -> bool {
        self.mul(o) == o.mul(self)
    }

    pub fn map_field(&self, map: &FieldMap) -> Mat2 {
        Mat2::raw(
            map.apply(&self.a),
            map.apply(&self.b),
            map.apply(&self.c),
            map.apply(&self.d),
        )
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}
