//! Field elements as reduced power-basis vectors.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::algebra::{format_rational, PolyQ, Rational};
use crate::error::{Error, Result};

use super::field::{FieldExt, FieldRef};

/// An element of a number field in power-basis coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NfElem {
    field: FieldRef,
    coeffs: Vec<Rational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl NfElem {
    pub(crate) fn from_parts(field: FieldRef, coeffs: Vec<Rational>) -> Self {
        debug_assert_eq!(coeffs.len(), field.degree());
        NfElem { field, coeffs }
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn to_poly(&self) -> PolyQ {
        PolyQ::new(self.coeffs.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then(|| &self.coeffs[0])
    }

    pub fn same_field(&self, other: &NfElem) -> bool {
        Arc::ptr_eq(&self.field, &other.field) || self.field == other.field
    }

    fn check(&self, other: &NfElem) -> Result<()> {
        if self.same_field(other) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn try_add(&self, other: &NfElem) -> Result<NfElem> {
        self.check(other)?;
        Ok(NfElem::from_parts(
            self.field.clone(),
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        ))
    }

    pub fn try_sub(&self, other: &NfElem) -> Result<NfElem> {
        self.check(other)?;
        Ok(NfElem::from_parts(
            self.field.clone(),
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        ))
    }

    pub fn try_mul(&self, other: &NfElem) -> Result<NfElem> {
        self.check(other)?;
        if self.is_rational() {
            return Ok(other.scale(&self.coeffs[0]));
        }
        if other.is_rational() {
            return Ok(self.scale(&other.coeffs[0]));
        }
        Ok(self.field.from_poly(&(&self.to_poly() * &other.to_poly())))
    }

    pub fn inv(&self) -> Result<NfElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(self.field.from_rational(q.recip()));
        }
        let (g, s, _) = self.to_poly().xgcd(self.field.min_poly());
        if g.degree() != Some(0) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.field.from_poly(&s))
    }

    pub fn try_div(&self, other: &NfElem) -> Result<NfElem> {
        self.check(other)?;
        self.try_mul(&other.inv()?)
    }

    pub fn scale(&self, q: &Rational) -> NfElem {
        NfElem::from_parts(
            self.field.clone(),
            self.coeffs.iter().map(|c| c * q).collect(),
        )
    }

    pub fn pow(&self, e: i64) -> Result<NfElem> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.field.one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    /// `p(self)` for a polynomial with rational coefficients.
    pub fn eval_poly(&self, p: &PolyQ) -> NfElem {
        let mut acc = self.field.zero();
        for c in p.coeffs().iter().rev() {
            acc = &(&acc * self) + &self.field.from_rational(c.clone());
        }
        acc
    }

    /// Denominators of the coordinates.
    pub fn denominators(&self) -> impl Iterator<Item = &num_bigint::BigInt> {
        self.coeffs.iter().map(|c| c.denom())
    }
}

/// Field operation with explicit error reporting.
pub fn nf_arith(x: &NfElem, y: &NfElem, op: ArithOp) -> Result<NfElem> {
    match op {
        ArithOp::Add => x.try_add(y),
        ArithOp::Sub => x.try_sub(y),
        ArithOp::Mul => x.try_mul(y),
        ArithOp::Div => x.try_div(y),
    }
}

impl Add for &NfElem {
    type Output = NfElem;
    fn add(self, rhs: &NfElem) -> NfElem {
        self.try_add(rhs).expect("field mismatch")
    }
}

impl Sub for &NfElem {
    type Output = NfElem;
    fn sub(self, rhs: &NfElem) -> NfElem {
        self.try_sub(rhs).expect("field mismatch")
    }
}

impl Mul for &NfElem {
    type Output = NfElem;
    fn mul(self, rhs: &NfElem) -> NfElem {
        self.try_mul(rhs).expect("field mismatch")
    }
}

impl Neg for &NfElem {
    type Output = NfElem;
    fn neg(self) -> NfElem {
        NfElem::from_parts(self.field.clone(), self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Debug for NfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for NfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = self.field.variable();
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c = format_rational(c);
            terms.push(match i {
                0 => c,
                1 => format!("({c}){var}"),
                _ => format!("({c}){var}^{i}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}
