//! Number fields `Q[t]/(f)`.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::algebra::{discriminant, factor_mod_p, integer, rational, PolyFp, PolyQ, Rational};
use crate::error::{Error, Result};

use super::element::NfElem;

/// `ℚ[T]/(f)` for a monic `f`, whose irreducibility is asserted by the caller.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NumberField {
    variable: String,
    min_poly: PolyQ,
    asserted_irreducible: bool,
}

pub type FieldRef = Arc<NumberField>;

/// Outcome of the optional irreducibility spot-check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IrreducibilityCheck {
    /// `f` is irreducible modulo this good prime, hence over ℚ.
    Confirmed(u64),
    Unverified,
}

impl NumberField {
    pub fn new(variable: impl Into<String>, min_poly: PolyQ) -> Result<FieldRef> {
        if min_poly.degree().unwrap_or(0) == 0 {
            return Err(Error::InvalidInput(
                "minimal polynomial must have degree ≥ 1".into(),
            ));
        }
        if !min_poly.is_monic() {
            return Err(Error::NotMonic);
        }
        Ok(Arc::new(NumberField {
            variable: variable.into(),
            min_poly,
            asserted_irreducible: true,
        }))
    }

    /// ℚ presented as `ℚ[t]/(t)`.
    pub fn rationals() -> FieldRef {
        Self::new("t", PolyQ::x()).expect("valid")
    }

    pub fn variable(&self) -> &str {
        &self.variable
    }

    pub fn min_poly(&self) -> &PolyQ {
        &self.min_poly
    }

    pub fn degree(&self) -> usize {
        self.min_poly.degree().unwrap()
    }

    pub fn asserted_irreducible(&self) -> bool {
        self.asserted_irreducible
    }

    pub fn discriminant(&self) -> Rational {
        discriminant(&self.min_poly).expect("nonzero polynomial")
    }

    /// The minimal polynomial reduced mod `p`, or `None` when `p` divides a denominator.
    pub fn min_poly_mod(&self, p: u64) -> Option<PolyFp> {
        let coeffs = self
            .min_poly
            .coeffs()
            .iter()
            .map(|c| rational::rational_mod(c, p))
            .collect::<Option<Vec<u64>>>()?;
        Some(PolyFp::new(p, coeffs))
    }

    /// True when `p` divides neither the discriminant numerator nor a coefficient denominator.
    pub fn is_unramified(&self, p: u64) -> bool {
        let disc = self.discriminant();
        rational::bigint_mod(disc.numer(), p) != 0
            && self
                .min_poly
                .coeffs()
                .iter()
                .all(|c| rational::bigint_mod(c.denom(), p) != 0)
    }

    /// Looks for a good prime `p ≤ bound` at which `f` stays irreducible.
    pub fn check_irreducible(&self, bound: u64) -> IrreducibilityCheck {
        if self.degree() == 1 {
            return IrreducibilityCheck::Confirmed(2);
        }
        for p in integer::primes_up_to(bound) {
            if !self.is_unramified(p) {
                continue;
            }
            let f = self.min_poly_mod(p).expect("p-integral");
            if let Ok(fs) = factor_mod_p(&f) {
                if fs.len() == 1 && fs[0].1 == 1 {
                    return IrreducibilityCheck::Confirmed(p);
                }
            }
        }
        IrreducibilityCheck::Unverified
    }
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[{}]/({})", self.variable, self.min_poly)
    }
}

/// Constructors that need the shared handle.
#[allow(clippy::wrong_self_convention)]
pub trait FieldExt {
    fn element(&self, coeffs: Vec<Rational>) -> NfElem;
    fn from_poly(&self, p: &PolyQ) -> NfElem;
    fn zero(&self) -> NfElem;
    fn one(&self) -> NfElem;
    fn gen(&self) -> NfElem;
    fn from_rational(&self, q: Rational) -> NfElem;
    fn from_int(&self, n: i64) -> NfElem;
}

impl FieldExt for FieldRef {
    fn element(&self, coeffs: Vec<Rational>) -> NfElem {
        self.from_poly(&PolyQ::new(coeffs))
    }

    fn from_poly(&self, p: &PolyQ) -> NfElem {
        let r = p.rem(self.min_poly()).expect("nonzero modulus");
        let mut coeffs = r.into_coeffs();
        coeffs.resize(self.degree(), Rational::zero());
        NfElem::from_parts(self.clone(), coeffs)
    }

    fn zero(&self) -> NfElem {
        NfElem::from_parts(self.clone(), vec![Rational::zero(); self.degree()])
    }

    fn one(&self) -> NfElem {
        self.from_rational(Rational::one())
    }

    fn gen(&self) -> NfElem {
        self.from_poly(&PolyQ::x())
    }

    fn from_rational(&self, q: Rational) -> NfElem {
        let mut coeffs = vec![Rational::zero(); self.degree()];
        coeffs[0] = q;
        NfElem::from_parts(self.clone(), coeffs)
    }

    fn from_int(&self, n: i64) -> NfElem {
        self.from_rational(rational::rat(n))
    }
}
