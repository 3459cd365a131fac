//! Tracked rings and the good-prime scan.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::{integer, rational, resultant};
use crate::budget::SearchBudget;
use crate::error::{Error, Result};
use crate::number_field::{FieldRef, NfElem};

/// A finitely generated ring `R ⊂ k` described by generators, elements that must stay
/// invertible, and extra integers whose prime divisors are excluded.
#[derive(Debug, Clone)]
pub struct TrackedRing {
    field: FieldRef,
    generators: Vec<NfElem>,
    must_be_unit: Vec<NfElem>,
    avoid: Vec<BigInt>,
}

impl TrackedRing {
    pub fn new(field: &FieldRef) -> Self {
        TrackedRing {
            field: field.clone(),
            generators: Vec::new(),
            must_be_unit: Vec::new(),
            avoid: Vec::new(),
        }
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn generators(&self) -> &[NfElem] {
        &self.generators
    }

    pub fn must_be_unit(&self) -> &[NfElem] {
        &self.must_be_unit
    }

    pub fn avoid(&self) -> &[BigInt] {
        &self.avoid
    }

    pub fn with_generators<I: IntoIterator<Item = NfElem>>(mut self, xs: I) -> Self {
        self.generators.extend(xs);
        self
    }

    pub fn with_units<I: IntoIterator<Item = NfElem>>(mut self, xs: I) -> Self {
        self.must_be_unit.extend(xs);
        self
    }

    pub fn with_avoid<I: IntoIterator<Item = BigInt>>(mut self, xs: I) -> Self {
        self.avoid.extend(xs);
        self
    }

    pub fn add_generator(&mut self, x: NfElem) {
        self.generators.push(x);
    }

    pub fn add_unit(&mut self, x: NfElem) {
        self.must_be_unit.push(x);
    }

    pub fn add_avoid(&mut self, n: BigInt) {
        self.avoid.push(n);
    }

    pub fn check_fields(&self) -> Result<()> {
        if self
            .generators
            .iter()
            .chain(&self.must_be_unit)
            .all(|x| x.field() == &self.field)
        {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    /// An integer divisible by exactly the primes that fail a goodness predicate
    /// (zero when no prime is good).
    pub fn bad_integer(&self) -> BigInt {
        let mut bad = self.field.discriminant().numer().abs();
        bad = bad.lcm(&self.field.min_poly().denominator_lcm());
        for x in self.generators.iter().chain(&self.must_be_unit) {
            for d in x.denominators() {
                bad = bad.lcm(d);
            }
        }
        for x in &self.must_be_unit {
            let norm = resultant(self.field.min_poly(), &x.to_poly()).unwrap_or_default();
            if norm.is_zero() {
                return BigInt::zero();
            }
            bad = bad.lcm(&norm.numer().abs()).lcm(norm.denom());
        }
        for n in &self.avoid {
            if n.is_zero() {
                return BigInt::zero();
            }
            bad = bad.lcm(&n.abs());
        }
        if bad.is_zero() {
            BigInt::one()
        } else {
            bad
        }
    }

    /// Recomputes all goodness predicates at `p` directly.
    pub fn is_good(&self, p: u64) -> bool {
        if !integer::is_prime_u64(p) || !self.field.is_unramified(p) {
            return false;
        }
        if self.avoid.iter().any(|n| rational::bigint_mod(n, p) == 0) {
            return false;
        }
        let integral = |x: &NfElem| x.denominators().all(|d| rational::bigint_mod(d, p) != 0);
        if !self
            .generators
            .iter()
            .chain(&self.must_be_unit)
            .all(integral)
        {
            return false;
        }
        let fbar = self.field.min_poly_mod(p).unwrap();
        self.must_be_unit.iter().all(|x| {
            let coeffs: Vec<u64> = x
                .coeffs()
                .iter()
                .map(|c| rational::rational_mod(c, p).unwrap())
                .collect();
            crate::algebra::PolyFp::new(p, coeffs).gcd(&fbar).is_one()
        })
    }
}

/// Ascending good primes `p ≤ budget.max_prime`.
pub fn good_primes(ring: &TrackedRing, budget: &SearchBudget) -> impl Iterator<Item = u64> {
    let bad = ring.bad_integer();
    let dead = bad.is_zero();
    integer::primes_up_to(budget.max_prime)
        .filter(move |&p| !dead && rational::bigint_mod(&bad, p) != 0)
}
