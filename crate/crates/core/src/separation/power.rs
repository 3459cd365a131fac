//! Separating an element from the powers of another.

use num_bigint::BigUint;
use num_integer::Integer;

use crate::budget::SearchBudget;
use crate::error::{Error, Result};
use crate::number_field::{non_unit_embedding, recover_exponent, FieldExt, NfElem, BASE_PRECISION};
use crate::residue::{
    discrete_log, good_primes, in_cyclic, reduce, residue_split, MapRef, TrackedRing,
};

/// Residue maps under whose product `η(λ) ∉ ⟨η(ω)⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeparation {
    pub maps: Vec<MapRef>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PowerOutcome {
    Separated(PowerSeparation),
    /// `λ = ω^m` exactly.
    NotSeparable {
        exponent: i64,
    },
}

/// `m` with `λ = ω^m`, if one exists and can be decided.
pub fn exact_power_exponent(lambda: &NfElem, omega: &NfElem, cap: u32) -> Result<Option<i64>> {
    let field = lambda.field();
    let n = field.degree();
    let one = field.one();
    let mut cur = omega.clone();
    for j in 1..=(2 * n * n) as i64 {
        if cur == one {
            let mut pw = one.clone();
            for i in 0..j {
                if &pw == lambda {
                    return Ok(Some(i));
                }
                pw = &pw * omega;
            }
            return Ok(None);
        }
        cur = &cur * omega;
    }
    match non_unit_embedding(omega, BASE_PRECISION, cap) {
        Some(h) => Ok(recover_exponent(lambda, omega, &h, false, cap)?.map(|m| m.exponent)),
        None => Ok(None),
    }
}

/// Single-prime search for `η(λ) ∉ ⟨η(ω)⟩`, then prime pairs by discrete-log incompatibility.
pub fn separate_power(
    lambda: &NfElem,
    omega: &NfElem,
    ring: &TrackedRing,
    budget: &SearchBudget,
) -> Result<PowerOutcome> {
    if lambda.is_zero() || omega.is_zero() {
        return Err(Error::ZeroElement);
    }
    if let Some(m) = exact_power_exponent(lambda, omega, budget.precision_cap_bits)? {
        return Ok(PowerOutcome::NotSeparable { exponent: m });
    }
    let ring = ring.clone().with_units([lambda.clone(), omega.clone()]);
    for p in good_primes(&ring, budget) {
        for map in residue_split(ring.field(), p)? {
            let x = reduce(&map, lambda)?;
            let y = reduce(&map, omega)?;
            match in_cyclic(&x, &y) {
                Ok(false) => {
                    log::debug!("power separation at p={p} factor={}", map.factor());
                    return Ok(PowerOutcome::Separated(PowerSeparation { maps: vec![map] }));
                }
                Ok(true) | Err(Error::FactorizationLimit) => {}
                Err(e) => return Err(e),
            }
        }
    }
    log::debug!("no single prime separates; trying pairs");
    let mut seen: Vec<(MapRef, BigUint, BigUint)> = Vec::new();
    let mut tested = 0usize;
    for p in good_primes(&ring, budget) {
        for map in residue_split(ring.field(), p)? {
            let x = reduce(&map, lambda)?;
            let y = reduce(&map, omega)?;
            let Ok(Some((e, o))) = discrete_log(&x, &y) else {
                continue;
            };
            for (m0, e0, o0) in &seen {
                if tested >= budget.max_prime_pairs {
                    return Err(Error::BudgetExhausted);
                }
                tested += 1;
                let g = o0.gcd(&o);
                if e0 % &g != &e % &g {
                    return Ok(PowerOutcome::Separated(PowerSeparation {
                        maps: vec![m0.clone(), map],
                    }));
                }
            }
            seen.push((map, e, o));
        }
    }
    Err(Error::BudgetExhausted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number_field::NumberField;

    #[test]
    fn worked_examples() {
        let q = NumberField::rationals();
        let ring = TrackedRing::new(&q);
        let b = SearchBudget::default();
        let sep =
            |l: i64, w: i64| separate_power(&q.from_int(l), &q.from_int(w), &ring, &b).unwrap();
        match sep(2, 4) {
            PowerOutcome::Separated(s) => {
                assert_eq!(s.maps.iter().map(|m| m.p()).collect::<Vec<_>>(), vec![3])
            }
            other => panic!("{other:?}"),
        }
        match sep(3, 2) {
            PowerOutcome::Separated(s) => {
                assert_eq!(s.maps.iter().map(|m| m.p()).collect::<Vec<_>>(), vec![7])
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(sep(8, 2), PowerOutcome::NotSeparable { exponent: 3 });
        assert_eq!(sep(1, -1), PowerOutcome::NotSeparable { exponent: 0 });
        assert_eq!(sep(-1, -1), PowerOutcome::NotSeparable { exponent: 1 });
    }
}
