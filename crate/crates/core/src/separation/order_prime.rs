//! Primes at which an element has a prescribed multiplicative order.

use num_bigint::BigUint;

use crate::budget::SearchBudget;
use crate::error::{Error, Result};
use crate::number_field::{FieldExt, NfElem};
use crate::residue::{
    good_primes, has_order, mult_order, order_divisible_by, reduce, residue_split, MapRef,
    TrackedRing,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderMode {
    Exact,
    DivisibleBy,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderPrimeResult {
    pub map: MapRef,
    pub achieved_order: BigUint,
    pub mode: OrderMode,
}

/// True when `δ^j = 1` for some `1 ≤ j ≤ 2·deg(k)²`.
pub fn is_root_of_unity(delta: &NfElem) -> bool {
    let n = delta.field().degree();
    let one = delta.field().one();
    let mut cur = delta.clone();
    for _ in 1..=(2 * n * n) {
        if cur == one {
            return true;
        }
        cur = &cur * delta;
    }
    false
}

/// Smallest good prime and first factor at which the order of `η(δ)` is `m` (or a multiple).
pub fn find_order_prime(
    delta: &NfElem,
    m: u64,
    ring: &TrackedRing,
    mode: OrderMode,
    budget: &SearchBudget,
) -> Result<OrderPrimeResult> {
    if delta.is_zero() {
        return Err(Error::ZeroElement);
    }
    if m == 0 {
        return Err(Error::InvalidInput("order must be positive".into()));
    }
    if is_root_of_unity(delta) {
        return Err(Error::RootOfUnity);
    }
    let ring = ring.clone().with_units([delta.clone()]);
    for p in good_primes(&ring, budget) {
        for map in residue_split(ring.field(), p)? {
            let x = reduce(&map, delta)?;
            let ok = match mode {
                OrderMode::Exact => has_order(&x, m),
                OrderMode::DivisibleBy => order_divisible_by(&x, m),
            };
            log::debug!("order scan p={p} factor={} ok={ok}", map.factor());
            if !ok {
                continue;
            }
            let achieved_order = match mode {
                OrderMode::Exact => BigUint::from(m),
                OrderMode::DivisibleBy => match mult_order(&x) {
                    Ok(o) => o,
                    Err(Error::FactorizationLimit) => continue,
                    Err(e) => return Err(e),
                },
            };
            return Ok(OrderPrimeResult {
                map,
                achieved_order,
                mode,
            });
        }
    }
    Err(Error::BudgetExhausted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number_field::NumberField;

    #[test]
    fn anchors_for_two() {
        let q = NumberField::rationals();
        let ring = TrackedRing::new(&q);
        let b = SearchBudget::default();
        let two = q.from_int(2);
        assert_eq!(
            find_order_prime(&two, 3, &ring, OrderMode::Exact, &b)
                .unwrap()
                .map
                .p(),
            7
        );
        assert_eq!(
            find_order_prime(&two, 4, &ring, OrderMode::Exact, &b)
                .unwrap()
                .map
                .p(),
            5
        );
        assert_eq!(
            find_order_prime(&two, 1, &ring, OrderMode::Exact, &b.with_max_prime(1000)),
            Err(Error::BudgetExhausted)
        );
        assert_eq!(
            find_order_prime(&q.from_int(-1), 2, &ring, OrderMode::Exact, &b),
            Err(Error::RootOfUnity)
        );
        let r = find_order_prime(&two, 2, &ring, OrderMode::DivisibleBy, &b).unwrap();
        assert_eq!((r.map.p(), r.achieved_order), (3, BigUint::from(2u32)));
    }
}
