//! Multiplicative orders, cyclic membership and discrete logarithms in `F_{p^d}^*`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use once_cell::sync::Lazy;

use crate::algebra::integer::{factor_biguint, factor_u64, RHO_ITERATIONS};
use crate::error::{Error, Result};

use super::map::FFElem;

type Factorization = Arc<Vec<(BigUint, u32)>>;

type FactorCache = Mutex<HashMap<(u64, usize), Option<Factorization>>>;

static GROUP_ORDER_FACTORS: Lazy<FactorCache> = Lazy::new(|| Mutex::new(HashMap::new()));

fn mobius(n: usize) -> i32 {
    let mut n = n;
    let mut result = 1;
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            n /= q;
            if n.is_multiple_of(q) {
                return 0;
            }
            result = -result;
        }
        q += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// `Φ_e(p)` from `∏_{k|e} (p^k − 1)^{μ(e/k)}`.
fn cyclotomic_value(p: u64, e: usize) -> BigUint {
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for k in 1..=e {
        if !e.is_multiple_of(k) {
            continue;
        }
        let term = BigUint::from(p).pow(k as u32) - 1u32;
        match mobius(e / k) {
            1 => num *= term,
            -1 => den *= term,
            _ => {}
        }
    }
    num / den
}

/// Factorization of `p^d − 1`, assembled from the cyclotomic pieces `Φ_e(p)`, `e | d`.
pub fn group_order_factors(p: u64, d: usize) -> Result<Factorization> {
    if let Some(hit) = GROUP_ORDER_FACTORS.lock().unwrap().get(&(p, d)) {
        return hit.clone().ok_or(Error::FactorizationLimit);
    }
    let mut merged: Vec<(BigUint, u32)> = Vec::new();
    let mut ok = true;
    for e in 1..=d {
        if !d.is_multiple_of(e) {
            continue;
        }
        match factor_biguint(&cyclotomic_value(p, e), RHO_ITERATIONS) {
            Some(fs) => {
                for (q, k) in fs {
                    match merged.iter_mut().find(|(r, _)| *r == q) {
                        Some((_, m)) => *m += k,
                        None => merged.push((q, k)),
                    }
                }
            }
            None => {
                ok = false;
                break;
            }
        }
    }
    merged.sort();
    let value = ok.then(|| Arc::new(merged));
    GROUP_ORDER_FACTORS
        .lock()
        .unwrap()
        .insert((p, d), value.clone());
    value.ok_or(Error::FactorizationLimit)
}

/// Exact multiplicative order of a nonzero residue-field element.
pub fn mult_order(x: &FFElem) -> Result<BigUint> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    let map = x.map();
    let n = map.order() - 1u32;
    let factors = group_order_factors(map.p(), map.degree())?;
    let mut o = n;
    for (q, e) in factors.iter() {
        for _ in 0..*e {
            let cand = &o / q;
            if x.pow(&cand).is_one() {
                o = cand;
            } else {
                break;
            }
        }
    }
    Ok(o)
}

/// `ord(x) = m`, decided without factoring the group order.
pub fn has_order(x: &FFElem, m: u64) -> bool {
    if x.is_zero() || m == 0 {
        return false;
    }
    let n = x.map().order() - 1u32;
    if !(&n % m).is_zero() {
        return false;
    }
    if !x.pow(&BigUint::from(m)).is_one() {
        return false;
    }
    factor_u64(m)
        .iter()
        .all(|&(q, _)| !x.pow(&BigUint::from(m / q)).is_one())
}

/// `m | ord(x)`, decided from the `q`-adic valuations of the group order for `q | m`.
pub fn order_divisible_by(x: &FFElem, m: u64) -> bool {
    if x.is_zero() || m == 0 {
        return false;
    }
    let n = x.map().order() - 1u32;
    for (q, e) in factor_u64(m) {
        let q = BigUint::from(q);
        let mut v = 0u32;
        let mut rest = n.clone();
        while (&rest % &q).is_zero() {
            rest /= &q;
            v += 1;
        }
        if v < e {
            return false;
        }
        let exp = &n / q.pow(v - e + 1);
        if x.pow(&exp).is_one() {
            return false;
        }
    }
    true
}

/// `x ∈ ⟨y⟩`, via `ord(x) | ord(y)` in the cyclic group `F_{p^d}^*`.
pub fn in_cyclic(x: &FFElem, y: &FFElem) -> Result<bool> {
    if x.is_zero() || y.is_zero() {
        return Err(Error::ZeroElement);
    }
    if x.map() != y.map() {
        return Err(Error::InconsistentPrimes);
    }
    if x.is_one() {
        return Ok(true);
    }
    let ox = mult_order(x)?;
    let oy = mult_order(y)?;
    Ok((oy % ox).is_zero())
}

fn factor_order(o: &BigUint, group: &[(BigUint, u32)]) -> Vec<(BigUint, u32)> {
    let mut out = Vec::new();
    for (q, _) in group {
        let mut e = 0;
        let mut rest = o.clone();
        while (&rest % q).is_zero() {
            rest /= q;
            e += 1;
        }
        if e > 0 {
            out.push((q.clone(), e));
        }
    }
    out
}

const BSGS_LIMIT: u64 = 1 << 24;

/// Baby-step giant-step for `g^k = h` with `ord(g) = q` prime.
fn bsgs(g: &FFElem, h: &FFElem, q: &BigUint) -> Option<BigUint> {
    let qn = q.to_u64()?;
    let m = (qn as f64).sqrt().ceil() as u64 + 1;
    if m > BSGS_LIMIT {
        return None;
    }
    let mut table = HashMap::with_capacity(m as usize);
    let mut cur = FFElem::from_u64(g.map(), 1);
    for j in 0..m {
        table.entry(cur.value().clone()).or_insert(j);
        cur = cur.mul(g);
    }
    let step = g.pow(&BigUint::from(m)).inv().ok()?;
    let mut gamma = h.clone();
    for i in 0..m {
        if let Some(&j) = table.get(gamma.value()) {
            return Some(BigUint::from((i * m + j) % qn));
        }
        gamma = gamma.mul(&step);
    }
    None
}

/// Discrete logarithm `k` with `y^k = x`, `0 ≤ k < ord(y)`, by Pohlig–Hellman.
pub fn discrete_log(x: &FFElem, y: &FFElem) -> Result<Option<(BigUint, BigUint)>> {
    if !in_cyclic(x, y)? {
        return Ok(None);
    }
    let o = mult_order(y)?;
    let map = y.map();
    let group = group_order_factors(map.p(), map.degree())?;
    let mut residues: Vec<(BigUint, BigUint)> = Vec::new();
    for (q, e) in factor_order(&o, &group) {
        let qe = q.pow(e);
        let cof = &o / &qe;
        let yq = y.pow(&cof);
        let xq = x.pow(&cof);
        let gamma = yq.pow(&q.pow(e - 1));
        let mut k = BigUint::zero();
        for i in 0..e {
            let yk = yq.pow(&k).inv()?;
            let hk = xq.mul(&yk).pow(&q.pow(e - 1 - i));
            let digit = bsgs(&gamma, &hk, &q).ok_or(Error::FactorizationLimit)?;
            k += digit * q.pow(i);
        }
        residues.push((k, qe));
    }
    let mut acc = BigUint::zero();
    let mut modulus = BigUint::one();
    for (r, m) in residues {
        // solve acc + modulus·t ≡ r (mod m)
        let mi = num_bigint::BigInt::from(modulus.clone());
        let mm = num_bigint::BigInt::from(m.clone());
        let inv = mi.extended_gcd(&mm).x.mod_floor(&mm);
        let diff =
            (num_bigint::BigInt::from(r) - num_bigint::BigInt::from(acc.clone())).mod_floor(&mm);
        let t = (diff * inv).mod_floor(&mm).to_biguint().unwrap();
        acc += &modulus * t;
        modulus *= m;
    }
    Ok(Some((acc, o)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PolyFp;
    use crate::number_field::{FieldExt, NumberField};
    use crate::residue::{reduce, residue_split};

    #[test]
    fn orders_and_membership() {
        let q = NumberField::rationals();
        let m7 = residue_split(&q, 7).unwrap()[0].clone();
        let two = reduce(&m7, &q.from_int(2)).unwrap();
        let three = reduce(&m7, &q.from_int(3)).unwrap();
        assert_eq!(mult_order(&two).unwrap(), BigUint::from(3u32));
        assert_eq!(
            mult_order(&FFElem::from_u64(&m7, 1)).unwrap(),
            BigUint::one()
        );
        assert!(in_cyclic(&two, &three).unwrap());
        assert!(!in_cyclic(&three, &two).unwrap());
        assert!(has_order(&two, 3));
        assert!(!has_order(&two, 6));
        assert!(order_divisible_by(&three, 6));
        assert!(!order_divisible_by(&two, 2));
        let (k, o) = discrete_log(&two, &three).unwrap().unwrap();
        assert_eq!(three.pow(&k), two);
        assert_eq!(o, BigUint::from(6u32));
    }

    #[test]
    fn order_in_f9() {
        let k = NumberField::new("t", crate::algebra::PolyQ::from_i64(&[1, 0, 1])).unwrap();
        let m = residue_split(&k, 3).unwrap()[0].clone();
        let t = FFElem::new(&m, PolyFp::x(3));
        assert_eq!(mult_order(&t).unwrap(), BigUint::from(4u32));
        assert_eq!(
            mult_order(&FFElem::from_u64(&m, 0)),
            Err(Error::ZeroElement)
        );
    }

    #[test]
    fn cyclotomic_pieces() {
        assert_eq!(cyclotomic_value(2, 6), BigUint::from(3u32));
        let fs = group_order_factors(2, 6).unwrap();
        assert_eq!(
            *fs,
            vec![(BigUint::from(3u32), 2), (BigUint::from(7u32), 1)]
        );
    }
}
