//! Primality, prime enumeration and integer factorization.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use once_cell::sync::Lazy;

use super::modp;

const TRIAL_BOUND: u32 = 1_000_000;

static SMALL_PRIMES: Lazy<Vec<u32>> = Lazy::new(|| sieve(TRIAL_BOUND));

fn sieve(bound: u32) -> Vec<u32> {
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u32);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

pub fn small_primes() -> &'static [u32] {
    &SMALL_PRIMES
}

const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &b in &MR_BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let s = (n - 1).trailing_zeros();
    'outer: for &a in &MR_BASES {
        let mut x = modp::pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = modp::mul(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Miller–Rabin with the first twelve prime bases (deterministic below 3.3·10²⁴).
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(m) = n.to_u64() {
        return is_prime_u64(m);
    }
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'outer: for &b in &MR_BASES {
        let a = BigUint::from(b);
        if (n % &a).is_zero() {
            return false;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

pub fn next_prime(n: u64) -> u64 {
    let mut m = n + 1;
    while !is_prime_u64(m) {
        m += 1;
    }
    m
}

/// Ascending primes in `[2, bound]`.
pub fn primes_up_to(bound: u64) -> impl Iterator<Item = u64> {
    let mut current = 1u64;
    std::iter::from_fn(move || {
        let next = next_prime(current);
        if next > bound {
            None
        } else {
            current = next;
            Some(next)
        }
    })
}

fn pollard_brent_u64(n: u64, max_iters: u64) -> Option<u64> {
    if n.is_multiple_of(2) {
        return Some(2);
    }
    for c in 1..20u64 {
        let f = |x: u64| modp::add(modp::mul(x, x, n), c, n);
        let (mut y, mut r, mut q, mut g) = (2u64, 1u64, 1u64, 1u64);
        let mut x = y;
        let mut ys = y;
        let mut iters = 0u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..(128.min(r - k)) {
                    y = f(y);
                    q = modp::mul(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += 128;
            }
            r *= 2;
            iters += r;
            if iters > max_iters {
                return None;
            }
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return Some(g);
        }
    }
    None
}

fn pollard_brent_big(n: &BigUint, max_iters: u64) -> Option<BigUint> {
    let one = BigUint::one();
    for c in 1..20u64 {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r = 1u64;
        let mut q = one.clone();
        let mut g = one.clone();
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut iters = 0u64;
        let diff = |a: &BigUint, b: &BigUint| if a > b { a - b } else { b - a };
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..(128.min(r - k)) {
                    y = f(&y);
                    q = (q * diff(&x, &y)) % n;
                }
                g = q.gcd(n);
                k += 128;
            }
            r *= 2;
            iters += r;
            if iters > max_iters {
                return None;
            }
        }
        if &g == n {
            loop {
                ys = f(&ys);
                g = diff(&x, &ys).gcd(n);
                if g > one {
                    break;
                }
            }
        }
        if &g != n {
            return Some(g);
        }
    }
    None
}

/// Default iteration cap for each Pollard–Brent run.
pub const RHO_ITERATIONS: u64 = 1 << 22;

/// Prime factorization `[(q, e)]` in ascending order, or `None` when a cofactor resists
/// Pollard–Brent within `max_iters` iterations.
pub fn factor_biguint(n: &BigUint, max_iters: u64) -> Option<Vec<(BigUint, u32)>> {
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    if n.is_zero() {
        return None;
    }
    let mut m = n.clone();
    for &q in small_primes() {
        if m.bits() <= 40 && (q as u64) * (q as u64) > m.to_u64().unwrap() {
            break;
        }
        let mut e = 0;
        while (&m % q).is_zero() {
            m /= q;
            e += 1;
        }
        if e > 0 {
            out.push((BigUint::from(q), e));
        }
    }
    let mut stack = vec![m];
    let mut large: Vec<BigUint> = Vec::new();
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_probable_prime(&m) {
            large.push(m);
            continue;
        }
        let d = match m.to_u64() {
            Some(small) => BigUint::from(pollard_brent_u64(small, max_iters)?),
            None => pollard_brent_big(&m, max_iters)?,
        };
        let other = &m / &d;
        stack.push(d);
        stack.push(other);
    }
    large.sort();
    for q in large {
        match out.iter_mut().find(|(r, _)| *r == q) {
            Some((_, e)) => *e += 1,
            None => out.push((q, 1)),
        }
    }
    out.sort();
    Some(out)
}

pub fn factor_u64(n: u64) -> Vec<(u64, u32)> {
    factor_biguint(&BigUint::from(n), u64::MAX)
        .expect("64-bit inputs always factor")
        .into_iter()
        .map(|(q, e)| (q.to_u64().unwrap(), e))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let ps: Vec<u64> = primes_up_to(30).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(3_215_031_751));
        assert!(is_probable_prime(&(BigUint::from(2u32).pow(89) - 1u32)));
        assert!(!is_probable_prime(&(BigUint::from(2u32).pow(67) - 1u32)));
    }

    #[test]
    fn factorizations() {
        assert_eq!(factor_u64(63), vec![(3, 2), (7, 1)]);
        assert_eq!(factor_u64(1), vec![]);
        let n = BigUint::from(2u32).pow(67) - 1u32;
        let fs = factor_biguint(&n, RHO_ITERATIONS).unwrap();
        assert_eq!(
            fs,
            vec![
                (BigUint::from(193_707_721u64), 1),
                (BigUint::from(761_838_257_287u64), 1)
            ]
        );
        let m = BigUint::from(1_000_003u64) * BigUint::from(1_000_033u64) * 12u32;
        let fs = factor_biguint(&m, RHO_ITERATIONS).unwrap();
        let back = fs
            .iter()
            .fold(BigUint::one(), |acc, (q, e)| acc * q.pow(*e));
        assert_eq!(back, m);
    }
}
