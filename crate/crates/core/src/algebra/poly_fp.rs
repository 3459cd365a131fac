//! Dense univariate polynomials over a prime field `F_p`, constant term first.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;

use super::modp;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyFp {
    p: u64,
    coeffs: Vec<u64>,
}

impl PolyFp {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % p).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        PolyFp { p, coeffs }
    }

    pub fn from_i64(p: u64, coeffs: &[i64]) -> Self {
        Self::new(
            p,
            coeffs
                .iter()
                .map(|&c| (c as i128).rem_euclid(p as i128) as u64)
                .collect(),
        )
    }

    pub fn zero(p: u64) -> Self {
        PolyFp {
            p,
            coeffs: Vec::new(),
        }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn constant(p: u64, c: u64) -> Self {
        Self::new(p, vec![c])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    /// The `k`-th polynomial in base-`p` digit order: `k = Σ c_i p^i` ↦ `Σ c_i X^i`.
    pub fn from_index(p: u64, mut k: u64) -> Self {
        let mut coeffs = Vec::new();
        while k > 0 {
            coeffs.push(k % p);
            k /= p;
        }
        Self::new(p, coeffs)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<u64> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == Some(1)
    }

    pub fn add(&self, rhs: &PolyFp) -> PolyFp {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new(
            self.p,
            (0..n)
                .map(|i| modp::add(self.coeff(i), rhs.coeff(i), self.p))
                .collect(),
        )
    }

    pub fn sub(&self, rhs: &PolyFp) -> PolyFp {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new(
            self.p,
            (0..n)
                .map(|i| modp::sub(self.coeff(i), rhs.coeff(i), self.p))
                .collect(),
        )
    }

    pub fn neg(&self) -> PolyFp {
        Self::new(
            self.p,
            self.coeffs.iter().map(|&c| modp::neg(c, self.p)).collect(),
        )
    }

    pub fn scale(&self, c: u64) -> PolyFp {
        Self::new(
            self.p,
            self.coeffs
                .iter()
                .map(|&x| modp::mul(x, c, self.p))
                .collect(),
        )
    }

    pub fn mul(&self, rhs: &PolyFp) -> PolyFp {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p;
        let mut out = vec![0u128; self.coeffs.len() + rhs.coeffs.len() - 1];
        let small = (p as u128) * (p as u128) * (out.len() as u128) < u128::MAX / 2;
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                if small {
                    out[i + j] += a as u128 * b as u128;
                } else {
                    out[i + j] = (out[i + j] + a as u128 * b as u128) % p as u128;
                }
            }
        }
        Self::new(p, out.into_iter().map(|c| (c % p as u128) as u64).collect())
    }

    pub fn monic(&self) -> PolyFp {
        match self.lead() {
            None => self.clone(),
            Some(l) => self.scale(modp::inv(l, self.p).expect("nonzero lead")),
        }
    }

    pub fn div_rem(&self, divisor: &PolyFp) -> Result<(PolyFp, PolyFp)> {
        let dd = divisor.degree().ok_or(Error::ZeroPolynomial)?;
        let p = self.p;
        let lead_inv = modp::inv(divisor.coeffs[dd], p).ok_or(Error::DivisionByZero)?;
        if self.coeffs.len() <= dd {
            return Ok((Self::zero(p), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = modp::mul(rem[k + dd], lead_inv, p);
            if c != 0 {
                for (j, &dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] = modp::sub(rem[k + j], modp::mul(c, dc, p), p);
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(p, quot), Self::new(p, rem)))
    }

    pub fn rem(&self, divisor: &PolyFp) -> PolyFp {
        self.div_rem(divisor).expect("nonzero divisor").1
    }

    pub fn exact_div(&self, divisor: &PolyFp) -> PolyFp {
        let (q, r) = self.div_rem(divisor).expect("nonzero divisor");
        debug_assert!(r.is_zero());
        q
    }

    pub fn divides(&self, other: &PolyFp) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &PolyFp) -> PolyFp {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `g = s·self + t·other`, `g` monic.
    pub fn xgcd(&self, other: &PolyFp) -> (PolyFp, PolyFp, PolyFp) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::zero(p));
        let (mut t0, mut t1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
            (t0, t1) = (t1, t);
        }
        match r0.lead() {
            None => (r0, s0, t0),
            Some(l) => {
                let li = modp::inv(l, p).expect("nonzero lead");
                (r0.scale(li), s0.scale(li), t0.scale(li))
            }
        }
    }

    /// Inverse of `self` modulo `modulus`, if it exists.
    pub fn inv_mod(&self, modulus: &PolyFp) -> Option<PolyFp> {
        let (g, s, _) = self.rem(modulus).xgcd(modulus);
        if g.is_one() {
            Some(s.rem(modulus))
        } else {
            None
        }
    }

    pub fn mul_mod(&self, rhs: &PolyFp, modulus: &PolyFp) -> PolyFp {
        self.mul(rhs).rem(modulus)
    }

    pub fn pow_mod(&self, e: &BigUint, modulus: &PolyFp) -> PolyFp {
        let mut acc = Self::one(self.p).rem(modulus);
        let base = self.rem(modulus);
        for i in (0..e.bits()).rev() {
            acc = acc.mul_mod(&acc, modulus);
            if e.bit(i) {
                acc = acc.mul_mod(&base, modulus);
            }
        }
        acc
    }

    pub fn pow_mod_u64(&self, e: u64, modulus: &PolyFp) -> PolyFp {
        self.pow_mod(&BigUint::from(e), modulus)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let mut acc = 0;
        for &c in self.coeffs.iter().rev() {
            acc = modp::add(modp::mul(acc, x, self.p), c, self.p);
        }
        acc
    }

    pub fn derivative(&self) -> PolyFp {
        let p = self.p;
        Self::new(
            p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| modp::mul(c, (i as u64) % p, p))
                .collect(),
        )
    }

    /// Total order used for deterministic factor lists: degree, then coefficients from the
    /// constant term upwards.
    pub fn canonical_cmp(&self, other: &PolyFp) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl fmt::Debug for PolyFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (mod {})", self.p)
    }
}

impl fmt::Display for PolyFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "T".to_string(),
                (1, c) => format!("{c}T"),
                (i, 1) => format!("T^{i}"),
                (i, c) => format!("{c}T^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}
