//! Exact square roots in a number field: a non-square is certified by a residue field in
//! which the element is not a square; a square root is found by Hensel lifting a root modulo
//! an unramified prime and rational reconstruction, then confirmed exactly.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::{factor_mod_p, integer, rational, PolyFp, Rational};
use crate::error::{Error, Result};

use super::element::NfElem;
use super::field::FieldExt;

const WITNESS_SCAN: usize = 40;
const LIFT_CAP_BITS: u64 = 8192;
const EXTENDED_SCAN_BOUND: u64 = 20_000;

/// `Some(s)` with `s² = d`, or `None` when `d` is not a square in its field.
pub fn sqrt_in_field(d: &NfElem) -> Result<Option<NfElem>> {
    let field = d.field().clone();
    if d.is_zero() {
        return Ok(Some(field.zero()));
    }
    if let Some(q) = d.as_rational() {
        if field.degree() == 1 {
            return Ok(rational_sqrt(q).map(|r| field.from_rational(r)));
        }
    }
    let mut candidates: Vec<(usize, u64, Vec<PolyFp>)> = Vec::new();
    let mut scanned = 0;
    let mut last = 2u64;
    for p in integer::primes_up_to(u64::MAX).skip(1) {
        last = p;
        if scanned >= WITNESS_SCAN {
            break;
        }
        match classify_prime(d, p) {
            PrimeVerdict::Skip => continue,
            PrimeVerdict::NonSquare => return Ok(None),
            PrimeVerdict::AllSquare(factors) => {
                scanned += 1;
                candidates.push((factors.len(), p, factors));
            }
        }
    }
    candidates.sort_by_key(|(r, p, _)| (*r, *p));
    if let Some((_, p, factors)) = candidates.first() {
        if let Some(s) = lift_sqrt(d, *p, factors)? {
            return Ok(Some(s));
        }
    }
    let mut p = last;
    while p <= EXTENDED_SCAN_BOUND {
        if let PrimeVerdict::NonSquare = classify_prime(d, p) {
            return Ok(None);
        }
        p = integer::next_prime(p);
    }
    Err(Error::Indeterminate)
}

pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let m = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&m * &m) == q.denom() {
        Some(Rational::new(n, m))
    } else {
        None
    }
}

enum PrimeVerdict {
    Skip,
    NonSquare,
    AllSquare(Vec<PolyFp>),
}

fn reduce_coeffs(coeffs: &[Rational], p: u64) -> Option<PolyFp> {
    let v = coeffs
        .iter()
        .map(|c| rational::rational_mod(c, p))
        .collect::<Option<Vec<u64>>>()?;
    Some(PolyFp::new(p, v))
}

fn classify_prime(d: &NfElem, p: u64) -> PrimeVerdict {
    let field = d.field();
    if !field.is_unramified(p) {
        return PrimeVerdict::Skip;
    }
    let Some(dbar) = reduce_coeffs(d.coeffs(), p) else {
        return PrimeVerdict::Skip;
    };
    let f = field
        .min_poly_mod(p)
        .expect("unramified implies p-integral");
    let factors: Vec<PolyFp> = factor_mod_p(&f)
        .expect("monic")
        .into_iter()
        .map(|(g, _)| g)
        .collect();
    for g in &factors {
        let a = dbar.rem(g);
        if a.is_zero() {
            return PrimeVerdict::Skip;
        }
        if !is_square_ff(&a, g) {
            return PrimeVerdict::NonSquare;
        }
    }
    PrimeVerdict::AllSquare(factors)
}

fn field_order(g: &PolyFp) -> BigUint {
    BigUint::from(g.p()).pow(g.degree().unwrap() as u32)
}

fn is_square_ff(a: &PolyFp, g: &PolyFp) -> bool {
    let q = field_order(g);
    a.pow_mod(&((q - 1u32) >> 1), g).is_one()
}

/// Tonelli–Shanks in `F_p[T]/(g)`, `p` odd; `a` must be a nonzero square.
fn sqrt_ff(a: &PolyFp, g: &PolyFp) -> PolyFp {
    let p = g.p();
    let q = field_order(g);
    let qm1 = &q - 1u32;
    let s = qm1.trailing_zeros().unwrap();
    let t = &qm1 >> s;
    let half = &qm1 >> 1;
    let minus_one = PolyFp::constant(p, p - 1);
    let mut k = 2u64;
    let z = loop {
        let z = PolyFp::from_index(p, k);
        k += 1;
        if z.degree().unwrap_or(0) < g.degree().unwrap() && z.pow_mod(&half, g) == minus_one {
            break z;
        }
    };
    let mut m = s;
    let mut c = z.pow_mod(&t, g);
    let mut x = a.pow_mod(&((&t + 1u32) >> 1), g);
    let mut b = a.pow_mod(&t, g);
    while !b.is_one() {
        let mut i = 0;
        let mut bb = b.clone();
        while !bb.is_one() {
            bb = bb.mul_mod(&bb, g);
            i += 1;
        }
        let mut w = c.clone();
        for _ in 0..(m - i - 1) {
            w = w.mul_mod(&w, g);
        }
        x = x.mul_mod(&w, g);
        c = w.mul_mod(&w, g);
        b = b.mul_mod(&c, g);
        m = i;
    }
    x
}

/// Arithmetic in `(ℤ/M)[T]/(f)` with `f` monic.
struct AdicRing {
    m: BigInt,
    f: Vec<BigInt>,
}

impl AdicRing {
    fn new(field_poly: &[Rational], m: BigInt) -> Self {
        let f = field_poly.iter().map(|c| rational_mod_big(c, &m)).collect();
        AdicRing { m, f }
    }

    fn n(&self) -> usize {
        self.f.len() - 1
    }

    fn mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let n = self.n();
        let mut prod = vec![BigInt::zero(); 2 * n];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        for k in (n..2 * n).rev() {
            let c = prod[k].mod_floor(&self.m);
            if c.is_zero() {
                continue;
            }
            for j in 0..n {
                prod[k - n + j] -= &c * &self.f[j];
            }
        }
        prod.truncate(n);
        prod.into_iter().map(|c| c.mod_floor(&self.m)).collect()
    }

    fn reduce(&self, a: &[BigInt]) -> Vec<BigInt> {
        a.iter().map(|c| c.mod_floor(&self.m)).collect()
    }

    fn is_one(&self, a: &[BigInt]) -> bool {
        a[0].mod_floor(&self.m).is_one() && a[1..].iter().all(|c| c.mod_floor(&self.m).is_zero())
    }

    /// Newton iteration `u ← u(2 − a u)` from an inverse modulo `p`.
    fn inverse(&self, a: &[BigInt], u0: &[BigInt]) -> Vec<BigInt> {
        let mut u = self.reduce(u0);
        for _ in 0..128 {
            let au = self.mul(a, &u);
            if self.is_one(&au) {
                return u;
            }
            let mut two_minus = au.iter().map(|c| -c).collect::<Vec<_>>();
            two_minus[0] += 2;
            u = self.mul(&u, &self.reduce(&two_minus));
        }
        u
    }
}

fn rational_mod_big(q: &Rational, m: &BigInt) -> BigInt {
    let den = q.denom().mod_floor(m);
    let inv = mod_inverse(&den, m).expect("denominator coprime to modulus");
    (q.numer() * inv).mod_floor(m)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Rational `r/s ≡ a (mod m)` with `|r|, s ≤ √(m/2)`.
fn rational_reconstruction(a: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m >> 1u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        (r0, r1) = (r1.clone(), &r0 - &q * &r1);
        (s0, s1) = (s1.clone(), &s0 - &q * &s1);
    }
    if s1.is_zero() || s1.abs() > bound || !s1.gcd(m).is_one() {
        return None;
    }
    Some(Rational::new(r1, s1))
}

fn to_big(p: &PolyFp, n: usize) -> Vec<BigInt> {
    (0..n).map(|i| BigInt::from(p.coeff(i))).collect()
}

fn lift_sqrt(d: &NfElem, p: u64, factors: &[PolyFp]) -> Result<Option<NfElem>> {
    let field = d.field();
    let n = field.degree();
    let fbar = field.min_poly_mod(p).unwrap();
    let dbar = reduce_coeffs(d.coeffs(), p).unwrap();
    let roots: Vec<PolyFp> = factors.iter().map(|g| sqrt_ff(&dbar.rem(g), g)).collect();
    let idempotents: Vec<PolyFp> = factors
        .iter()
        .map(|g| {
            let cof = fbar.exact_div(g);
            let inv = cof.inv_mod(g).expect("coprime factors");
            cof.mul_mod(&inv, &fbar)
        })
        .collect();
    let r = factors.len();
    let combos = 1u64 << (r - 1);
    for mask in 0..combos {
        let mut s0 = PolyFp::zero(p);
        for (i, (root, e)) in roots.iter().zip(&idempotents).enumerate() {
            let root = if i > 0 && (mask >> (i - 1)) & 1 == 1 {
                root.neg()
            } else {
                root.clone()
            };
            s0 = s0.add(&root.mul_mod(e, &fbar));
        }
        if let Some(s) = lift_one(d, p, &s0, n)? {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

fn lift_one(d: &NfElem, p: u64, s0: &PolyFp, n: usize) -> Result<Option<NfElem>> {
    let field = d.field().clone();
    let fbar = field.min_poly_mod(p).unwrap();
    let two_s_inv_bar = s0.scale(2).inv_mod(&fbar).ok_or(Error::ZeroElement)?;
    let pb = BigInt::from(p);
    let mut m = pb.clone();
    let mut s = to_big(s0, n);
    let u0 = to_big(&two_s_inv_bar, n);
    while (m.bits()) < LIFT_CAP_BITS {
        m = &m * &m;
        let ring = AdicRing::new(field.min_poly().coeffs(), m.clone());
        let dm: Vec<BigInt> = d.coeffs().iter().map(|c| rational_mod_big(c, &m)).collect();
        let two_s: Vec<BigInt> = s.iter().map(|c| c * 2).collect();
        let u = ring.inverse(&two_s, &u0);
        // s ← s − (s² − d)/(2s)
        let s2 = ring.mul(&s, &s);
        let resid: Vec<BigInt> = s2.iter().zip(&dm).map(|(a, b)| a - b).collect();
        let corr = ring.mul(&resid, &u);
        s = ring.reduce(&s.iter().zip(&corr).map(|(a, b)| a - b).collect::<Vec<_>>());
        let cand: Option<Vec<Rational>> =
            s.iter().map(|c| rational_reconstruction(c, &m)).collect();
        if let Some(coeffs) = cand {
            let x = field.element(coeffs);
            if &(&x * &x) == d {
                return Ok(Some(x));
            }
        }
    }
    Ok(None)
}
