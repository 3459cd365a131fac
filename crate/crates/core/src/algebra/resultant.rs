//! Resultants by the subresultant pseudo-remainder sequence over ℤ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly_q::PolyQ;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Exact resultant `lc(f)^{deg g} ∏ g(α_i)` over the roots `α_i` of `f`.
pub fn resultant(f: &PolyQ, g: &PolyQ) -> Result<Rational> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (fi, fs) = clear_denominators(f);
    let (gi, gs) = clear_denominators(g);
    let df = f.degree().unwrap() as u32;
    let dg = g.degree().unwrap() as u32;
    let r = Rational::from_integer(resultant_z(&fi, &gi));
    // res(f, g) = res(fi/fs, gi/gs) = fs^{-dg} gs^{-df} res(fi, gi)
    let scale = Rational::from_integer(num_traits::pow(fs, dg as usize))
        * Rational::from_integer(num_traits::pow(gs, df as usize));
    Ok(r / scale)
}

/// `disc(f) = (-1)^{n(n-1)/2} res(f, f') / lc(f)`.
pub fn discriminant(f: &PolyQ) -> Result<Rational> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    if n == 0 {
        return Ok(Rational::one());
    }
    let r = resultant(f, &f.derivative())?;
    let sign = if (n * (n - 1) / 2) % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    };
    Ok(sign * r / f.lead().unwrap())
}

fn clear_denominators(f: &PolyQ) -> (Vec<BigInt>, BigInt) {
    let den = f.denominator_lcm();
    let coeffs = f
        .coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
        .collect();
    (coeffs, den)
}

fn degree(a: &[BigInt]) -> usize {
    a.len() - 1
}

fn trim(a: &mut Vec<BigInt>) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Pseudo-remainder: `lc(b)^{deg a - deg b + 1} a mod b`.
fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = degree(b);
    let lb = b[db].clone();
    let mut r = a.to_vec();
    let mut e = degree(a) + 1 - db;
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for (j, bc) in b.iter().enumerate() {
            r[dr - db + j] -= &lr * bc;
        }
        trim(&mut r);
        e -= 1;
        if r.is_empty() {
            break;
        }
    }
    let factor = num_traits::pow(lb, e);
    for c in r.iter_mut() {
        *c *= &factor;
    }
    r
}

/// Subresultant algorithm for integer polynomials (both nonzero).
pub fn resultant_z(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    let mut s = BigInt::one();
    if degree(&a) < degree(&b) {
        if degree(&a) % 2 == 1 && degree(&b) % 2 == 1 {
            s = -s;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if degree(&b) == 0 {
        return num_traits::pow(b[0].clone(), degree(&a));
    }
    let ca = content(&a);
    let cb = content(&b);
    for c in a.iter_mut() {
        *c = &*c / &ca;
    }
    for c in b.iter_mut() {
        *c = &*c / &cb;
    }
    let t = num_traits::pow(ca, degree(&b)) * num_traits::pow(cb, degree(&a));
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = degree(&a) - degree(&b);
        if degree(&a) % 2 == 1 && degree(&b) % 2 == 1 {
            s = -s;
        }
        let r = prem(&a, &b);
        if r.is_empty() {
            return BigInt::zero();
        }
        a = b;
        let div = &g * num_traits::pow(h.clone(), delta);
        b = r.into_iter().map(|c| c / &div).collect();
        g = a[degree(&a)].clone();
        h = if delta == 0 {
            h
        } else {
            num_traits::pow(g.clone(), delta) / num_traits::pow(h.clone(), delta - 1)
        };
        if degree(&b) == 0 {
            let da = degree(&a);
            let lb = b[0].clone();
            let hh = if da == 0 {
                h
            } else {
                num_traits::pow(lb, da) / num_traits::pow(h, da - 1)
            };
            return s * t * hh;
        }
    }
}

/// Numerator and denominator of `|disc(f)|`.
pub fn discriminant_parts(f: &PolyQ) -> Result<(BigInt, BigInt)> {
    let d = discriminant(f)?;
    Ok((d.numer().abs(), d.denom().clone()))
}
