//! Factorization over `F_p`: squarefree decomposition, distinct-degree splitting and
//! equal-degree splitting with seeds taken in natural order.

use num_bigint::BigUint;
use num_traits::One;

use super::poly_fp::PolyFp;
use crate::error::{Error, Result};

/// Monic irreducible factors with multiplicities, sorted by degree then coefficients.
pub fn factor_mod_p(f: &PolyFp) -> Result<Vec<(PolyFp, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let mut out: Vec<(PolyFp, usize)> = Vec::new();
    for (g, mult) in squarefree_decomposition(f) {
        for (h, d) in distinct_degree(&g) {
            for irr in equal_degree(&h, d) {
                out.push((irr, mult));
            }
        }
    }
    out.sort_by(|a, b| a.0.canonical_cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut merged: Vec<(PolyFp, usize)> = Vec::new();
    for (g, m) in out {
        match merged.last_mut() {
            Some((h, k)) if *h == g => *k += m,
            _ => merged.push((g, m)),
        }
    }
    Ok(merged)
}

/// True when `f` (nonzero) is irreducible over `F_p`.
pub fn is_irreducible(f: &PolyFp) -> bool {
    match f.degree() {
        None | Some(0) => false,
        Some(_) => {
            let f = f.monic();
            matches!(factor_mod_p(&f).as_deref(), Ok([(_, 1)]))
        }
    }
}

fn squarefree_decomposition(f: &PolyFp) -> Vec<(PolyFp, usize)> {
    let p = f.p();
    let mut out = Vec::new();
    if f.degree() == Some(0) {
        return out;
    }
    let df = f.derivative();
    let mut c = f.gcd(&df);
    let mut w = f.exact_div(&c);
    let mut i = 1;
    while w.degree() != Some(0) {
        let y = w.gcd(&c);
        let fac = w.exact_div(&y);
        if fac.degree() != Some(0) {
            out.push((fac, i));
        }
        w = y;
        c = c.exact_div(&w);
        i += 1;
    }
    if c.degree() != Some(0) {
        let root = PolyFp::new(p, c.coeffs().iter().step_by(p as usize).copied().collect());
        for (g, m) in squarefree_decomposition(&root) {
            out.push((g, m * p as usize));
        }
    }
    out
}

fn distinct_degree(f: &PolyFp) -> Vec<(PolyFp, usize)> {
    let p = f.p();
    let mut out = Vec::new();
    let mut g = f.clone();
    let x = PolyFp::x(p);
    let mut h = x.rem(&g);
    let mut i = 1;
    while let Some(deg) = g.degree() {
        if deg < 2 * i {
            break;
        }
        h = h.pow_mod_u64(p, &g);
        let d = h.sub(&x).gcd(&g);
        if d.degree() != Some(0) {
            g = g.exact_div(&d);
            h = h.rem(&g);
            out.push((d, i));
        }
        i += 1;
    }
    if let Some(deg) = g.degree() {
        if deg > 0 {
            out.push((g, deg));
        }
    }
    out
}

fn equal_degree(f: &PolyFp, d: usize) -> Vec<PolyFp> {
    let n = f.degree().expect("nonzero");
    if n == d {
        return vec![f.clone()];
    }
    let p = f.p();
    let exponent = (BigUint::from(p).pow(d as u32) - BigUint::one()) >> 1;
    let mut seed = 1u64;
    loop {
        let a = PolyFp::from_index(p, seed);
        seed += 1;
        if a.degree().unwrap_or(0) >= n {
            continue;
        }
        let b = if p == 2 {
            let mut acc = a.rem(f);
            let mut term = acc.clone();
            for _ in 1..d {
                term = term.mul_mod(&term, f);
                acc = acc.add(&term);
            }
            acc
        } else {
            a.pow_mod(&exponent, f).sub(&PolyFp::one(p))
        };
        let g = b.gcd(f);
        if let Some(dg) = g.degree() {
            if dg > 0 && dg < n {
                let h = f.exact_div(&g);
                let mut out = equal_degree(&g, d);
                out.extend(equal_degree(&h, d));
                return out;
            }
        }
    }
}
