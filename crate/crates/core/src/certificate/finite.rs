//! Matrices over products of finite fields `F_p[T]/(f₁) × F_q[T]/(f₂) × …`.

use std::collections::HashSet;

use crate::algebra::{modp, PolyFp};
use crate::error::{Error, Result};

/// One finite field `F_p[T]/(factor)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteField {
    pub p: u64,
    pub modulus: PolyFp,
}

impl FiniteField {
    pub fn new(p: u64, modulus: PolyFp) -> Self {
        FiniteField { p, modulus }
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap_or(0)
    }

    pub fn size(&self) -> u128 {
        (self.p as u128).pow(self.degree() as u32)
    }

    pub fn reduce(&self, x: &PolyFp) -> PolyFp {
        x.rem(&self.modulus)
    }

    fn coords(&self, x: &PolyFp, out: &mut Vec<u64>) {
        for i in 0..self.degree() {
            out.push(x.coeff(i));
        }
    }
}

/// A tuple of 2×2 matrices, one per component field, entries `[a, b, c, d]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FMat(pub Vec<[PolyFp; 4]>);

/// The product ring the matrices live over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteRing {
    pub fields: Vec<FiniteField>,
    pub projective: bool,
}

impl FiniteRing {
    pub fn new(fields: Vec<FiniteField>, projective: bool) -> Self {
        FiniteRing { fields, projective }
    }

    pub fn identity(&self) -> FMat {
        FMat(
            self.fields
                .iter()
                .map(|f| {
                    [
                        PolyFp::one(f.p),
                        PolyFp::zero(f.p),
                        PolyFp::zero(f.p),
                        PolyFp::one(f.p),
                    ]
                })
                .collect(),
        )
    }

    pub fn mul(&self, x: &FMat, y: &FMat) -> FMat {
        FMat(
            self.fields
                .iter()
                .zip(x.0.iter().zip(&y.0))
                .map(|(f, (a, b))| {
                    let m = |i: usize, j: usize| a[i].mul_mod(&b[j], &f.modulus);
                    [
                        m(0, 0).add(&m(1, 2)),
                        m(0, 1).add(&m(1, 3)),
                        m(2, 0).add(&m(3, 2)),
                        m(2, 1).add(&m(3, 3)),
                    ]
                })
                .collect(),
        )
    }

    pub fn inv(&self, x: &FMat) -> FMat {
        FMat(
            x.0.iter()
                .map(|e| [e[3].clone(), e[1].neg(), e[2].neg(), e[0].clone()])
                .collect(),
        )
    }

    pub fn neg(&self, x: &FMat) -> FMat {
        FMat(
            x.0.iter()
                .map(|e| [e[0].neg(), e[1].neg(), e[2].neg(), e[3].neg()])
                .collect(),
        )
    }

    pub fn pow(&self, x: &FMat, mut e: u64) -> FMat {
        let mut acc = self.identity();
        let mut b = x.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        acc
    }

    fn flat(&self, x: &FMat) -> Vec<u64> {
        let mut out = Vec::new();
        for (f, e) in self.fields.iter().zip(&x.0) {
            for entry in e {
                f.coords(entry, &mut out);
            }
        }
        out
    }

    /// Hash key; `M` and `−M` share a key in projective mode.
    pub fn key(&self, x: &FMat) -> Vec<u64> {
        let k = self.flat(x);
        if self.projective {
            k.min(self.flat(&self.neg(x)))
        } else {
            k
        }
    }

    pub fn det_is_one(&self, x: &FMat) -> bool {
        self.fields.iter().zip(&x.0).all(|(f, e)| {
            e[0].mul_mod(&e[3], &f.modulus)
                .sub(&e[1].mul_mod(&e[2], &f.modulus))
                .is_one()
        })
    }

    /// `tr(x)² = 4` in component `i`.
    pub fn trace_squared_is_four(&self, x: &FMat, i: usize) -> bool {
        let f = &self.fields[i];
        let t = x.0[i][0].add(&x.0[i][3]);
        t.mul_mod(&t, &f.modulus) == PolyFp::constant(f.p, 4 % f.p)
    }

    /// `|SL(2)|` over the product, halved in projective mode when `−I ≠ I`.
    pub fn group_order(&self) -> num_bigint::BigUint {
        let mut n = num_bigint::BigUint::from(1u32);
        for f in &self.fields {
            let q = num_bigint::BigUint::from(f.size());
            n *= &q * (&q * &q - 1u32);
        }
        if self.projective && self.fields.iter().any(|f| f.p != 2) {
            n /= 2u32;
        }
        n
    }

    /// Every element of `SL(2, F_q)` for a single-component ring (small `q` only).
    pub fn all_elements(&self) -> Vec<FMat> {
        assert_eq!(
            self.fields.len(),
            1,
            "whole-group enumeration needs a single field"
        );
        let f = &self.fields[0];
        let q = f.size() as u64;
        let elems: Vec<PolyFp> = (0..q).map(|k| field_element(f, k)).collect();
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        for a in &elems {
            for b in &elems {
                for c in &elems {
                    for d in &elems {
                        let m = FMat(vec![[a.clone(), b.clone(), c.clone(), d.clone()]]);
                        if self.det_is_one(&m) && seen.insert(self.key(&m)) {
                            out.push(m);
                        }
                    }
                }
            }
        }
        out
    }
}

fn field_element(f: &FiniteField, mut k: u64) -> PolyFp {
    let mut c = Vec::with_capacity(f.degree());
    for _ in 0..f.degree() {
        c.push(k % f.p);
        k /= f.p;
    }
    PolyFp::new(f.p, c)
}

/// The group generated by `gens`, by breadth-first closure; elements are stored once per key.
pub fn subgroup_closure(ring: &FiniteRing, gens: &[FMat], cap: usize) -> Result<Vec<FMat>> {
    let id = ring.identity();
    let mut seen = HashSet::new();
    seen.insert(ring.key(&id));
    let mut elems = vec![id];
    let mut next = 0;
    while next < elems.len() {
        let x = elems[next].clone();
        next += 1;
        for g in gens {
            let y = ring.mul(&x, g);
            if seen.insert(ring.key(&y)) {
                if elems.len() >= cap {
                    return Err(Error::EnumerationCap(cap));
                }
                elems.push(y);
            }
        }
    }
    Ok(elems)
}

/// Reduces a rational `n/d` into `F_p`.
pub fn reduce_fraction(n: &num_bigint::BigInt, d: &num_bigint::BigInt, p: u64) -> Option<u64> {
    let dn = crate::algebra::rational::bigint_mod(d, p);
    if dn == 0 {
        return None;
    }
    Some(modp::mul(
        crate::algebra::rational::bigint_mod(n, p),
        modp::inv(dn, p)?,
        p,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> FiniteRing {
        FiniteRing::new(
            vec![FiniteField::new(5, PolyFp::from_i64(5, &[0, 1]))],
            false,
        )
    }

    fn mat(r: &FiniteRing, e: [i64; 4]) -> FMat {
        let p = r.fields[0].p;
        FMat(vec![e.map(|x| PolyFp::from_i64(p, &[x]))])
    }

    #[test]
    fn closure_sizes() {
        let r = f5();
        assert_eq!(
            subgroup_closure(&r, &[mat(&r, [1, 1, 0, 1])], 100)
                .unwrap()
                .len(),
            5
        );
        assert_eq!(subgroup_closure(&r, &[r.identity()], 100).unwrap().len(), 1);
        assert_eq!(
            subgroup_closure(&r, &[mat(&r, [2, 0, 0, 3])], 100)
                .unwrap()
                .len(),
            4
        );
        assert_eq!(r.all_elements().len(), 120);
        assert_eq!(r.group_order(), 120u32.into());
        let s = subgroup_closure(&r, &[mat(&r, [1, 1, 0, 1]), mat(&r, [1, 0, 1, 1])], 200).unwrap();
        assert_eq!(s.len(), 120);
        assert_eq!(
            subgroup_closure(&r, &[mat(&r, [1, 1, 0, 1]), mat(&r, [1, 0, 1, 1])], 50),
            Err(Error::EnumerationCap(50))
        );
        let pr = FiniteRing::new(r.fields.clone(), true);
        assert_eq!(pr.all_elements().len(), 60);
    }
}
