//! Residue maps `O_k → F_p[T]/(g)` and finite-field elements.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;

use crate::algebra::{factor_mod_p, is_irreducible, rational, PolyFp};
use crate::error::{Error, Result};
use crate::number_field::{FieldRef, NfElem};

/// A residue class field map `η: R → F_p[T]/(g)` for a monic irreducible factor `g` of
/// `f mod p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ResidueMap {
    field: FieldRef,
    p: u64,
    factor: PolyFp,
}

pub type MapRef = Arc<ResidueMap>;

impl ResidueMap {
    /// Validates that `p` is unramified and `factor` is a monic irreducible divisor of `f mod p`.
    pub fn new(field: &FieldRef, p: u64, factor: PolyFp) -> Result<MapRef> {
        if !crate::algebra::integer::is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        if !field.is_unramified(p) {
            return Err(Error::RamifiedPrime(p));
        }
        let fbar = field.min_poly_mod(p).ok_or(Error::NotPIntegral(p))?;
        if factor.p() != p
            || !factor.is_monic()
            || !is_irreducible(&factor)
            || !factor.divides(&fbar)
        {
            return Err(Error::InvalidInput(format!(
                "{factor:?} is not an irreducible factor of f mod {p}"
            )));
        }
        Ok(Arc::new(ResidueMap {
            field: field.clone(),
            p,
            factor,
        }))
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn factor(&self) -> &PolyFp {
        &self.factor
    }

    pub fn degree(&self) -> usize {
        self.factor.degree().unwrap()
    }

    /// `p^d`.
    pub fn order(&self) -> BigUint {
        BigUint::from(self.p).pow(self.degree() as u32)
    }
}

impl fmt::Debug for ResidueMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "η[p={}, {}]", self.p, self.factor)
    }
}

/// One map per irreducible factor of `f mod p`, in `factor_mod_p` order.
pub fn residue_split(field: &FieldRef, p: u64) -> Result<Vec<MapRef>> {
    if !field.is_unramified(p) {
        return Err(Error::RamifiedPrime(p));
    }
    let fbar = field.min_poly_mod(p).ok_or(Error::NotPIntegral(p))?;
    Ok(factor_mod_p(&fbar)?
        .into_iter()
        .map(|(g, _)| {
            Arc::new(ResidueMap {
                field: field.clone(),
                p,
                factor: g,
            })
        })
        .collect())
}

/// An element of the residue field of a map.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FFElem {
    map: MapRef,
    value: PolyFp,
}

impl FFElem {
    pub fn new(map: &MapRef, value: PolyFp) -> Self {
        FFElem {
            map: map.clone(),
            value: value.rem(&map.factor),
        }
    }

    pub fn from_u64(map: &MapRef, c: u64) -> Self {
        Self::new(map, PolyFp::constant(map.p, c))
    }

    pub fn map(&self) -> &MapRef {
        &self.map
    }

    pub fn value(&self) -> &PolyFp {
        &self.value
    }

    /// Coordinates in the basis `1, T, …, T^{d−1}`.
    pub fn coords(&self) -> Vec<u64> {
        (0..self.map.degree())
            .map(|i| self.value.coeff(i))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.value.is_one()
    }

    /// Element of the prime field, if it is one.
    pub fn as_prime_field(&self) -> Option<u64> {
        match self.value.degree() {
            None => Some(0),
            Some(0) => Some(self.value.coeff(0)),
            _ => None,
        }
    }

    pub fn add(&self, o: &FFElem) -> FFElem {
        FFElem {
            map: self.map.clone(),
            value: self.value.add(&o.value),
        }
    }

    pub fn sub(&self, o: &FFElem) -> FFElem {
        FFElem {
            map: self.map.clone(),
            value: self.value.sub(&o.value),
        }
    }

    pub fn neg(&self) -> FFElem {
        FFElem {
            map: self.map.clone(),
            value: self.value.neg(),
        }
    }

    pub fn mul(&self, o: &FFElem) -> FFElem {
        FFElem {
            map: self.map.clone(),
            value: self.value.mul_mod(&o.value, &self.map.factor),
        }
    }

    pub fn inv(&self) -> Result<FFElem> {
        let v = self
            .value
            .inv_mod(&self.map.factor)
            .ok_or(Error::ZeroElement)?;
        Ok(FFElem {
            map: self.map.clone(),
            value: v,
        })
    }

    pub fn pow(&self, e: &BigUint) -> FFElem {
        FFElem {
            map: self.map.clone(),
            value: self.value.pow_mod(e, &self.map.factor),
        }
    }

    pub fn pow_i64(&self, e: i64) -> Result<FFElem> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        Ok(base.pow(&BigUint::from(e.unsigned_abs())))
    }
}

impl fmt::Debug for FFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} in F_{}^{}",
            self.value,
            self.map.p,
            self.map.degree()
        )
    }
}

/// `η(x)`: coefficientwise reduction followed by reduction modulo the factor.
pub fn reduce(map: &MapRef, x: &NfElem) -> Result<FFElem> {
    if x.field() != &map.field {
        return Err(Error::FieldMismatch);
    }
    let coeffs = x
        .coeffs()
        .iter()
        .map(|c| rational::rational_mod(c, map.p))
        .collect::<Option<Vec<u64>>>()
        .ok_or(Error::NotPIntegral(map.p))?;
    Ok(FFElem::new(map, PolyFp::new(map.p, coeffs)))
}

/// `η(x)` for a rational `x`.
pub fn reduce_rational(map: &MapRef, q: &crate::algebra::Rational) -> Result<FFElem> {
    let v = rational::rational_mod(q, map.p).ok_or(Error::NotPIntegral(map.p))?;
    Ok(FFElem::from_u64(map, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{ratio, PolyQ};
    use crate::number_field::{FieldExt, NumberField};

    fn gaussian() -> FieldRef {
        NumberField::new("i", PolyQ::from_i64(&[1, 0, 1])).unwrap()
    }

    #[test]
    fn splitting_of_gaussian_field() {
        let k = gaussian();
        let maps = residue_split(&k, 5).unwrap();
        let roots: Vec<u64> = maps.iter().map(|m| (5 - m.factor().coeff(0)) % 5).collect();
        assert_eq!(maps.len(), 2);
        assert_eq!(
            roots
                .iter()
                .copied()
                .collect::<std::collections::BTreeSet<_>>(),
            [2, 3].into()
        );
        let maps3 = residue_split(&k, 3).unwrap();
        assert_eq!(maps3.len(), 1);
        assert_eq!(maps3[0].degree(), 2);
        assert_eq!(residue_split(&k, 2), Err(Error::RamifiedPrime(2)));
        let q = NumberField::rationals();
        let m7 = residue_split(&q, 7).unwrap();
        assert_eq!(m7.len(), 1);
        assert_eq!(m7[0].degree(), 1);
    }

    #[test]
    fn reductions() {
        let k = gaussian();
        let map = ResidueMap::new(&k, 5, PolyFp::from_i64(5, &[3, 1])).unwrap();
        let one_plus_i = &k.one() + &k.gen();
        assert_eq!(reduce(&map, &one_plus_i).unwrap().as_prime_field(), Some(3));
        assert!(reduce(&map, &k.zero()).unwrap().is_zero());
        let f9 = residue_split(&k, 3).unwrap()[0].clone();
        assert_eq!(
            reduce(&f9, &k.from_rational(ratio(1, 2)))
                .unwrap()
                .as_prime_field(),
            Some(2)
        );
        assert_eq!(
            reduce(&f9, &k.from_rational(ratio(1, 3))),
            Err(Error::NotPIntegral(3))
        );
    }

    #[test]
    fn rejects_invalid_maps() {
        let k = gaussian();
        assert!(ResidueMap::new(&k, 3, PolyFp::from_i64(3, &[1, 1])).is_err());
        assert!(ResidueMap::new(&k, 2, PolyFp::from_i64(2, &[1, 1])).is_err());
        assert!(ResidueMap::new(&k, 9, PolyFp::from_i64(9, &[1, 1])).is_err());
    }
}
