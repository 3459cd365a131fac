//! Span membership of residue images.

use std::sync::Arc;

use crate::algebra::linalg;
use crate::error::{Error, Result};
use crate::number_field::NfElem;

use super::map::{reduce, FFElem, MapRef};

/// Coefficients `c ∈ F_p^k` with `Σ c_i η(basis_i) = η(x)` under every map simultaneously.
pub fn span_member(x: &NfElem, basis: &[NfElem], maps: &[MapRef]) -> Result<Option<Vec<u64>>> {
    let images: Vec<FFElem> = maps.iter().map(|m| reduce(m, x)).collect::<Result<_>>()?;
    let basis_images: Vec<Vec<FFElem>> = basis
        .iter()
        .map(|b| {
            maps.iter()
                .map(|m| reduce(m, b))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    span_member_images(&images, &basis_images)
}

/// As [`span_member`], on precomputed images: `basis_images[i][j]` is the image of the
/// `i`-th basis element under the `j`-th map.
pub fn span_member_images(x: &[FFElem], basis_images: &[Vec<FFElem>]) -> Result<Option<Vec<u64>>> {
    let Some(first) = x.first() else {
        return Ok(Some(vec![0; basis_images.len()]));
    };
    let p = first.map().p();
    if x.iter().any(|e| e.map().p() != p) || basis_images.iter().flatten().any(|e| e.map().p() != p)
    {
        return Err(Error::InconsistentPrimes);
    }
    for b in basis_images {
        if b.len() != x.len()
            || b.iter()
                .zip(x)
                .any(|(u, v)| !Arc::ptr_eq(u.map(), v.map()) && u.map() != v.map())
        {
            return Err(Error::InconsistentPrimes);
        }
    }
    let rhs: Vec<u64> = x.iter().flat_map(|e| e.coords()).collect();
    let columns: Vec<Vec<u64>> = basis_images
        .iter()
        .map(|imgs| imgs.iter().flat_map(|e| e.coords()).collect())
        .collect();
    Ok(linalg::solve_columns_fp(&columns, &rhs, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PolyQ;
    use crate::number_field::{FieldExt, NumberField};
    use crate::residue::residue_split;

    #[test]
    fn membership_in_small_fields() {
        let k = NumberField::new("t", PolyQ::from_i64(&[1, 0, 1])).unwrap();
        let maps = residue_split(&k, 3).unwrap();
        let x = &k.gen().scale(&crate::algebra::rat(2)) + &k.one();
        assert_eq!(
            span_member(&x, &[k.one(), k.gen()], &maps).unwrap(),
            Some(vec![1, 2])
        );
        assert_eq!(span_member(&k.gen(), &[k.one()], &maps).unwrap(), None);

        let c = NumberField::new("t", PolyQ::from_i64(&[-2, 0, 0, 1])).unwrap();
        let maps = residue_split(&c, 5).unwrap();
        assert_eq!(maps.len(), 2);
        let b2 = &c.gen() * &c.gen();
        assert_eq!(span_member(&b2, &[c.one(), c.gen()], &maps).unwrap(), None);
        assert!(span_member(&b2, &[c.one(), c.gen()], &maps[..1])
            .unwrap()
            .is_some());
    }
}
