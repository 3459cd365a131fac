//! Trace classification and diagonalization over a quadratic extension.

use crate::error::{Error, Result};
use crate::number_field::{
    adjoin_quadratic_root, compare_modulus_to_one, extend_embedding, Adjunction, EmbeddingHandle,
    FieldExt, FieldMap, NfElem,
};

use super::matrix::Mat2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixClass {
    IdentityClass,
    Parabolic,
    /// Treated as loxodromic; elliptic elements are not distinguished.
    Nonparabolic,
}

pub fn classify(m: &Mat2) -> MatrixClass {
    if m.is_pm_identity() {
        return MatrixClass::IdentityClass;
    }
    let t = m.trace();
    if (&t * &t) == m.field().from_int(4) {
        MatrixClass::Parabolic
    } else {
        MatrixClass::Nonparabolic
    }
}

/// `M = g·diag(λ, λ⁻¹)·g⁻¹` after mapping `M` along `map`.
#[derive(Debug, Clone)]
pub struct Diagonalization {
    pub map: FieldMap,
    pub embedding: EmbeddingHandle,
    pub conj: Mat2,
    pub lambda: NfElem,
}

fn eigenvector(m: &Mat2, mu: &NfElem) -> (NfElem, NfElem) {
    let f = m.field();
    if !m.c.is_zero() {
        (mu - &m.d, m.c.clone())
    } else if !m.b.is_zero() {
        (m.b.clone(), mu - &m.a)
    } else if &m.a == mu {
        (f.one(), f.zero())
    } else {
        (f.zero(), f.one())
    }
}

/// Diagonalizes a nonparabolic matrix, adjoining its eigenvalue when needed. `λ` is the
/// eigenvalue with `|σ(λ)| > 1` at the embedding lying over `h`.
pub fn diagonalize(m: &Mat2, h: &EmbeddingHandle, cap: u32) -> Result<Diagonalization> {
    if classify(m) != MatrixClass::Nonparabolic {
        return Err(Error::NotNonparabolic);
    }
    let field = m.field().clone();
    let tr = m.trace();
    let (map, root) = match adjoin_quadratic_root(&-&tr, &field.one())? {
        Adjunction::InField(r) => (FieldMap::identity(&field), r),
        Adjunction::Extended { map, root, .. } => (map, root),
    };
    let embedding = extend_embedding(h, &map, cap)?;
    let mm = m.map_field(&map);
    let lambda = match compare_modulus_to_one(&root, &embedding, cap) {
        Ok(std::cmp::Ordering::Greater) => root,
        Ok(std::cmp::Ordering::Less) => root.inv()?,
        _ => return Err(Error::UnsupportedEigenvalue),
    };
    let lambda_inv = lambda.inv()?;
    let (x1, y1) = eigenvector(&mm, &lambda);
    let (x2, y2) = eigenvector(&mm, &lambda_inv);
    let det = &(&x1 * &y2) - &(&x2 * &y1);
    let s = det.inv()?;
    let g = Mat2::raw(x1, &x2 * &s, y1, &y2 * &s);
    let check = g.mul(&Mat2::diag(&lambda)?).mul(&g.inv());
    if check != mm {
        return Err(Error::InvalidInput(
            "diagonalization failed verification".into(),
        ));
    }
    Ok(Diagonalization {
        map,
        embedding,
        conj: g,
        lambda,
    })
}
