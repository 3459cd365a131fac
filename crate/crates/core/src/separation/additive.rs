//! Separating an element from an integer lattice in a residue ring.

use num_bigint::BigInt;

use crate::algebra::{linalg, rational, Rational};
use crate::budget::SearchBudget;
use crate::error::{Error, Result};
use crate::number_field::{FieldExt, NfElem};
use crate::residue::{
    good_primes, reduce, residue_split, span_member_images, FFElem, MapRef, TrackedRing,
};

/// Which argument produced the prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdditiveBranch {
    /// `b ∉ ℚ(β)`: a single residue field in which `η(b)` leaves the span.
    Frobenius,
    /// `b ∈ ℚ(β)`: several factors at one prime, used jointly.
    Product,
}

/// `η(b) ∉` the joint `F_p`-span of the images of the lattice basis under `maps`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdditiveSeparation {
    pub p: u64,
    pub maps: Vec<MapRef>,
    pub branch: AdditiveBranch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AdditiveOutcome {
    Separated(AdditiveSeparation),
    /// `b = Σ c_i basis_i` with integer coordinates.
    Membership(Vec<BigInt>),
}

/// Rational coordinates of `x` in the ℚ-span of `basis`, if it lies there.
pub fn rational_coordinates(x: &NfElem, basis: &[NfElem]) -> Option<Vec<Rational>> {
    let cols: Vec<Vec<Rational>> = basis.iter().map(|b| b.coeffs().to_vec()).collect();
    linalg::solve_columns_q(&cols, x.coeffs())
}

/// ℚ-basis of the subalgebra generated by `gens`.
fn generated_subalgebra(gens: &[NfElem], field: &crate::number_field::FieldRef) -> Vec<NfElem> {
    let mut basis = vec![field.one()];
    loop {
        let mut grew = false;
        let snapshot = basis.clone();
        for s in &snapshot {
            for g in gens {
                let prod = s * g;
                let mut vecs: Vec<Vec<Rational>> =
                    basis.iter().map(|b| b.coeffs().to_vec()).collect();
                vecs.push(prod.coeffs().to_vec());
                if linalg::rank_q(&vecs) > basis.len() {
                    basis.push(prod);
                    grew = true;
                }
            }
        }
        if !grew {
            return basis;
        }
    }
}

/// Separates `b` from `ℤ + ℤβ`.
pub fn separate_additive(
    b: &NfElem,
    beta: &NfElem,
    ring: &TrackedRing,
    budget: &SearchBudget,
) -> Result<AdditiveOutcome> {
    let one = b.field().one();
    separate_from_lattice(b, &[one, beta.clone()], ring, budget)
}

/// Separates `x` from the lattice `ℤ·basis_0 + ℤ·basis_1 + …` (ℚ-independent basis).
pub fn separate_from_lattice(
    x: &NfElem,
    basis: &[NfElem],
    ring: &TrackedRing,
    budget: &SearchBudget,
) -> Result<AdditiveOutcome> {
    let field = x.field().clone();
    if basis.is_empty() || basis[0].is_zero() {
        return Err(Error::InvalidInput(
            "lattice basis must start with a nonzero element".into(),
        ));
    }
    if let Some(coords) = rational_coordinates(x, basis) {
        if coords.iter().all(rational::is_integer) {
            return Ok(AdditiveOutcome::Membership(
                coords.iter().map(|c| c.to_integer()).collect(),
            ));
        }
        return Err(Error::NotApplicable);
    }
    let lead_inv = basis[0].inv()?;
    let ratios: Vec<NfElem> = basis[1..].iter().map(|b| b * &lead_inv).collect();
    let x_scaled = x * &lead_inv;
    let sub = generated_subalgebra(&ratios, &field);
    let branch = if rational_coordinates(&x_scaled, &sub).is_some() {
        AdditiveBranch::Product
    } else {
        AdditiveBranch::Frobenius
    };
    let ring = ring
        .clone()
        .with_generators(basis.iter().cloned().chain(std::iter::once(x.clone())))
        .with_units([basis[0].clone()]);
    for p in good_primes(&ring, budget) {
        let maps = residue_split(&field, p)?;
        let x_img: Vec<FFElem> = maps.iter().map(|m| reduce(m, x)).collect::<Result<_>>()?;
        let basis_img: Vec<Vec<FFElem>> = basis
            .iter()
            .map(|b| {
                maps.iter()
                    .map(|m| reduce(m, b))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        for (j, map) in maps.iter().enumerate() {
            let xi = [x_img[j].clone()];
            let bi: Vec<Vec<FFElem>> = basis_img.iter().map(|v| vec![v[j].clone()]).collect();
            if span_member_images(&xi, &bi)?.is_none() {
                log::debug!("additive separation at p={p} factor={}", map.factor());
                return Ok(AdditiveOutcome::Separated(AdditiveSeparation {
                    p,
                    maps: vec![map.clone()],
                    branch,
                }));
            }
        }
        if branch == AdditiveBranch::Product
            && maps.len() > 1
            && span_member_images(&x_img, &basis_img)?.is_none()
        {
            log::debug!(
                "additive separation at p={p} jointly over {} factors",
                maps.len()
            );
            return Ok(AdditiveOutcome::Separated(AdditiveSeparation {
                p,
                maps,
                branch,
            }));
        }
    }
    Err(Error::BudgetExhausted)
}
