//! Shared search state: tracked rings, prime scans and evidence.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::{linalg, modp, PolyFp};
use crate::budget::SearchBudget;
use crate::certificate::{Claim, ResidueRingSpec, SeparationCertificate};
use crate::error::{Error, Result};
use crate::mobius::Mat2;
use crate::number_field::{FieldMap, NfElem};
use crate::residue::{good_primes, reduce, residue_split, span_member_images, MapRef, TrackedRing};

use super::problem::{Outcome, Problem, UnsupportedReason};

/// Residue maps of a working field under which the claim holds.
#[derive(Debug, Clone)]
pub(crate) struct Evidence {
    pub map: FieldMap,
    pub maps: Vec<MapRef>,
    pub case: Option<&'static str>,
    pub m0: Option<BigInt>,
    pub n0: Option<BigInt>,
    pub notes: String,
}

impl Evidence {
    pub fn new(map: &FieldMap, maps: Vec<MapRef>, notes: impl Into<String>) -> Self {
        Evidence {
            map: map.clone(),
            maps,
            case: None,
            m0: None,
            n0: None,
            notes: notes.into(),
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) enum Found {
    Member(Vec<BigInt>),
    Separated(Evidence),
    Unsupported(UnsupportedReason, String),
}

pub(crate) struct Ctx<'a> {
    pub problem: &'a Problem,
    pub budget: &'a SearchBudget,
}

impl<'a> Ctx<'a> {
    pub fn new(problem: &'a Problem, budget: &'a SearchBudget) -> Self {
        Ctx { problem, budget }
    }

    pub fn cap(&self) -> u32 {
        self.budget.precision_cap_bits
    }

    /// Ring of the working field `map.target` containing the whole problem, with the primes
    /// that are bad for the base field excluded.
    pub fn ring(&self, map: &FieldMap, mats: &[&Mat2]) -> TrackedRing {
        let base = &self.problem.field;
        let mut ring = TrackedRing::new(&map.target);
        let disc = base.discriminant();
        ring.add_avoid(disc.numer().clone());
        ring.add_avoid(base.min_poly().denominator_lcm());
        for d in &self.problem.tracked_denominators {
            ring.add_avoid(d.clone());
        }
        for m in self.problem.matrices() {
            for e in m.entries() {
                for d in e.denominators() {
                    ring.add_avoid(d.clone());
                }
                ring.add_generator(map.apply(e));
            }
        }
        ring.add_generator(map.gen_image.clone());
        for m in mats {
            for e in m.entries() {
                ring.add_generator(e.clone());
            }
        }
        ring
    }

    /// First good prime and factor (ascending) accepted by `pred`.
    pub fn first_map(
        &self,
        ring: &TrackedRing,
        mut pred: impl FnMut(&MapRef) -> Result<bool>,
    ) -> Result<MapRef> {
        for p in good_primes(ring, self.budget) {
            for map in residue_split(ring.field(), p)? {
                let r = pred(&map);
                log::debug!(
                    "scan p={p} factor={} ok={}",
                    map.factor(),
                    matches!(r, Ok(true))
                );
                match r {
                    Ok(true) => return Ok(map),
                    Ok(false) | Err(Error::FactorizationLimit) => {}
                    Err(e) => return Err(e),
                }
            }
        }
        Err(Error::BudgetExhausted)
    }

    /// First map at which some element of `xs` has nonzero image.
    pub fn nonzero_somewhere(&self, ring: &TrackedRing, groups: &[Vec<NfElem>]) -> Result<MapRef> {
        self.first_map(ring, |m| {
            for g in groups {
                let mut any = false;
                for x in g {
                    any |= !reduce(m, x)?.is_zero();
                }
                if !any {
                    return Ok(false);
                }
            }
            Ok(true)
        })
    }

    pub fn certificate(&self, claim: Claim, ev: &Evidence) -> Result<SeparationCertificate> {
        let rings = ev
            .maps
            .iter()
            .map(|m| restrict(m, &ev.map))
            .collect::<Result<Vec<_>>>()?;
        let mut cert = SeparationCertificate::new(claim, self.problem.digest(), rings);
        cert.auxiliary.case = ev.case.map(str::to_string);
        cert.auxiliary.m0 = ev.m0.clone();
        cert.auxiliary.n0 = ev.n0.clone();
        cert.notes = ev.notes.clone();
        Ok(cert)
    }

    pub fn outcome(&self, claim: Claim, found: Result<Found>) -> Result<Outcome> {
        match found {
            Ok(Found::Member(e)) => Ok(Outcome::Membership(e)),
            Ok(Found::Separated(ev)) => Ok(Outcome::Certificate(self.certificate(claim, &ev)?)),
            Ok(Found::Unsupported(r, d)) => Ok(Outcome::unsupported(r, d)),
            Err(e) => error_outcome(e),
        }
    }
}

pub(crate) fn error_outcome(e: Error) -> Result<Outcome> {
    match e {
        Error::BudgetExhausted => Ok(Outcome::BudgetExhausted),
        Error::SharedFixedPoint => Ok(Outcome::unsupported(
            UnsupportedReason::SharedFixedPoint,
            e.to_string(),
        )),
        Error::UnsupportedEigenvalue => Ok(Outcome::unsupported(
            UnsupportedReason::UnsupportedEigenvalue,
            e.to_string(),
        )),
        Error::Indeterminate | Error::FactorizationLimit => Ok(Outcome::unsupported(
            UnsupportedReason::Indeterminate,
            e.to_string(),
        )),
        e => Err(e),
    }
}

/// The residue field of the base field lying under `map`, as `(p, factor)`.
pub(crate) fn restrict(map: &MapRef, fm: &FieldMap) -> Result<ResidueRingSpec> {
    let p = map.p();
    if fm.is_identity() {
        return Ok(ResidueRingSpec {
            p,
            factor: map.factor().clone(),
        });
    }
    let y = reduce(map, &fm.gen_image)?;
    let mut cols: Vec<Vec<u64>> = Vec::new();
    let mut pw = crate::residue::FFElem::from_u64(map, 1);
    for k in 0..=map.degree() {
        let v = pw.coords();
        if k > 0 {
            if let Some(c) = linalg::solve_columns_fp(&cols, &v, p) {
                let mut coeffs: Vec<u64> = c.iter().map(|&x| modp::neg(x, p)).collect();
                coeffs.push(1);
                let factor = PolyFp::new(p, coeffs);
                crate::residue::ResidueMap::new(&fm.source, p, factor.clone())?;
                return Ok(ResidueRingSpec { p, factor });
            }
        }
        cols.push(v);
        pw = pw.mul(&y);
    }
    Err(Error::InvalidInput(
        "no minimal polynomial found for the restricted generator".into(),
    ))
}

/// Independence of `{η(τ₁), η(τ₂)}` over `F_p` in the residue field of `m`.
pub(crate) fn independent(m: &MapRef, t1: &NfElem, t2: &NfElem) -> Result<bool> {
    let a = reduce(m, t1)?;
    if a.is_zero() {
        return Ok(false);
    }
    Ok(span_member_images(&[reduce(m, t2)?], &[vec![a]])?.is_none())
}

pub(crate) fn bigint_divisible(n: &BigInt, p: u64) -> bool {
    (n % BigInt::from(p)).is_zero()
}
