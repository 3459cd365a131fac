//! Separating a single element from an abelian subgroup, and from the conjugates of a
//! parabolic subgroup.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::rational;
use crate::budget::SearchBudget;
use crate::certificate::Claim;
use crate::error::{Error, Result};
use crate::mobius::{
    classify, diagonalize, fixed_point, infinity_conjugator, Mat2, MatrixClass, SubgroupSpec,
};
use crate::number_field::{recover_exponent, FieldExt, FieldMap, NfElem};
use crate::residue::{reduce, TrackedRing};
use crate::separation::{
    find_order_prime, rational_coordinates, separate_from_lattice, separate_power, AdditiveOutcome,
    OrderMode, PowerOutcome,
};

use super::context::{bigint_divisible, independent, Ctx, Evidence, Found};
use super::problem::{Outcome, Problem, UnsupportedReason};

/// Result of placing a translation `x` against the lattice `ℤτ₁ + ℤτ₂`.
pub(crate) enum Lattice {
    /// Integer coordinates `(a, b)`, with `b = 0` when only `⟨τ₁⟩` is allowed.
    Member(BigInt, BigInt),
    /// Maps under which `η(x)` leaves the image lattice.
    Excluded(Vec<crate::residue::MapRef>, &'static str),
    NonIntegral,
}

/// Decides `x ∈ ℤτ₁ (+ ℤτ₂ unless cyclic)`, producing separating maps when it is not.
pub(crate) fn lattice_decide(
    ctx: &Ctx,
    ring: &TrackedRing,
    x: &NfElem,
    tau: &[NfElem; 2],
    cyclic: bool,
) -> Result<Lattice> {
    match rational_coordinates(x, tau) {
        None => match separate_from_lattice(x, tau, ring, ctx.budget)? {
            AdditiveOutcome::Separated(s) => Ok(Lattice::Excluded(
                s.maps,
                "translation outside the lattice span",
            )),
            AdditiveOutcome::Membership(_) => Err(Error::InvalidInput(
                "inconsistent lattice coordinates".into(),
            )),
        },
        Some(c) if c.iter().all(rational::is_integer) => {
            let (a, b) = (c[0].to_integer(), c[1].to_integer());
            if !cyclic || b.is_zero() {
                return Ok(Lattice::Member(a, b));
            }
            let ring = ring
                .clone()
                .with_units([tau[0].clone()])
                .with_avoid([b.clone()]);
            let map = ctx.first_map(&ring, |m| {
                Ok(!bigint_divisible(&b, m.p()) && independent(m, &tau[0], &tau[1])?)
            })?;
            Ok(Lattice::Excluded(
                vec![map],
                "independent translation images, p does not divide the ambient exponent",
            ))
        }
        Some(_) => Ok(Lattice::NonIntegral),
    }
}

/// `η(entry) ≠ 0` while the subgroup image has that entry zero.
pub(crate) fn maximal_abelian(
    ctx: &Ctx,
    map: &FieldMap,
    frame: &[&Mat2],
    entry: &NfElem,
) -> Result<Found> {
    let ring = ctx.ring(map, frame);
    let m = ctx.nonzero_somewhere(&ring, &[vec![entry.clone()]])?;
    Ok(Found::Separated(Evidence::new(
        map,
        vec![m],
        "off-diagonal entry survives; subgroup image is triangular",
    )))
}

/// `γ = ±I`, or a prime where `γ ∓ I` both survive.
pub(crate) fn trivial(ctx: &Ctx, gamma: &Mat2) -> Result<Found> {
    let projective = ctx.problem.projective;
    if gamma.is_identity() || (projective && gamma.neg().is_identity()) {
        return Ok(Found::Member(Vec::new()));
    }
    let id = FieldMap::identity(&ctx.problem.field);
    let ring = ctx.ring(&id, &[gamma]);
    let one = Mat2::identity(gamma.field());
    let diff = |s: &Mat2| -> Vec<NfElem> {
        gamma
            .entries()
            .iter()
            .zip(s.entries())
            .map(|(a, b)| *a - b)
            .collect()
    };
    let mut groups = vec![diff(&one)];
    if projective {
        groups.push(diff(&one.neg()));
    }
    let m = ctx.nonzero_somewhere(&ring, &groups)?;
    Ok(Found::Separated(Evidence::new(
        &id,
        vec![m],
        "image of gamma is not the identity",
    )))
}

/// `γ` against `⟨h^m⟩` for loxodromic `h`.
pub(crate) fn cyclic_loxodromic(ctx: &Ctx, h: &Mat2, m: u64, gamma: &Mat2) -> Result<Found> {
    let projective = ctx.problem.projective;
    let d = diagonalize(h, &ctx.problem.embedding(), ctx.cap())?;
    let p_inv = d.conj.inv();
    let w = gamma.map_field(&d.map).conj(&p_inv);
    let frame = [&d.conj, &w];
    for e in [&w.c, &w.b] {
        if !e.is_zero() {
            return maximal_abelian(ctx, &d.map, &frame, e);
        }
    }
    let ring = ctx.ring(&d.map, &frame);
    let mu = &w.a;
    match recover_exponent(mu, &d.lambda, &d.embedding, projective, ctx.cap())? {
        Some(em) => {
            let a = em.exponent;
            if a % m as i64 == 0 {
                return Ok(Found::Member(vec![BigInt::from(a / m as i64)]));
            }
            let lambda2 = &d.lambda * &d.lambda;
            let r = find_order_prime(&lambda2, m, &ring, OrderMode::DivisibleBy, ctx.budget)?;
            let mut ev = Evidence::new(
                &d.map,
                vec![r.map],
                format!("order of lambda^2 divisible by {m}; exponent {a}"),
            );
            ev.m0 = Some(BigInt::from(a));
            Ok(Found::Separated(ev))
        }
        None => {
            let (x, base) = if projective {
                (mu * mu, &d.lambda * &d.lambda)
            } else {
                (mu.clone(), d.lambda.clone())
            };
            match separate_power(&x, &base, &ring, ctx.budget)? {
                PowerOutcome::Separated(s) => Ok(Found::Separated(Evidence::new(
                    &d.map,
                    s.maps,
                    "eigenvalue outside the cyclic group",
                ))),
                PowerOutcome::NotSeparable { exponent } => Ok(Found::Unsupported(
                    UnsupportedReason::Indeterminate,
                    format!("eigenvalue is a power ({exponent}) but exponent recovery failed"),
                )),
            }
        }
    }
}

/// `γ` against a parabolic subgroup (cyclic or rank 2).
pub(crate) fn parabolic(ctx: &Ctx, spec: &SubgroupSpec, gamma: &Mat2) -> Result<Found> {
    let [k1, k2] = spec
        .parabolic_pair()
        .ok_or_else(|| Error::InvalidInput("expected a parabolic subgroup".into()))?;
    let cyclic = matches!(spec, SubgroupSpec::ParabolicCyclic { .. });
    let field = &ctx.problem.field;
    let id = FieldMap::identity(field);
    let c = infinity_conjugator(field, fixed_point(k1).as_ref());
    let mut w = gamma.conj(&c);
    let tau = [k1.conj(&c).b, k2.conj(&c).b];
    let frame = [&c, &w.clone()];
    if !w.c.is_zero() {
        return maximal_abelian(ctx, &id, &frame, &w.c.clone());
    }
    if ctx.problem.projective && (&w.a + &field.one()).is_zero() {
        w = w.neg();
    }
    let ring = ctx.ring(&id, &frame);
    if !w.a.is_one() {
        let mut groups = vec![vec![&w.a - &field.one()]];
        if ctx.problem.projective {
            groups.push(vec![&w.a + &field.one()]);
        }
        let m = ctx.nonzero_somewhere(&ring, &groups)?;
        return Ok(Found::Separated(Evidence::new(
            &id,
            vec![m],
            "diagonal entry differs from 1",
        )));
    }
    match lattice_decide(ctx, &ring, &w.b, &tau, cyclic)? {
        Lattice::Member(a, b) => Ok(Found::Member(if cyclic { vec![a] } else { vec![a, b] })),
        Lattice::Excluded(maps, note) => Ok(Found::Separated(Evidence::new(&id, maps, note))),
        Lattice::NonIntegral => Ok(Found::Unsupported(
            UnsupportedReason::OutsideAmbient,
            "translation has non-integral lattice coordinates".into(),
        )),
    }
}

pub(crate) fn subgroup_found(ctx: &Ctx, spec: &SubgroupSpec, gamma: &Mat2) -> Result<Found> {
    match spec {
        SubgroupSpec::Trivial => trivial(ctx, gamma),
        SubgroupSpec::LoxodromicCyclic { generator, power } => {
            cyclic_loxodromic(ctx, generator, *power, gamma)
        }
        _ => parabolic(ctx, spec, gamma),
    }
}

/// Separates `γ` from the subgroup `H` of `problem`.
pub fn separate_subgroup(problem: &Problem, budget: &SearchBudget) -> Result<Outcome> {
    let ctx = Ctx::new(problem, budget);
    ctx.outcome(
        Claim::NotInSubgroup,
        subgroup_found(&ctx, &problem.h, &problem.gamma),
    )
}

/// Separates `γ` from a maximal abelian subgroup given in normal form (diagonal, or upper
/// unipotent): a prime where the lower-left entry survives.
pub fn sep_from_maximal_abelian(problem: &Problem, budget: &SearchBudget) -> Result<Outcome> {
    let ctx = Ctx::new(problem, budget);
    let gamma = &problem.gamma;
    let found = if gamma.c.is_zero() {
        subgroup_found(&ctx, &problem.h, gamma)
    } else {
        maximal_abelian(
            &ctx,
            &FieldMap::identity(&problem.field),
            &[gamma],
            &gamma.c,
        )
    };
    ctx.outcome(Claim::NotInSubgroup, found)
}

/// Separates `γ` from `⟨h^m⟩`.
pub fn sep_from_cyclic_loxodromic(
    problem: &Problem,
    h: &Mat2,
    m: u64,
    budget: &SearchBudget,
) -> Result<Outcome> {
    let ctx = Ctx::new(problem, budget);
    ctx.outcome(
        Claim::NotInSubgroup,
        cyclic_loxodromic(&ctx, h, m, &problem.gamma),
    )
}

/// Separates `γ` from the cyclic parabolic subgroup `H` of `problem`.
pub fn sep_from_cyclic_parabolic(problem: &Problem, budget: &SearchBudget) -> Result<Outcome> {
    let ctx = Ctx::new(problem, budget);
    ctx.outcome(
        Claim::NotInSubgroup,
        parabolic(&ctx, &problem.h, &problem.gamma),
    )
}

/// Shows that `γ` is not conjugate into the parabolic subgroup `H`: a prime where
/// `tr(γ)² − 4` survives.
pub fn distinguish_conj_parabolic(problem: &Problem, budget: &SearchBudget) -> Result<Outcome> {
    let ctx = Ctx::new(problem, budget);
    if !problem.h.is_parabolic() {
        return Err(Error::InvalidInput(
            "conjugacy distinguishing needs a parabolic subgroup".into(),
        ));
    }
    let gamma = &problem.gamma;
    if classify(gamma) != MatrixClass::Nonparabolic {
        return Ok(Outcome::unsupported(
            UnsupportedReason::ParabolicTarget,
            "gamma is parabolic or ±I",
        ));
    }
    let found = (|| {
        let id = FieldMap::identity(&problem.field);
        let t = gamma.trace();
        let t = &(&t * &t) - &problem.field.from_int(4);
        let ring = ctx.ring(&id, &[]);
        let m = ctx.first_map(&ring, |m| Ok(!reduce(m, &t)?.is_zero()))?;
        Ok(Found::Separated(Evidence::new(
            &id,
            vec![m],
            "tr^2 - 4 survives",
        )))
    })();
    ctx.outcome(Claim::NotConjugateInto, found)
}
