//! Top-level double-coset decision and the membership probe.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::budget::SearchBudget;
use crate::certificate::Claim;
use crate::error::{Error, Result};
use crate::mobius::{
    case_for, diagonalize, fixed_point, infinity_conjugator, normalize_case, CaseId, Mat2,
    SubgroupKind, SubgroupSpec,
};
use crate::number_field::recover_exponent;
use crate::separation::rational_coordinates;

use super::cases::{case1, case4, case5};
use super::context::{Ctx, Found};
use super::problem::{Outcome, Problem, UnsupportedReason};
use super::subgroup_ops::{maximal_abelian, subgroup_found, trivial};

fn exponent_count(s: &SubgroupSpec) -> usize {
    match s.kind() {
        SubgroupKind::Trivial => 0,
        SubgroupKind::Loxodromic | SubgroupKind::ParabolicCyclic => 1,
        SubgroupKind::ParabolicRank2 => 2,
    }
}

fn pad(found: Found, before: usize, after: usize) -> Found {
    match found {
        Found::Member(e) => {
            let mut v = vec![BigInt::from(0); before];
            v.extend(e);
            v.extend(std::iter::repeat_n(BigInt::from(0), after));
            Found::Member(v)
        }
        other => other,
    }
}

fn shared(detail: &str) -> Found {
    Found::Unsupported(UnsupportedReason::SharedFixedPoint, detail.into())
}

/// Commuting loxodromic subgroups: `HK` is one of the two when one generator is a power of
/// the other.
fn commuting_loxodromic(
    ctx: &Ctx,
    h: &SubgroupSpec,
    k: &SubgroupSpec,
    gamma: &Mat2,
) -> Result<Found> {
    let (hg, kg) = (&h.generators()[0], &k.generators()[0]);
    if !hg.commutes_with(kg) {
        return Ok(shared("loxodromic subgroups share exactly one fixed point"));
    }
    let d = diagonalize(hg, &ctx.problem.embedding(), ctx.cap())?;
    let omega = kg.map_field(&d.map).conj(&d.conj.inv()).a;
    let projective = ctx.problem.projective;
    if recover_exponent(&omega, &d.lambda, &d.embedding, projective, ctx.cap())?.is_some() {
        return Ok(pad(subgroup_found(ctx, h, gamma)?, 0, 1));
    }
    if recover_exponent(&d.lambda, &omega, &d.embedding, projective, ctx.cap())?.is_some() {
        return Ok(pad(subgroup_found(ctx, k, gamma)?, 1, 0));
    }
    let p_inv = d.conj.inv();
    let w = gamma.map_field(&d.map).conj(&p_inv);
    for e in [&w.c, &w.b] {
        if !e.is_zero() {
            return maximal_abelian(ctx, &d.map, &[&d.conj, &w], e);
        }
    }
    Ok(shared(
        "commuting loxodromic subgroups generating a rank-2 group",
    ))
}

/// Parabolic subgroups with a common fixed point: `HK` is one of the two when the other's
/// lattice lies inside it.
fn commuting_parabolic(
    ctx: &Ctx,
    h: &SubgroupSpec,
    k: &SubgroupSpec,
    gamma: &Mat2,
) -> Result<Found> {
    let [h1, _] = h.parabolic_pair().unwrap();
    let c = infinity_conjugator(&ctx.problem.field, fixed_point(h1).as_ref());
    let lattice = |s: &SubgroupSpec| -> Vec<crate::number_field::NfElem> {
        s.generators()
            .iter()
            .map(|m| m.conj(&c).b.clone())
            .collect()
    };
    let (lh, lk) = (lattice(h), lattice(k));
    let inside = |xs: &[crate::number_field::NfElem], basis: &[crate::number_field::NfElem]| {
        xs.iter().all(|x| {
            rational_coordinates(x, basis)
                .is_some_and(|c| c.iter().all(crate::algebra::rational::is_integer))
        })
    };
    if inside(&lk, &lh) {
        return Ok(pad(subgroup_found(ctx, h, gamma)?, 0, exponent_count(k)));
    }
    if inside(&lh, &lk) {
        return Ok(pad(subgroup_found(ctx, k, gamma)?, exponent_count(h), 0));
    }
    let w = gamma.conj(&c);
    if !w.c.is_zero() {
        let id = crate::number_field::FieldMap::identity(&ctx.problem.field);
        return maximal_abelian(ctx, &id, &[&c, &w], &w.c);
    }
    Ok(shared(
        "parabolic subgroups with a common fixed point and incomparable lattices",
    ))
}

fn double_coset_found(ctx: &Ctx) -> Result<Found> {
    let pr = ctx.problem;
    let g_inv = pr.g.inv();
    let h = pr.h.conj(&g_inv);
    let k = pr.k.clone();
    let gamma = g_inv.mul(&pr.gamma);
    let emb = pr.embedding();
    let cap = ctx.cap();
    match (h.kind(), k.kind()) {
        (SubgroupKind::Trivial, SubgroupKind::Trivial) => return trivial(ctx, &gamma),
        (SubgroupKind::Trivial, _) => return subgroup_found(ctx, &k, &gamma),
        (_, SubgroupKind::Trivial) => return subgroup_found(ctx, &h, &gamma),
        _ => {}
    }
    let (case, swap) = case_for(h.kind(), k.kind()).expect("nontrivial kinds");
    match case {
        CaseId::Case1 => match normalize_case(&h, &k, &gamma, case, &emb, cap) {
            Ok(n) => case1(ctx, &n),
            Err(Error::SharedFixedPoint) => commuting_loxodromic(ctx, &h, &k, &gamma),
            Err(e) => Err(e),
        },
        CaseId::Case4 => {
            let (lox, par, target) = if swap {
                (&k, &h, gamma.inv())
            } else {
                (&h, &k, gamma.clone())
            };
            if par.kind() == SubgroupKind::ParabolicRank2 {
                return Ok(Found::Unsupported(
                    UnsupportedReason::Case2Required,
                    "loxodromic against a maximal parabolic subgroup".into(),
                ));
            }
            let n = match normalize_case(lox, par, &target, case, &emb, cap) {
                Ok(n) => n,
                Err(Error::SharedFixedPoint) => {
                    return Ok(shared("loxodromic fixes the parabolic fixed point"))
                }
                Err(e) => return Err(e),
            };
            let found = case4(ctx, &n)?;
            Ok(match (found, swap) {
                (Found::Member(e), true) => Found::Member(vec![-&e[1], -&e[0]]),
                (f, _) => f,
            })
        }
        CaseId::Case5 => match normalize_case(&h, &k, &gamma, case, &emb, cap) {
            Ok(n) => case5(ctx, &n),
            Err(Error::SharedFixedPoint) => commuting_parabolic(ctx, &h, &k, &gamma),
            Err(e) => Err(e),
        },
    }
}

/// Decides `γ ∈ H·g·K`, or produces a certificate of separation.
pub fn separate_double_coset(problem: &Problem, budget: &SearchBudget) -> Result<Outcome> {
    let ctx = Ctx::new(problem, budget);
    ctx.outcome(Claim::NotInDoubleCoset, double_coset_found(&ctx))
}

/// `h^{e_H}·g·k^{e_K}` for an exponent vector in the order of [`Outcome::Membership`].
pub fn reassemble(problem: &Problem, exps: &[BigInt]) -> Option<Mat2> {
    let hg = problem.h.generators();
    let kg = problem.k.generators();
    if exps.len() != hg.len() + kg.len() {
        return None;
    }
    let mut acc = Mat2::identity(&problem.field);
    for (m, e) in hg.iter().zip(exps) {
        acc = acc.mul(&m.pow(e.to_i64()?));
    }
    acc = acc.mul(&problem.g);
    for (m, e) in kg.iter().zip(&exps[hg.len()..]) {
        acc = acc.mul(&m.pow(e.to_i64()?));
    }
    Some(acc)
}

fn reassembles(problem: &Problem, exps: &[BigInt]) -> bool {
    reassemble(problem, exps).is_some_and(|m| m.eq_mod_sign(&problem.gamma, problem.projective))
}

/// Exponents with `γ = h^{e_H}·g·k^{e_K}` found exactly, or by bounded search when the case
/// analysis is inconclusive and at most two exponents are involved.
pub fn membership_probe(problem: &Problem, budget: &SearchBudget) -> Option<Vec<BigInt>> {
    match separate_double_coset(problem, budget) {
        Ok(Outcome::Membership(e)) if reassembles(problem, &e) => return Some(e),
        Ok(Outcome::Certificate(_)) => return None,
        _ => {}
    }
    let hg = problem.h.generators();
    let kg = problem.k.generators();
    if hg.len() + kg.len() > 2 {
        return None;
    }
    let bound = budget.max_exponent as i64;
    let powers = |gens: &[Mat2]| -> Vec<(Vec<BigInt>, Mat2)> {
        match gens {
            [] => vec![(Vec::new(), Mat2::identity(&problem.field))],
            [m] => (-bound..=bound)
                .map(|e| (vec![BigInt::from(e)], m.pow(e)))
                .collect(),
            [a, b] => (-bound..=bound)
                .flat_map(|i| (-bound..=bound).map(move |j| (i, j)))
                .map(|(i, j)| {
                    (
                        vec![BigInt::from(i), BigInt::from(j)],
                        a.pow(i).mul(&b.pow(j)),
                    )
                })
                .collect(),
            _ => Vec::new(),
        }
    };
    let hp = powers(&hg);
    let kp: Vec<(Vec<BigInt>, Mat2)> = powers(&kg)
        .into_iter()
        .map(|(e, m)| (e, problem.g.mul(&m)))
        .collect();
    for (he, hm) in &hp {
        for (ke, km) in &kp {
            if hm.mul(km).eq_mod_sign(&problem.gamma, problem.projective) {
                let mut e = he.clone();
                e.extend(ke.iter().cloned());
                return Some(e);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{ratio, PolyQ};
    use crate::certificate::verify;
    use crate::number_field::{FieldExt, FieldRef, NumberField};

    fn primes(problem: &Problem, out: &Outcome) -> Vec<u64> {
        let cert = out
            .certificate()
            .unwrap_or_else(|| panic!("expected a certificate, got {out:?}"));
        let report = verify(&problem.to_json(), cert, 1_000_000);
        assert!(report.accepted, "{report:?}");
        cert.primes.clone()
    }

    fn reason(out: &Outcome) -> UnsupportedReason {
        match out {
            Outcome::Unsupported { reason, .. } => *reason,
            other => panic!("expected unsupported, got {other:?}"),
        }
    }

    fn lox(f: &FieldRef, l: i64) -> SubgroupSpec {
        SubgroupSpec::LoxodromicCyclic {
            generator: Mat2::diag(&f.from_int(l)).unwrap(),
            power: 1,
        }
    }

    fn problem(f: &FieldRef, h: SubgroupSpec, k: SubgroupSpec, g: Mat2, gamma: Mat2) -> Problem {
        Problem::new(f, false, 0, h, k, g, gamma, Vec::new()).unwrap()
    }

    fn gaussian() -> FieldRef {
        NumberField::new("i", PolyQ::from_i64(&[1, 0, 1])).unwrap()
    }

    fn cusp(k: &FieldRef) -> SubgroupSpec {
        SubgroupSpec::ParabolicCyclic {
            generator: Mat2::from_ints(k, [[1, 1], [0, 1]]).unwrap(),
            ambient: Mat2::upper(&k.gen()),
        }
    }

    fn rank2(k: &FieldRef) -> SubgroupSpec {
        let i = k.gen();
        let one = k.one();
        let k2 = Mat2::new(&one - &i, i.clone(), -&i, &one + &i).unwrap();
        SubgroupSpec::ParabolicRank2 {
            generators: [Mat2::from_ints(k, [[0, 1], [-1, 2]]).unwrap(), k2],
        }
    }

    #[test]
    fn both_loxodromic() {
        let q = NumberField::rationals();
        let b = SearchBudget::default();
        let g = Mat2::from_ints(&q, [[1, 1], [1, 2]]).unwrap();
        let pr = problem(
            &q,
            lox(&q, 2),
            lox(&q, 3),
            g.clone(),
            Mat2::from_ints(&q, [[2, 1], [1, 1]]).unwrap(),
        );
        assert_eq!(
            primes(&pr, &separate_double_coset(&pr, &b).unwrap()),
            vec![5]
        );
        let gamma = Mat2::new(
            q.from_int(2),
            q.from_int(2),
            q.from_rational(ratio(9, 2)),
            q.from_int(5),
        )
        .unwrap();
        let pr = pr.with_gamma(gamma);
        let out = separate_double_coset(&pr, &b).unwrap();
        assert_eq!(primes(&pr, &out), vec![5]);
        let aux = &out.certificate().unwrap().auxiliary;
        assert_eq!(
            (aux.m0.clone(), aux.n0.clone()),
            (Some(1.into()), Some(1.into()))
        );
        let member = Mat2::diag(&q.from_int(2))
            .unwrap()
            .mul(&g)
            .mul(&Mat2::diag(&q.from_int(3)).unwrap());
        let pr = pr.with_gamma(member);
        assert_eq!(
            separate_double_coset(&pr, &b).unwrap(),
            Outcome::Membership(vec![1.into(), 1.into()])
        );
        assert_eq!(membership_probe(&pr, &b), Some(vec![1.into(), 1.into()]));
    }

    #[test]
    fn commuting_loxodromic_reduces_to_subgroup() {
        let q = NumberField::rationals();
        let b = SearchBudget::default();
        let id = Mat2::identity(&q);
        let pr = problem(
            &q,
            lox(&q, 2),
            lox(&q, 4),
            id.clone(),
            Mat2::diag(&q.from_int(8)).unwrap(),
        );
        assert_eq!(
            separate_double_coset(&pr, &b).unwrap(),
            Outcome::Membership(vec![3.into(), 0.into()])
        );
        let pr = pr.with_gamma(Mat2::from_ints(&q, [[2, 1], [1, 1]]).unwrap());
        assert!(!primes(&pr, &separate_double_coset(&pr, &b).unwrap()).is_empty());
        let pr = problem(
            &q,
            lox(&q, 2),
            lox(&q, 3),
            id.clone(),
            Mat2::from_ints(&q, [[2, 1], [1, 1]]).unwrap(),
        );
        assert_eq!(
            primes(&pr, &separate_double_coset(&pr, &b).unwrap()),
            vec![5]
        );
        let pr = pr.with_gamma(Mat2::diag(&q.from_int(5)).unwrap());
        assert_eq!(
            reason(&separate_double_coset(&pr, &b).unwrap()),
            UnsupportedReason::SharedFixedPoint
        );
    }

    #[test]
    fn loxodromic_against_cusp() {
        let k = gaussian();
        let b = SearchBudget::default();
        let id = Mat2::identity(&k);
        let h = Mat2::diag(&k.from_int(2)).unwrap();
        let k1 = Mat2::from_ints(&k, [[1, 1], [0, 1]]).unwrap();
        let pr = problem(&k, lox(&k, 2), cusp(&k), id.clone(), Mat2::upper(&k.gen()));
        assert_eq!(
            primes(&pr, &separate_double_coset(&pr, &b).unwrap()),
            vec![3]
        );
        let pr = pr.with_gamma(h.pow(2).mul(&k1.pow(3)));
        assert_eq!(
            separate_double_coset(&pr, &b).unwrap(),
            Outcome::Membership(vec![2.into(), 3.into()])
        );
        let pr = pr.with_gamma(Mat2::from_ints(&k, [[1, 0], [1, 1]]).unwrap());
        assert_eq!(
            reason(&separate_double_coset(&pr, &b).unwrap()),
            UnsupportedReason::Case2Required
        );

        let pr = problem(
            &k,
            cusp(&k),
            lox(&k, 2),
            id.clone(),
            k1.pow(3).mul(&h.pow(-2)),
        );
        assert_eq!(
            separate_double_coset(&pr, &b).unwrap(),
            Outcome::Membership(vec![3.into(), (-2).into()])
        );
        let pr = pr.with_gamma(Mat2::upper(&k.gen()));
        assert_eq!(
            primes(&pr, &separate_double_coset(&pr, &b).unwrap()),
            vec![3]
        );

        let pr = problem(&k, lox(&k, 2), rank2(&k), id.clone(), id);
        assert_eq!(
            reason(&separate_double_coset(&pr, &b).unwrap()),
            UnsupportedReason::Case2Required
        );
    }

    #[test]
    fn both_parabolic() {
        let k = gaussian();
        let b = SearchBudget::default();
        let id = Mat2::identity(&k);
        let pr = problem(&k, cusp(&k), rank2(&k), id.clone(), Mat2::upper(&k.gen()));
        assert_eq!(
            primes(&pr, &separate_double_coset(&pr, &b).unwrap()),
            vec![3]
        );
        let pr = pr.with_gamma(Mat2::from_ints(&k, [[1, 1], [2, 3]]).unwrap());
        assert_eq!(
            primes(&pr, &separate_double_coset(&pr, &b).unwrap()),
            vec![3]
        );
        let [k1, k2] = rank2(&k)
            .parabolic_pair()
            .map(|[a, b]| [a.clone(), b.clone()])
            .unwrap();
        let h1 = Mat2::from_ints(&k, [[1, 1], [0, 1]]).unwrap();
        let member = h1.pow(2).mul(&k1.pow(-1)).mul(&k2.pow(3));
        let pr = pr.with_gamma(member);
        let exps = vec![2.into(), (-1).into(), 3.into()];
        assert_eq!(
            separate_double_coset(&pr, &b).unwrap(),
            Outcome::Membership(exps.clone())
        );
        assert!(reassemble(&pr, &exps).unwrap() == pr.gamma);

        let pr = problem(
            &k,
            rank2(&k).conj(&Mat2::from_ints(&k, [[0, -1], [1, 0]]).unwrap()),
            rank2(&k),
            id.clone(),
            Mat2::upper(&k.gen()),
        );
        let out = separate_double_coset(&pr, &b).unwrap();
        assert!(
            matches!(out, Outcome::Membership(_))
                || reason(&out) == UnsupportedReason::Case3Required
        );
        let half = Mat2::upper(&k.from_rational(ratio(1, 2)));
        let pr = pr.with_gamma(half);
        assert_eq!(
            reason(&separate_double_coset(&pr, &b).unwrap()),
            UnsupportedReason::Case3Required
        );
    }

    #[test]
    fn trivial_factors() {
        let q = NumberField::rationals();
        let b = SearchBudget::default();
        let id = Mat2::identity(&q);
        let gamma = Mat2::from_ints(&q, [[2, 1], [1, 1]]).unwrap();
        let pr = problem(
            &q,
            SubgroupSpec::Trivial,
            SubgroupSpec::Trivial,
            id.clone(),
            gamma.clone(),
        );
        assert!(!primes(&pr, &separate_double_coset(&pr, &b).unwrap()).is_empty());
        let pr = problem(&q, SubgroupSpec::Trivial, lox(&q, 2), id.clone(), gamma);
        assert_eq!(
            primes(&pr, &separate_double_coset(&pr, &b).unwrap()),
            vec![3]
        );
        let pr = problem(
            &q,
            lox(&q, 2),
            SubgroupSpec::Trivial,
            id,
            Mat2::diag(&q.from_int(4)).unwrap(),
        );
        assert_eq!(
            separate_double_coset(&pr, &b).unwrap(),
            Outcome::Membership(vec![2.into()])
        );
    }
}
