//! The case engines, each working in the frame produced by `normalize_case`.

use num_bigint::BigInt;

use crate::error::Result;
use crate::mobius::{apply_point, CaseData, Mat2, NormalizedProblem, SubgroupSpec};
use crate::number_field::{recover_exponent, FieldExt, NfElem};
use crate::residue::{mult_order, reduce};
use crate::separation::{separate_power, PowerOutcome};

use super::context::{Ctx, Evidence, Found};
use super::problem::UnsupportedReason;
use super::subgroup_ops::{lattice_decide, Lattice};

fn tagged(mut ev: Evidence, n: &NormalizedProblem, m0: Option<i64>, n0: Option<i64>) -> Found {
    ev.case = Some(n.case.tag());
    ev.m0 = m0.map(BigInt::from);
    ev.n0 = n0.map(BigInt::from);
    Found::Separated(ev)
}

/// `rs/ab = λ^{2m}` (resp. `rt/ac = ω^{2n}`) exponent, or separating maps.
fn ratio_exponent(
    ctx: &Ctx,
    n: &NormalizedProblem,
    ring: &crate::residue::TrackedRing,
    x: &NfElem,
    base: &NfElem,
) -> Result<std::result::Result<i64, Vec<crate::residue::MapRef>>> {
    let base2 = base * base;
    if let Some(e) = recover_exponent(x, &base2, &n.embedding, false, ctx.cap())? {
        return Ok(Ok(e.exponent));
    }
    match separate_power(x, &base2, ring, ctx.budget)? {
        PowerOutcome::Separated(s) => Ok(Err(s.maps)),
        PowerOutcome::NotSeparable { exponent } => Ok(Ok(exponent)),
    }
}

/// Both subgroups loxodromic: `W = γ̃·G` against `{diag(λ^m)·G·diag(ω^n)}`.
pub(crate) fn case1(ctx: &Ctx, n: &NormalizedProblem) -> Result<Found> {
    let CaseData::Case1 { lambda, omega, g } = &n.data else {
        unreachable!("case 1 data")
    };
    let projective = ctx.problem.projective;
    let w = n.gamma.mul(g);
    let ring = ctx.ring(&n.map, &[&n.conjugator, g, &w]).with_units(
        g.entries()
            .into_iter()
            .cloned()
            .chain([lambda.clone(), omega.clone()]),
    );
    if w.entries().iter().any(|e| e.is_zero()) {
        let m = ctx.first_map(&ring, |_| Ok(true))?;
        return Ok(tagged(
            Evidence::new(&n.map, vec![m], "an entry of the target vanishes"),
            n,
            None,
            None,
        ));
    }
    let m0 = match ratio_exponent(
        ctx,
        n,
        &ring,
        &(&(&w.a * &w.b) * &(&g.a * &g.b).inv()?),
        lambda,
    )? {
        Ok(m) => m,
        Err(maps) => {
            return Ok(tagged(
                Evidence::new(&n.map, maps, "rs/ab is not a power of lambda^2"),
                n,
                None,
                None,
            ));
        }
    };
    let n0 = match ratio_exponent(
        ctx,
        n,
        &ring,
        &(&(&w.a * &w.c) * &(&g.a * &g.c).inv()?),
        omega,
    )? {
        Ok(e) => e,
        Err(maps) => {
            let ev = Evidence::new(&n.map, maps, "rt/ac is not a power of omega^2");
            return Ok(tagged(ev, n, Some(m0), None));
        }
    };
    let t0 = Mat2::diag(&lambda.pow(m0)?)?
        .mul(g)
        .mul(&Mat2::diag(&omega.pow(n0)?)?);
    if w == t0 || (projective && w == t0.neg()) {
        return Ok(Found::Member(vec![m0.into(), n0.into()]));
    }
    let ring = ring.with_generators(t0.entries().into_iter().cloned());
    if w == t0.neg() {
        let m = ctx.first_map(&ring, |m| {
            Ok(m.p() != 2
                && mult_order(&reduce(m, lambda)?)?.bit(0)
                && mult_order(&reduce(m, omega)?)?.bit(0))
        })?;
        let ev = Evidence::new(
            &n.map,
            vec![m],
            "target is minus the recovered product; odd eigenvalue orders",
        );
        return Ok(tagged(ev, n, Some(m0), Some(n0)));
    }
    let diff = |s: &Mat2| -> Vec<NfElem> {
        w.entries()
            .iter()
            .zip(s.entries())
            .map(|(a, b)| *a - b)
            .collect()
    };
    let m = ctx.nonzero_somewhere(&ring, &[diff(&t0), diff(&t0.neg())])?;
    let ev = Evidence::new(
        &n.map,
        vec![m],
        "both sign variants of the recovered product differ from the target",
    );
    Ok(tagged(ev, n, Some(m0), Some(n0)))
}

/// `H` loxodromic, `K` cyclic parabolic: `γ̃ = ±h̃^a·(1 x; 0 1)` decided exactly.
pub(crate) fn case4(ctx: &Ctx, n: &NormalizedProblem) -> Result<Found> {
    let CaseData::Case4 {
        lambda,
        diagonalizer,
        tau,
    } = &n.data
    else {
        unreachable!("case 4 data")
    };
    let unsupported = |d: &str| {
        Ok(Found::Unsupported(
            UnsupportedReason::Case2Required,
            d.to_string(),
        ))
    };
    let gamma = &n.gamma;
    let hgen = &n.h.generators()[0];
    let p_inv = diagonalizer.inv();
    let a = if hgen.c.is_zero() {
        if !gamma.c.is_zero() {
            return unsupported("gamma does not fix the common fixed point");
        }
        match recover_exponent(
            &gamma.a,
            &hgen.a,
            &n.embedding,
            ctx.problem.projective,
            ctx.cap(),
        )? {
            Some(e) => e.exponent,
            None => return unsupported("diagonal of gamma is not a power of the eigenvalue"),
        }
    } else if gamma.c.is_zero() {
        0
    } else {
        let z0 = apply_point(&p_inv, None);
        let y = apply_point(&p_inv, apply_point(gamma, None).as_ref());
        let (Some(z0), Some(y)) = (z0, y) else {
            return unsupported("gamma(inf) is a fixed point of h");
        };
        if y.is_zero() || z0.is_zero() {
            return unsupported("gamma(inf) is a fixed point of h");
        }
        let lambda2 = lambda * lambda;
        match recover_exponent(&(&y * &z0.inv()?), &lambda2, &n.embedding, false, ctx.cap())? {
            Some(e) => e.exponent,
            None => return unsupported("gamma(inf) is not in the H-orbit of inf"),
        }
    };
    let r = hgen.pow(-a).mul(gamma);
    let one = gamma.field().one();
    let x = if !r.c.is_zero() {
        return unsupported("no decomposition through the ambient parabolic group");
    } else if r.a == one && r.d == one {
        r.b.clone()
    } else if ctx.problem.projective && r.a == -&one && r.d == -&one {
        -&r.b
    } else {
        return unsupported("no decomposition through the ambient parabolic group");
    };
    let ring = ctx
        .ring(&n.map, &[&n.conjugator, diagonalizer, gamma])
        .with_units([lambda.clone()]);
    match lattice_decide(ctx, &ring, &x, tau, true)? {
        Lattice::Member(m0, _) => Ok(Found::Member(vec![a.into(), m0])),
        Lattice::Excluded(maps, note) => {
            Ok(tagged(Evidence::new(&n.map, maps, note), n, Some(a), None))
        }
        Lattice::NonIntegral => {
            unsupported("translation has non-integral coordinates in the ambient lattice")
        }
    }
}

/// Both parabolic: `H̃` upper, `K̃` lower unipotent, so `H̃K̃ = {(1 + xw, x; w, 1)}`.
pub(crate) fn case5(ctx: &Ctx, n: &NormalizedProblem) -> Result<Found> {
    let CaseData::Case5 { h_tau, k_w } = &n.data else {
        unreachable!("case 5 data")
    };
    let h_cyclic = matches!(n.h, SubgroupSpec::ParabolicCyclic { .. });
    let k_cyclic = matches!(n.k, SubgroupSpec::ParabolicCyclic { .. });
    let one = n.gamma.field().one();
    let mut w = n.gamma.clone();
    if ctx.problem.projective && w.d == -&one {
        w = w.neg();
    }
    let ring = ctx.ring(&n.map, &[&n.conjugator, &w]);
    if !h_cyclic && !k_cyclic {
        let coords = |x: &NfElem, b: &[NfElem; 2]| {
            crate::separation::rational_coordinates(x, b)
                .filter(|c| c.iter().all(crate::algebra::rational::is_integer))
                .map(|c| c.into_iter().map(|q| q.to_integer()).collect::<Vec<_>>())
        };
        if w.d == one {
            if let (Some(mut e), Some(f)) = (coords(&w.b, h_tau), coords(&w.c, k_w)) {
                e.extend(f);
                return Ok(Found::Member(e));
            }
        }
        return Ok(Found::Unsupported(
            UnsupportedReason::Case3Required,
            "both subgroups are maximal parabolic and gamma is outside their product".into(),
        ));
    }
    if w.d != one {
        let mut groups = vec![vec![&w.d - &one]];
        if ctx.problem.projective {
            groups.push(vec![&w.d + &one]);
        }
        let m = ctx.nonzero_somewhere(&ring, &groups)?;
        let ev = Evidence::new(&n.map, vec![m], "lower-right entry differs from 1");
        return Ok(tagged(ev, n, None, None));
    }
    let mut exps = Vec::new();
    for (x, basis, cyclic) in [(&w.b, h_tau, h_cyclic), (&w.c, k_w, k_cyclic)] {
        match lattice_decide(ctx, &ring, x, basis, cyclic)? {
            Lattice::Member(a, b) => {
                exps.push(a);
                if !cyclic {
                    exps.push(b);
                }
            }
            Lattice::Excluded(maps, note) => {
                return Ok(tagged(Evidence::new(&n.map, maps, note), n, None, None))
            }
            Lattice::NonIntegral => {
                return Ok(Found::Unsupported(
                    UnsupportedReason::Case3Required,
                    "translation has non-integral coordinates in the ambient lattice".into(),
                ))
            }
        }
    }
    Ok(Found::Member(exps))
}
