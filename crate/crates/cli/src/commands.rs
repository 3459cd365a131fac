//! JSON-in, JSON-out handlers for each subcommand.

use dcsep::certificate::{self, SeparationCertificate};
use dcsep::doublecoset::{
    distinguish_conj_parabolic, elem_from_json, field_from_json, membership_probe,
    separate_double_coset, separate_subgroup, Outcome, Problem,
};
use dcsep::mobius::{case_for, classify, MatrixClass, SubgroupKind};
use dcsep::residue::{MapRef, TrackedRing};
use dcsep::separation::{
    find_order_prime, separate_from_lattice, separate_power, AdditiveBranch, AdditiveOutcome,
    OrderMode, PowerOutcome,
};
use dcsep::{Error, SearchBudget};
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok = 0,
    Unsupported = 2,
    Budget = 3,
    Input = 4,
}

pub type Reply = (Value, Status);

fn error_reply(e: Error) -> Reply {
    let status = match e {
        Error::BudgetExhausted => Status::Budget,
        Error::Indeterminate
        | Error::UnsupportedEigenvalue
        | Error::RootOfUnity
        | Error::NotApplicable
        | Error::FactorizationLimit
        | Error::SharedFixedPoint => Status::Unsupported,
        _ => Status::Input,
    };
    let outcome = match status {
        Status::Budget => "budget_exhausted",
        Status::Unsupported => "unsupported",
        _ => "error",
    };
    (
        json!({ "outcome": outcome, "error": e.to_string() }),
        status,
    )
}

fn outcome_reply(out: dcsep::Result<Outcome>) -> Reply {
    match out {
        Ok(o) => {
            let status = match &o {
                Outcome::Certificate(_) | Outcome::Membership(_) => Status::Ok,
                Outcome::Unsupported { .. } => Status::Unsupported,
                Outcome::BudgetExhausted => Status::Budget,
            };
            (o.to_json(), status)
        }
        Err(e) => error_reply(e),
    }
}

fn rings_json(maps: &[MapRef]) -> Value {
    maps.iter()
        .map(|m| json!({ "p": m.p().to_string(), "factor": m.factor().coeffs().iter().map(u64::to_string).collect::<Vec<_>>() }))
        .collect()
}

fn kind_str(k: SubgroupKind) -> &'static str {
    match k {
        SubgroupKind::Trivial => "trivial",
        SubgroupKind::Loxodromic => "loxodromic_cyclic",
        SubgroupKind::ParabolicCyclic => "parabolic_cyclic",
        SubgroupKind::ParabolicRank2 => "parabolic_rank2",
    }
}

fn class_str(c: MatrixClass) -> &'static str {
    match c {
        MatrixClass::IdentityClass => "identity",
        MatrixClass::Parabolic => "parabolic",
        MatrixClass::Nonparabolic => "nonparabolic",
    }
}

fn classify_problem(p: &Problem) -> Value {
    let (hk, kk) = (p.h.kind(), p.k.kind());
    let case = case_for(hk, kk);
    json!({
        "H": kind_str(hk),
        "K": kind_str(kk),
        "g": class_str(classify(&p.g)),
        "gamma": class_str(classify(&p.gamma)),
        "case": case.map(|(c, _)| c.tag()),
        "swapped": case.map(|(_, s)| s),
    })
}

/// Field and tracked ring shared by the element-level commands.
fn element_input(
    v: &Value,
    keys: &[&str],
) -> dcsep::Result<(Vec<dcsep::number_field::NfElem>, TrackedRing)> {
    let field = field_from_json(
        v.get("field")
            .ok_or_else(|| Error::Parse("missing field".into()))?,
    )?;
    let xs = keys
        .iter()
        .map(|k| {
            elem_from_json(
                &field,
                v.get(*k)
                    .ok_or_else(|| Error::Parse(format!("missing {k}")))?,
            )
        })
        .collect::<dcsep::Result<Vec<_>>>()?;
    let mut ring = TrackedRing::new(&field).with_generators(xs.iter().cloned());
    if let Some(ds) = v.get("tracked_denominators").and_then(Value::as_array) {
        for d in ds {
            ring.add_avoid(certificate::json_bigint(d)?);
        }
    }
    Ok((xs, ring))
}

fn order_find(v: &Value, budget: &SearchBudget) -> dcsep::Result<Value> {
    let (xs, ring) = element_input(v, &["delta"])?;
    let m = certificate::json_u64(
        v.get("order")
            .ok_or_else(|| Error::Parse("missing order".into()))?,
    )?;
    let mode = match v.get("mode").and_then(Value::as_str).unwrap_or("exact") {
        "exact" => OrderMode::Exact,
        "divisible_by" => OrderMode::DivisibleBy,
        other => return Err(Error::Parse(format!("unknown mode {other}"))),
    };
    let r = find_order_prime(&xs[0], m, &ring, mode, budget)?;
    Ok(json!({
        "outcome": "found",
        "residue_rings": rings_json(std::slice::from_ref(&r.map)),
        "achieved_order": r.achieved_order.to_string(),
    }))
}

fn power_sep(v: &Value, budget: &SearchBudget) -> dcsep::Result<Value> {
    let (xs, ring) = element_input(v, &["lambda", "omega"])?;
    Ok(match separate_power(&xs[0], &xs[1], &ring, budget)? {
        PowerOutcome::Separated(s) => {
            json!({ "outcome": "separated", "residue_rings": rings_json(&s.maps) })
        }
        PowerOutcome::NotSeparable { exponent } => {
            json!({ "outcome": "not_separable", "exponent": exponent.to_string() })
        }
    })
}

fn additive_sep(v: &Value, budget: &SearchBudget) -> dcsep::Result<Value> {
    let (xs, mut ring) = element_input(v, &["x"])?;
    let field = xs[0].field().clone();
    let basis = v
        .get("basis")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing basis".into()))?
        .iter()
        .map(|b| elem_from_json(&field, b))
        .collect::<dcsep::Result<Vec<_>>>()?;
    for b in &basis {
        ring.add_generator(b.clone());
    }
    Ok(
        match separate_from_lattice(&xs[0], &basis, &ring, budget)? {
            AdditiveOutcome::Separated(s) => json!({
                "outcome": "separated",
                "p": s.p.to_string(),
                "branch": match s.branch { AdditiveBranch::Frobenius => "frobenius", AdditiveBranch::Product => "product" },
                "residue_rings": rings_json(&s.maps),
            }),
            AdditiveOutcome::Membership(c) => json!({
                "outcome": "membership",
                "coordinates": c.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            }),
        },
    )
}

fn certificate_from(v: &Value) -> dcsep::Result<SeparationCertificate> {
    match v.get("certificate") {
        Some(c) => SeparationCertificate::from_json(c),
        None => SeparationCertificate::from_json(v),
    }
}

/// `verify` needs the certificate alongside the problem.
pub fn verify(problem: &Value, cert: &Value, budget: &SearchBudget) -> Reply {
    let cert = match certificate_from(cert) {
        Ok(c) => c,
        Err(e) => {
            return (
                json!({ "accepted": false, "failure_reason": e.to_string() }),
                Status::Input,
            );
        }
    };
    let canonical = match Problem::from_json(problem) {
        Ok(p) => p.to_json(),
        Err(e) => {
            return (
                json!({ "accepted": false, "failure_reason": e.to_string() }),
                Status::Input,
            )
        }
    };
    let report = certificate::verify(&canonical, &cert, budget.enumeration_cap);
    let status = if report.accepted {
        Status::Ok
    } else {
        Status::Input
    };
    (report.to_json(), status)
}

pub fn run(command: &str, input: &Value, budget: &SearchBudget) -> Reply {
    let element = |r: dcsep::Result<Value>| match r {
        Ok(v) => (v, Status::Ok),
        Err(e) => error_reply(e),
    };
    match command {
        "order-find" => return element(order_find(input, budget)),
        "power-sep" => return element(power_sep(input, budget)),
        "additive-sep" => return element(additive_sep(input, budget)),
        _ => {}
    }
    let problem = match Problem::from_json(input) {
        Ok(p) => p,
        Err(e) => return error_reply(e),
    };
    match command {
        "classify" => (classify_problem(&problem), Status::Ok),
        "subgroup-sep" => outcome_reply(separate_subgroup(&problem, budget)),
        "doublecoset-sep" => outcome_reply(separate_double_coset(&problem, budget)),
        "conj-distinguish" => outcome_reply(distinguish_conj_parabolic(&problem, budget)),
        "probe" => match membership_probe(&problem, budget) {
            Some(e) => (Outcome::Membership(e).to_json(), Status::Ok),
            None => (json!({ "outcome": "not_found" }), Status::Budget),
        },
        other => (
            json!({ "outcome": "error", "error": format!("unknown command {other}") }),
            Status::Input,
        ),
    }
}
