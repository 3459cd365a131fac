//! Brute-force certificate checking. Everything is recomputed from the problem JSON and
//! the certificate alone, using only the base algebra layer.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::Value;

use crate::algebra::{
    discriminant, integer, is_irreducible, parse_rational, PolyFp, PolyQ, Rational,
};
use crate::error::{Error, Result};

use super::finite::{reduce_fraction, subgroup_closure, FMat, FiniteField, FiniteRing};
use super::schema::{json_u64, problem_digest, Claim, SeparationCertificate};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub accepted: bool,
    pub group_order: String,
    pub h_image_size: usize,
    /// `None` unless the claim involves `K`.
    pub k_image_size: Option<usize>,
    pub product_size: usize,
    pub failure_reason: Option<String>,
}

impl VerificationReport {
    fn reject(reason: impl Into<String>) -> Self {
        VerificationReport {
            accepted: false,
            group_order: "0".into(),
            h_image_size: 0,
            k_image_size: None,
            product_size: 0,
            failure_reason: Some(reason.into()),
        }
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "accepted": self.accepted,
            "group_order": self.group_order,
            "h_image_size": self.h_image_size,
            "k_image_size": self.k_image_size,
            "product_size": self.product_size,
            "failure_reason": self.failure_reason,
        })
    }
}

type RawElem = Vec<Rational>;
type RawMat = [RawElem; 4];

struct RawProblem {
    min_poly: PolyQ,
    projective: bool,
    h: Vec<(RawMat, u64)>,
    k: Vec<(RawMat, u64)>,
    g: RawMat,
    gamma: RawMat,
    tracked: Vec<BigInt>,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn raw_elem(v: &Value) -> Result<RawElem> {
    match v {
        Value::String(s) => Ok(vec![parse_rational(s)?]),
        Value::Array(a) => a
            .iter()
            .map(|c| {
                c.as_str()
                    .ok_or_else(|| bad("coefficients must be strings"))
                    .and_then(parse_rational)
            })
            .collect(),
        _ => Err(bad("field element must be a string or an array")),
    }
}

fn raw_mat(v: &Value) -> Result<RawMat> {
    let rows = v
        .as_array()
        .filter(|r| r.len() == 2)
        .ok_or_else(|| bad("matrix must have two rows"))?;
    let mut out = Vec::with_capacity(4);
    for r in rows {
        let r = r
            .as_array()
            .filter(|r| r.len() == 2)
            .ok_or_else(|| bad("matrix rows must have two entries"))?;
        for e in r {
            out.push(raw_elem(e)?);
        }
    }
    Ok([
        out[0].clone(),
        out[1].clone(),
        out[2].clone(),
        out[3].clone(),
    ])
}

/// `(matrix, exponent)` pairs generating the subgroup.
fn raw_spec(v: &Value) -> Result<Vec<(RawMat, u64)>> {
    let kind = v
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| bad("subgroup without kind"))?;
    let get = |k: &str| {
        v.get(k)
            .ok_or_else(|| bad(format!("subgroup field {k:?} missing")))
    };
    match kind {
        "trivial" => Ok(Vec::new()),
        "loxodromic_cyclic" => {
            let power = v.get("power").map(json_u64).transpose()?.unwrap_or(1);
            Ok(vec![(raw_mat(get("generator")?)?, power)])
        }
        "parabolic_cyclic" => Ok(vec![(raw_mat(get("generator")?)?, 1)]),
        "parabolic_rank2" => {
            let gens = get("generators")?
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| bad("two generators"))?;
            Ok(vec![(raw_mat(&gens[0])?, 1), (raw_mat(&gens[1])?, 1)])
        }
        other => Err(bad(format!("unknown subgroup kind {other:?}"))),
    }
}

fn raw_problem(v: &Value) -> Result<RawProblem> {
    let field = v.get("field").ok_or_else(|| bad("problem without field"))?;
    let coeffs = field
        .get("min_poly")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("field without min_poly"))?
        .iter()
        .map(|c| {
            c.as_str()
                .ok_or_else(|| bad("coefficients must be strings"))
                .and_then(parse_rational)
        })
        .collect::<Result<Vec<_>>>()?;
    let identity = || -> RawMat { [vec![Rational::one()], vec![], vec![], vec![Rational::one()]] };
    let subgroups = v.get("subgroups");
    let spec = |name: &str| match subgroups.and_then(|s| s.get(name)) {
        Some(s) => raw_spec(s),
        None => Ok(Vec::new()),
    };
    Ok(RawProblem {
        min_poly: PolyQ::new(coeffs),
        projective: v
            .get("projective")
            .and_then(Value::as_bool)
            .unwrap_or(false),
        h: spec("H")?,
        k: spec("K")?,
        g: match v.get("g") {
            Some(g) => raw_mat(g)?,
            None => identity(),
        },
        gamma: raw_mat(v.get("gamma").ok_or_else(|| bad("problem without gamma"))?)?,
        tracked: match v.get("tracked_denominators").and_then(Value::as_array) {
            Some(a) => a
                .iter()
                .map(super::schema::json_bigint)
                .collect::<Result<Vec<_>>>()?,
            None => Vec::new(),
        },
    })
}

impl RawProblem {
    fn matrices(&self) -> impl Iterator<Item = &RawMat> {
        self.h
            .iter()
            .chain(&self.k)
            .map(|(m, _)| m)
            .chain([&self.g, &self.gamma])
    }
}

fn reduce_elem(x: &RawElem, f: &FiniteField) -> Option<PolyFp> {
    let coeffs = x
        .iter()
        .map(|c| reduce_fraction(c.numer(), c.denom(), f.p))
        .collect::<Option<Vec<_>>>()?;
    Some(f.reduce(&PolyFp::new(f.p, coeffs)))
}

fn reduce_mat(m: &RawMat, ring: &FiniteRing) -> Option<FMat> {
    let mut comps = Vec::new();
    for f in &ring.fields {
        let e = [
            reduce_elem(&m[0], f)?,
            reduce_elem(&m[1], f)?,
            reduce_elem(&m[2], f)?,
            reduce_elem(&m[3], f)?,
        ];
        comps.push(e);
    }
    Some(FMat(comps))
}

fn check_prime(
    raw: &RawProblem,
    p: u64,
    factor: &PolyFp,
    disc: &Rational,
) -> std::result::Result<(), String> {
    if !integer::is_prime_u64(p) {
        return Err(format!("{p} is not prime"));
    }
    let den_lcm = raw.min_poly.denominator_lcm();
    if crate::algebra::rational::bigint_mod(&den_lcm, p) == 0 {
        return Err(format!(
            "bad prime {p}: divides a denominator of the minimal polynomial"
        ));
    }
    if crate::algebra::rational::bigint_mod(disc.numer(), p) == 0 {
        return Err(format!("bad prime {p}: ramified"));
    }
    if raw
        .tracked
        .iter()
        .any(|d| d.is_zero() || crate::algebra::rational::bigint_mod(d, p) == 0)
    {
        return Err(format!("bad prime {p}: divides tracked denominators"));
    }
    for m in raw.matrices() {
        for e in m {
            if e.iter()
                .any(|c| crate::algebra::rational::bigint_mod(c.denom(), p) == 0)
            {
                return Err(format!("bad prime {p}: divides a matrix entry denominator"));
            }
        }
    }
    let fbar: Vec<u64> = raw
        .min_poly
        .coeffs()
        .iter()
        .map(|c| reduce_fraction(c.numer(), c.denom(), p).unwrap())
        .collect();
    let fbar = PolyFp::new(p, fbar);
    if !factor.is_monic() || factor.degree().unwrap_or(0) == 0 {
        return Err(format!("factor {factor} is not monic of positive degree"));
    }
    if !is_irreducible(factor) {
        return Err(format!("factor {factor} is reducible mod {p}"));
    }
    if !factor.divides(&fbar) {
        return Err(format!(
            "factor {factor} does not divide the minimal polynomial mod {p}"
        ));
    }
    Ok(())
}

/// Checks `cert` against `problem` (canonical problem JSON) by enumerating finite images.
pub fn verify(problem: &Value, cert: &SeparationCertificate, cap: usize) -> VerificationReport {
    match verify_inner(problem, cert, cap) {
        Ok(r) => r,
        Err(e) => VerificationReport::reject(e.to_string()),
    }
}

fn verify_inner(
    problem: &Value,
    cert: &SeparationCertificate,
    cap: usize,
) -> Result<VerificationReport> {
    if cert.problem_digest != problem_digest(problem) {
        return Ok(VerificationReport::reject("digest mismatch"));
    }
    let raw = raw_problem(problem)?;
    if cert.residue_rings.is_empty() {
        return Ok(VerificationReport::reject("no residue rings"));
    }
    let mut primes: Vec<u64> = cert.residue_rings.iter().map(|r| r.p).collect();
    primes.sort_unstable();
    primes.dedup();
    if primes != cert.primes {
        return Ok(VerificationReport::reject(
            "prime list does not match residue rings",
        ));
    }
    let distinct: HashSet<_> = cert.residue_rings.iter().collect();
    if distinct.len() != cert.residue_rings.len() {
        return Ok(VerificationReport::reject("repeated residue ring"));
    }
    let disc = discriminant(&raw.min_poly)?;
    for r in &cert.residue_rings {
        if let Err(reason) = check_prime(&raw, r.p, &r.factor, &disc) {
            return Ok(VerificationReport::reject(reason));
        }
    }
    let ring = FiniteRing::new(
        cert.residue_rings
            .iter()
            .map(|r| FiniteField::new(r.p, r.factor.clone()))
            .collect(),
        raw.projective,
    );
    let image = |m: &RawMat| {
        reduce_mat(m, &ring).ok_or_else(|| Error::InvalidInput("unreducible entry".into()))
    };
    let gens = |list: &[(RawMat, u64)]| -> Result<Vec<FMat>> {
        list.iter()
            .map(|(m, e)| Ok(ring.pow(&image(m)?, *e)))
            .collect()
    };
    let gamma = image(&raw.gamma)?;
    let g = image(&raw.g)?;
    for m in raw.matrices() {
        if !ring.det_is_one(&image(m)?) {
            return Ok(VerificationReport::reject(
                "a matrix does not reduce into SL(2)",
            ));
        }
    }
    let h_img = match subgroup_closure(&ring, &gens(&raw.h)?, cap) {
        Ok(s) => s,
        Err(e) => return Ok(VerificationReport::reject(e.to_string())),
    };
    let mut report = VerificationReport {
        accepted: false,
        group_order: ring.group_order().to_string(),
        h_image_size: h_img.len(),
        k_image_size: None,
        product_size: 0,
        failure_reason: None,
    };
    let found = match cert.claim {
        Claim::NotInSubgroup => {
            report.product_size = h_img.len();
            let key = ring.key(&gamma);
            h_img.iter().any(|x| ring.key(x) == key)
        }
        Claim::NotConjugateInto => {
            report.product_size = h_img.len();
            let witness = (0..ring.fields.len()).any(|i| {
                !ring.trace_squared_is_four(&gamma, i)
                    && h_img.iter().all(|x| ring.trace_squared_is_four(x, i))
            });
            !witness
        }
        Claim::NotInDoubleCoset => {
            let k_img = match subgroup_closure(&ring, &gens(&raw.k)?, cap) {
                Ok(s) => s,
                Err(e) => return Ok(VerificationReport::reject(e.to_string())),
            };
            report.k_image_size = Some(k_img.len());
            let k_keys: HashSet<Vec<u64>> = k_img.iter().map(|x| ring.key(x)).collect();
            let g_inv = ring.inv(&g);
            let mut hit = false;
            let mut overlap = 0usize;
            for h in &h_img {
                let t = ring.mul(&g_inv, &ring.mul(&ring.inv(h), &gamma));
                hit |= k_keys.contains(&ring.key(&t));
                let conj = ring.mul(&g_inv, &ring.mul(h, &g));
                if k_keys.contains(&ring.key(&conj)) {
                    overlap += 1;
                }
            }
            report.product_size = h_img.len() * k_img.len() / overlap.max(1);
            hit
        }
    };
    if found {
        report.failure_reason = Some(match cert.claim {
            Claim::NotConjugateInto => "trace scan does not separate".into(),
            _ => "the image of gamma lies in the enumerated set".into(),
        });
    } else {
        report.accepted = true;
    }
    Ok(report)
}

/// The whole-group oracle: whether the claimed exclusion fails, found by running over every
/// element of `SL(2, F_q)` (single residue field, small `q`). `true` means `γ̄` is in the set.
pub fn whole_group_oracle(problem: &Value, cert: &SeparationCertificate) -> Result<bool> {
    let raw = raw_problem(problem)?;
    let [r] = cert.residue_rings.as_slice() else {
        return Err(Error::InvalidInput(
            "oracle needs exactly one residue ring".into(),
        ));
    };
    let ring = FiniteRing::new(
        vec![FiniteField::new(r.p, r.factor.clone())],
        raw.projective,
    );
    let image = |m: &RawMat| {
        reduce_mat(m, &ring).ok_or_else(|| Error::InvalidInput("unreducible entry".into()))
    };
    let gens = |list: &[(RawMat, u64)]| -> Result<Vec<FMat>> {
        list.iter()
            .map(|(m, e)| Ok(ring.pow(&image(m)?, *e)))
            .collect()
    };
    let all = ring.all_elements();
    let key_set = |gens: &[FMat]| -> HashSet<Vec<u64>> {
        subgroup_closure(&ring, gens, all.len() + 1)
            .unwrap()
            .iter()
            .map(|m| ring.key(m))
            .collect()
    };
    let gamma = image(&raw.gamma)?;
    let g = image(&raw.g)?;
    let h_set = key_set(&gens(&raw.h)?);
    let k_set = key_set(&gens(&raw.k)?);
    let gk = ring.key(&gamma);
    Ok(match cert.claim {
        Claim::NotInSubgroup => all
            .iter()
            .any(|x| ring.key(x) == gk && h_set.contains(&ring.key(x))),
        Claim::NotConjugateInto => all
            .iter()
            .any(|c| h_set.contains(&ring.key(&ring.mul(c, &ring.mul(&gamma, &ring.inv(c)))))),
        Claim::NotInDoubleCoset => {
            let hs: Vec<&FMat> = all
                .iter()
                .filter(|x| h_set.contains(&ring.key(x)))
                .collect();
            let ks: Vec<&FMat> = all
                .iter()
                .filter(|x| k_set.contains(&ring.key(x)))
                .collect();
            hs.iter().any(|h| {
                ks.iter()
                    .any(|k| ring.key(&ring.mul(h, &ring.mul(&g, k))) == gk)
            })
        }
    })
}
