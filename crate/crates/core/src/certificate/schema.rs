//! Certificate data and its canonical JSON form.

use num_bigint::BigInt;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::algebra::PolyFp;
use crate::error::{Error, Result};

pub const CERTIFICATE_VERSION: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Claim {
    /// `φ(γ) ∉ φ(H)·φ(g)·φ(K)`.
    NotInDoubleCoset,
    /// `φ(γ) ∉ φ(H)`.
    NotInSubgroup,
    /// `φ(γ)` is not conjugate into `φ(H)`.
    NotConjugateInto,
}

impl Claim {
    pub fn as_str(self) -> &'static str {
        match self {
            Claim::NotInDoubleCoset => "not_in_double_coset",
            Claim::NotInSubgroup => "not_in_subgroup",
            Claim::NotConjugateInto => "not_conjugate_into",
        }
    }

    pub fn parse(s: &str) -> Result<Claim> {
        match s {
            "not_in_double_coset" => Ok(Claim::NotInDoubleCoset),
            "not_in_subgroup" => Ok(Claim::NotInSubgroup),
            "not_conjugate_into" => Ok(Claim::NotConjugateInto),
            _ => Err(Error::Parse(format!("unknown claim {s:?}"))),
        }
    }
}

/// A residue field `F_p[T]/(factor)` of the problem's field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ResidueRingSpec {
    pub p: u64,
    pub factor: PolyFp,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Auxiliary {
    pub case: Option<String>,
    pub m0: Option<BigInt>,
    pub n0: Option<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationCertificate {
    pub version: u64,
    pub claim: Claim,
    pub problem_digest: String,
    pub primes: Vec<u64>,
    pub residue_rings: Vec<ResidueRingSpec>,
    pub auxiliary: Auxiliary,
    pub notes: String,
}

impl SeparationCertificate {
    pub fn new(
        claim: Claim,
        problem_digest: String,
        mut residue_rings: Vec<ResidueRingSpec>,
    ) -> Self {
        residue_rings.dedup();
        let mut primes: Vec<u64> = residue_rings.iter().map(|r| r.p).collect();
        primes.sort_unstable();
        primes.dedup();
        SeparationCertificate {
            version: CERTIFICATE_VERSION,
            claim,
            problem_digest,
            primes,
            residue_rings,
            auxiliary: Auxiliary::default(),
            notes: String::new(),
        }
    }

    pub fn to_json(&self) -> Value {
        let rings: Vec<Value> = self
            .residue_rings
            .iter()
            .map(|r| json!({ "p": r.p.to_string(), "factor": poly_fp_json(&r.factor) }))
            .collect();
        let mut aux = Map::new();
        if let Some(c) = &self.auxiliary.case {
            aux.insert("case".into(), json!(c));
        }
        if let Some(m) = &self.auxiliary.m0 {
            aux.insert("m0".into(), json!(m.to_string()));
        }
        if let Some(n) = &self.auxiliary.n0 {
            aux.insert("n0".into(), json!(n.to_string()));
        }
        json!({
            "version": self.version,
            "claim": self.claim.as_str(),
            "problem_digest": self.problem_digest,
            "primes": self.primes.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "residue_rings": rings,
            "auxiliary": Value::Object(aux),
            "notes": self.notes,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| parse_err("certificate must be an object"))?;
        let version = obj
            .get("version")
            .map(json_u64)
            .transpose()?
            .ok_or_else(|| parse_err("missing version"))?;
        if version != CERTIFICATE_VERSION {
            return Err(Error::UnknownVersion(version));
        }
        let claim = Claim::parse(field_str(obj, "claim")?)?;
        let problem_digest = field_str(obj, "problem_digest")?.to_string();
        let primes = array(obj, "primes")?
            .iter()
            .map(json_u64)
            .collect::<Result<Vec<_>>>()?;
        let residue_rings = array(obj, "residue_rings")?
            .iter()
            .map(|r| {
                let r = r
                    .as_object()
                    .ok_or_else(|| parse_err("residue ring must be an object"))?;
                let p = json_u64(
                    r.get("p")
                        .ok_or_else(|| parse_err("residue ring without p"))?,
                )?;
                if p < 2 {
                    return Err(parse_err("residue ring prime must be at least 2"));
                }
                let coeffs = array(r, "factor")?
                    .iter()
                    .map(json_u64)
                    .collect::<Result<Vec<_>>>()?;
                if coeffs.iter().any(|&c| c >= p) {
                    return Err(parse_err("factor coefficient out of range"));
                }
                Ok(ResidueRingSpec {
                    p,
                    factor: PolyFp::new(p, coeffs),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut auxiliary = Auxiliary::default();
        if let Some(a) = obj.get("auxiliary") {
            let a = a
                .as_object()
                .ok_or_else(|| parse_err("auxiliary must be an object"))?;
            auxiliary.case = a.get("case").and_then(Value::as_str).map(str::to_string);
            auxiliary.m0 = a.get("m0").map(json_bigint).transpose()?;
            auxiliary.n0 = a.get("n0").map(json_bigint).transpose()?;
        }
        let notes = obj
            .get("notes")
            .and_then(Value::as_str)
            .unwrap_or_default()
            .to_string();
        Ok(SeparationCertificate {
            version,
            claim,
            problem_digest,
            primes,
            residue_rings,
            auxiliary,
            notes,
        })
    }
}

/// Canonical JSON text: sorted keys, no insignificant whitespace.
pub fn canonical_json(v: &Value) -> String {
    serde_json::to_string(v).expect("JSON values always serialize")
}

pub fn serialize(cert: &SeparationCertificate) -> Vec<u8> {
    canonical_json(&cert.to_json()).into_bytes()
}

pub fn parse(bytes: &[u8]) -> Result<SeparationCertificate> {
    let v: Value = serde_json::from_slice(bytes).map_err(|e| Error::Parse(e.to_string()))?;
    SeparationCertificate::from_json(&v)
}

/// SHA-256 of the canonical problem JSON, hex encoded.
pub fn problem_digest(problem: &Value) -> String {
    hex::encode(Sha256::digest(canonical_json(problem).as_bytes()))
}

fn poly_fp_json(f: &PolyFp) -> Vec<String> {
    f.coeffs().iter().map(|c| c.to_string()).collect()
}

fn parse_err(msg: &str) -> Error {
    Error::Parse(msg.to_string())
}

fn field_str<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a str> {
    obj.get(key)
        .and_then(Value::as_str)
        .ok_or_else(|| parse_err(&format!("missing string field {key:?}")))
}

fn array<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Vec<Value>> {
    obj.get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err(&format!("missing array field {key:?}")))
}

/// Integers are accepted as JSON numbers or decimal strings.
pub fn json_u64(v: &Value) -> Result<u64> {
    match v {
        Value::Number(n) => n
            .as_u64()
            .ok_or_else(|| parse_err("expected a non-negative integer")),
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| parse_err(&format!("malformed integer {s:?}"))),
        _ => Err(parse_err("expected an integer")),
    }
}

pub fn json_bigint(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| parse_err("expected an integer")),
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| parse_err(&format!("malformed integer {s:?}"))),
        _ => Err(parse_err("expected an integer")),
    }
}
