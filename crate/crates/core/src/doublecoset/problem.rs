//! Problems, outcomes and their JSON encoding.

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::algebra::{format_rational, parse_rational, PolyQ};
use crate::certificate::{json_bigint, json_u64, problem_digest, SeparationCertificate};
use crate::error::{Error, Result};
use crate::mobius::{Mat2, SubgroupSpec};
use crate::number_field::{
    EmbeddingHandle, FieldExt, FieldRef, NfElem, NumberField, BASE_PRECISION,
};

/// Is `γ` in `H·g·K`?
#[derive(Debug, Clone)]
pub struct Problem {
    pub field: FieldRef,
    pub projective: bool,
    pub root_index: usize,
    pub h: SubgroupSpec,
    pub k: SubgroupSpec,
    pub g: Mat2,
    pub gamma: Mat2,
    pub tracked_denominators: Vec<BigInt>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnsupportedReason {
    /// Loxodromic against a rank-2 parabolic group, or `γ` outside the product with the
    /// ambient parabolic group.
    Case2Required,
    /// Parabolic against parabolic outside the product of the ambient groups.
    Case3Required,
    SharedFixedPoint,
    UnsupportedEigenvalue,
    /// Conjugacy distinguishing with a parabolic `γ`.
    ParabolicTarget,
    /// A translation with rational but non-integral coordinates in the ambient lattice.
    OutsideAmbient,
    /// Numerical or factorization limits prevented a decision.
    Indeterminate,
}

impl UnsupportedReason {
    pub fn as_str(self) -> &'static str {
        match self {
            UnsupportedReason::Case2Required => "case2_required",
            UnsupportedReason::Case3Required => "case3_required",
            UnsupportedReason::SharedFixedPoint => "shared_fixed_point",
            UnsupportedReason::UnsupportedEigenvalue => "unsupported_eigenvalue",
            UnsupportedReason::ParabolicTarget => "parabolic_target",
            UnsupportedReason::OutsideAmbient => "outside_ambient",
            UnsupportedReason::Indeterminate => "indeterminate",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Certificate(SeparationCertificate),
    /// Exponents of the subgroup generators, `H` first, then `K`.
    Membership(Vec<BigInt>),
    Unsupported {
        reason: UnsupportedReason,
        detail: String,
    },
    BudgetExhausted,
}

impl Outcome {
    pub fn unsupported(reason: UnsupportedReason, detail: impl Into<String>) -> Self {
        Outcome::Unsupported {
            reason,
            detail: detail.into(),
        }
    }

    pub fn certificate(&self) -> Option<&SeparationCertificate> {
        match self {
            Outcome::Certificate(c) => Some(c),
            _ => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Outcome::Certificate(c) => {
                json!({ "outcome": "certificate", "certificate": c.to_json() })
            }
            Outcome::Membership(e) => json!({
                "outcome": "membership",
                "exponents": e.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            }),
            Outcome::Unsupported { reason, detail } => {
                json!({ "outcome": "unsupported", "reason": reason.as_str(), "detail": detail })
            }
            Outcome::BudgetExhausted => json!({ "outcome": "budget_exhausted" }),
        }
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn field_to_json(field: &FieldRef) -> Value {
    json!({
        "variable": field.variable(),
        "min_poly": field.min_poly().coeffs().iter().map(format_rational).collect::<Vec<_>>(),
    })
}

/// `{"variable": "t", "min_poly": [constant, ..., leading]}`.
pub fn field_from_json(f: &Value) -> Result<FieldRef> {
    let var = f.get("variable").and_then(Value::as_str).unwrap_or("t");
    let coeffs = f
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
    NumberField::new(var, PolyQ::new(coeffs))
}

pub fn elem_to_json(x: &NfElem) -> Value {
    Value::Array(
        x.coeffs()
            .iter()
            .map(|c| Value::String(format_rational(c)))
            .collect(),
    )
}

pub fn elem_from_json(field: &FieldRef, v: &Value) -> Result<NfElem> {
    let coeffs = match v {
        Value::String(s) => vec![parse_rational(s)?],
        Value::Array(a) => a
            .iter()
            .map(|c| {
                c.as_str()
                    .ok_or_else(|| bad("coefficients must be strings"))
                    .and_then(parse_rational)
            })
            .collect::<Result<Vec<_>>>()?,
        _ => return Err(bad("field element must be a string or an array")),
    };
    if coeffs.len() > field.degree() {
        return Err(bad(
            "field element has more coefficients than the field degree",
        ));
    }
    Ok(field.element(coeffs))
}

pub fn mat_to_json(m: &Mat2) -> Value {
    json!([
        [elem_to_json(&m.a), elem_to_json(&m.b)],
        [elem_to_json(&m.c), elem_to_json(&m.d)]
    ])
}

pub fn mat_from_json(field: &FieldRef, v: &Value) -> Result<Mat2> {
    let rows = v
        .as_array()
        .filter(|r| r.len() == 2)
        .ok_or_else(|| bad("matrix must have two rows"))?;
    let mut e = Vec::with_capacity(4);
    for r in rows {
        let r = r
            .as_array()
            .filter(|r| r.len() == 2)
            .ok_or_else(|| bad("matrix rows must have two entries"))?;
        for x in r {
            e.push(elem_from_json(field, x)?);
        }
    }
    let mut it = e.into_iter();
    let (a, b, c, d) = (
        it.next().unwrap(),
        it.next().unwrap(),
        it.next().unwrap(),
        it.next().unwrap(),
    );
    Mat2::new(a, b, c, d)
}

pub fn spec_to_json(s: &SubgroupSpec) -> Value {
    match s {
        SubgroupSpec::Trivial => json!({ "kind": "trivial" }),
        SubgroupSpec::LoxodromicCyclic { generator, power } => json!({
            "kind": "loxodromic_cyclic",
            "generator": mat_to_json(generator),
            "power": power.to_string(),
        }),
        SubgroupSpec::ParabolicCyclic { generator, ambient } => json!({
            "kind": "parabolic_cyclic",
            "generator": mat_to_json(generator),
            "ambient": mat_to_json(ambient),
        }),
        SubgroupSpec::ParabolicRank2 { generators } => json!({
            "kind": "parabolic_rank2",
            "generators": [mat_to_json(&generators[0]), mat_to_json(&generators[1])],
        }),
    }
}

pub fn spec_from_json(field: &FieldRef, v: &Value) -> Result<SubgroupSpec> {
    let kind = v
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| bad("subgroup without kind"))?;
    let get = |k: &str| {
        v.get(k)
            .ok_or_else(|| bad(format!("subgroup field {k:?} missing")))
    };
    Ok(match kind {
        "trivial" => SubgroupSpec::Trivial,
        "loxodromic_cyclic" => SubgroupSpec::LoxodromicCyclic {
            generator: mat_from_json(field, get("generator")?)?,
            power: v.get("power").map(json_u64).transpose()?.unwrap_or(1),
        },
        "parabolic_cyclic" => SubgroupSpec::ParabolicCyclic {
            generator: mat_from_json(field, get("generator")?)?,
            ambient: mat_from_json(field, get("ambient")?)?,
        },
        "parabolic_rank2" => {
            let gens = get("generators")?
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| bad("two generators"))?;
            SubgroupSpec::ParabolicRank2 {
                generators: [
                    mat_from_json(field, &gens[0])?,
                    mat_from_json(field, &gens[1])?,
                ],
            }
        }
        other => return Err(bad(format!("unknown subgroup kind {other:?}"))),
    })
}

impl Problem {
    /// Validates the subgroup specs and field consistency.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        field: &FieldRef,
        projective: bool,
        root_index: usize,
        h: SubgroupSpec,
        k: SubgroupSpec,
        g: Mat2,
        gamma: Mat2,
        tracked_denominators: Vec<BigInt>,
    ) -> Result<Self> {
        if field.discriminant() == crate::algebra::rat(0) {
            return Err(Error::InvalidInput(
                "minimal polynomial is not squarefree".into(),
            ));
        }
        EmbeddingHandle::new(field, root_index, BASE_PRECISION)?;
        let mats = h
            .matrices()
            .into_iter()
            .chain(k.matrices())
            .chain([&g, &gamma]);
        for m in mats {
            if m.field() != field {
                return Err(Error::FieldMismatch);
            }
        }
        if tracked_denominators.iter().any(|d| *d == BigInt::from(0)) {
            return Err(Error::InvalidInput(
                "tracked denominators must be nonzero".into(),
            ));
        }
        Ok(Problem {
            field: field.clone(),
            projective,
            root_index,
            h: h.validate(projective)?,
            k: k.validate(projective)?,
            g,
            gamma,
            tracked_denominators,
        })
    }

    /// A problem with only `H` (for subgroup and conjugacy questions).
    pub fn subgroup(
        field: &FieldRef,
        projective: bool,
        h: SubgroupSpec,
        gamma: Mat2,
    ) -> Result<Self> {
        Self::new(
            field,
            projective,
            0,
            h,
            SubgroupSpec::Trivial,
            Mat2::identity(field),
            gamma,
            Vec::new(),
        )
    }

    pub fn embedding(&self) -> EmbeddingHandle {
        EmbeddingHandle::new(&self.field, self.root_index, BASE_PRECISION)
            .expect("validated root index")
    }

    pub fn with_gamma(&self, gamma: Mat2) -> Problem {
        Problem {
            gamma,
            ..self.clone()
        }
    }

    /// All matrices the problem mentions.
    pub fn matrices(&self) -> Vec<&Mat2> {
        let mut v = self.h.matrices();
        v.extend(self.k.matrices());
        v.push(&self.g);
        v.push(&self.gamma);
        v
    }

    /// Canonical JSON (the digest is taken over its compact serialization).
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("field".into(), field_to_json(&self.field));
        m.insert("projective".into(), json!(self.projective));
        m.insert("embedding".into(), json!({ "root_index": self.root_index }));
        m.insert(
            "subgroups".into(),
            json!({ "H": spec_to_json(&self.h), "K": spec_to_json(&self.k) }),
        );
        m.insert("g".into(), mat_to_json(&self.g));
        m.insert("gamma".into(), mat_to_json(&self.gamma));
        m.insert(
            "tracked_denominators".into(),
            json!(self
                .tracked_denominators
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()),
        );
        Value::Object(m)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let field = field_from_json(v.get("field").ok_or_else(|| bad("problem without field"))?)?;
        let projective = v
            .get("projective")
            .and_then(Value::as_bool)
            .unwrap_or(false);
        let root_index = match v.get("embedding").and_then(|e| e.get("root_index")) {
            Some(r) => json_u64(r)? as usize,
            None => 0,
        };
        let subgroups = v.get("subgroups");
        let spec = |name: &str| match subgroups.and_then(|s| s.get(name)) {
            Some(s) => spec_from_json(&field, s),
            None => Ok(SubgroupSpec::Trivial),
        };
        let g = match v.get("g") {
            Some(g) => mat_from_json(&field, g)?,
            None => Mat2::identity(&field),
        };
        let gamma = mat_from_json(
            &field,
            v.get("gamma").ok_or_else(|| bad("problem without gamma"))?,
        )?;
        let tracked = match v.get("tracked_denominators").and_then(Value::as_array) {
            Some(a) => a.iter().map(json_bigint).collect::<Result<Vec<_>>>()?,
            None => Vec::new(),
        };
        Problem::new(
            &field,
            projective,
            root_index,
            spec("H")?,
            spec("K")?,
            g,
            gamma,
            tracked,
        )
    }

    pub fn digest(&self) -> String {
        problem_digest(&self.to_json())
    }
}
