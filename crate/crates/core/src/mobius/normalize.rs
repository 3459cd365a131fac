//! Conjugating a double-coset problem into the frame each case works in.

use crate::error::{Error, Result};
use crate::number_field::{EmbeddingHandle, FieldMap, NfElem};

use super::classify::diagonalize;
use super::matrix::Mat2;
use super::parabolic::{fixed_point, frame_conjugator, infinity_conjugator};
use super::subgroup::{SubgroupKind, SubgroupSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseId {
    /// Both subgroups loxodromic.
    Case1,
    /// `H` loxodromic, `K` cyclic parabolic.
    Case4,
    /// Both parabolic.
    Case5,
}

impl CaseId {
    pub fn tag(self) -> &'static str {
        match self {
            CaseId::Case1 => "case1",
            CaseId::Case4 => "case4",
            CaseId::Case5 => "case5",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CaseData {
    /// `h̃ = diag(λ, λ⁻¹)` for the subgroup generator, `k̃ = G·diag(ω, ω⁻¹)·G⁻¹`.
    Case1 {
        lambda: NfElem,
        omega: NfElem,
        g: Mat2,
    },
    /// `k̃ᵢ = (1 τᵢ; 0 1)` and `h̃ = P·diag(λ, λ⁻¹)·P⁻¹` for the subgroup generator.
    Case4 {
        lambda: NfElem,
        diagonalizer: Mat2,
        tau: [NfElem; 2],
    },
    /// `h̃ᵢ = (1 τᵢ; 0 1)` and `k̃ᵢ = (1 0; wᵢ 1)`.
    Case5 {
        h_tau: [NfElem; 2],
        k_w: [NfElem; 2],
    },
}

/// Problem data moved into a frame where the case analysis is explicit:
/// every transformed matrix equals `C·map(original)·C⁻¹`.
#[derive(Debug, Clone)]
pub struct NormalizedProblem {
    pub case: CaseId,
    pub map: FieldMap,
    pub embedding: EmbeddingHandle,
    pub conjugator: Mat2,
    pub h: SubgroupSpec,
    pub k: SubgroupSpec,
    pub gamma: Mat2,
    pub data: CaseData,
}

impl NormalizedProblem {
    /// Recomputes every transformed matrix from the originals.
    pub fn check_round_trip(&self, h: &SubgroupSpec, k: &SubgroupSpec, gamma: &Mat2) -> bool {
        let c = &self.conjugator;
        let f = |m: &Mat2| m.map_field(&self.map).conj(c);
        h.map_each(f) == self.h && k.map_each(f) == self.k && f(gamma) == self.gamma
    }
}

fn loxodromic(spec: &SubgroupSpec) -> Result<(&Mat2, u64)> {
    match spec {
        SubgroupSpec::LoxodromicCyclic { generator, power } => Ok((generator, *power)),
        _ => Err(Error::InvalidInput("expected a loxodromic subgroup".into())),
    }
}

fn parabolic(spec: &SubgroupSpec) -> Result<[&Mat2; 2]> {
    spec.parabolic_pair()
        .ok_or_else(|| Error::InvalidInput("expected a parabolic subgroup".into()))
}

/// Conjugates `(H, K, γ)` into the normal form of `which`.
pub fn normalize_case(
    h: &SubgroupSpec,
    k: &SubgroupSpec,
    gamma: &Mat2,
    which: CaseId,
    embedding: &EmbeddingHandle,
    cap: u32,
) -> Result<NormalizedProblem> {
    let field = gamma.field().clone();
    match which {
        CaseId::Case1 => {
            let (hg, hp) = loxodromic(h)?;
            let (kg, kp) = loxodromic(k)?;
            let dh = diagonalize(hg, embedding, cap)?;
            let dk = diagonalize(&kg.map_field(&dh.map), &dh.embedding, cap)?;
            let map = dh.map.then(&dk.map);
            let p = dh.conj.map_field(&dk.map);
            let c = p.inv();
            let g = c.mul(&dk.conj);
            if g.entries().iter().any(|e| e.is_zero()) {
                return Err(Error::SharedFixedPoint);
            }
            let lambda = dk.map.apply(&dh.lambda).pow(hp as i64)?;
            let omega = dk.lambda.pow(kp as i64)?;
            finish(
                which,
                map,
                dk.embedding,
                c,
                h,
                k,
                gamma,
                CaseData::Case1 { lambda, omega, g },
            )
        }
        CaseId::Case4 => {
            let (hg, hp) = loxodromic(h)?;
            let [k1, k2] = parabolic(k)?;
            let c1 = infinity_conjugator(&field, fixed_point(k1).as_ref());
            let d = diagonalize(&hg.conj(&c1), embedding, cap)?;
            let c = c1.map_field(&d.map);
            let tau = [
                k1.map_field(&d.map).conj(&c).b,
                k2.map_field(&d.map).conj(&c).b,
            ];
            let lambda = d.lambda.pow(hp as i64)?;
            let data = CaseData::Case4 {
                lambda,
                diagonalizer: d.conj,
                tau,
            };
            finish(which, d.map, d.embedding, c, h, k, gamma, data)
        }
        CaseId::Case5 => {
            let [h1, h2] = parabolic(h)?;
            let [k1, k2] = parabolic(k)?;
            let (xh, xk) = (fixed_point(h1), fixed_point(k1));
            if xh == xk {
                return Err(Error::SharedFixedPoint);
            }
            let c = frame_conjugator(&field, xh.as_ref(), xk.as_ref());
            let data = CaseData::Case5 {
                h_tau: [h1.conj(&c).b, h2.conj(&c).b],
                k_w: [k1.conj(&c).c, k2.conj(&c).c],
            };
            finish(
                which,
                FieldMap::identity(&field),
                embedding.clone(),
                c,
                h,
                k,
                gamma,
                data,
            )
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn finish(
    case: CaseId,
    map: FieldMap,
    embedding: EmbeddingHandle,
    conjugator: Mat2,
    h: &SubgroupSpec,
    k: &SubgroupSpec,
    gamma: &Mat2,
    data: CaseData,
) -> Result<NormalizedProblem> {
    let f = |m: &Mat2| m.map_field(&map).conj(&conjugator);
    let np = NormalizedProblem {
        case,
        h: h.map_each(f),
        k: k.map_each(f),
        gamma: f(gamma),
        map,
        embedding,
        conjugator,
        data,
    };
    Ok(np)
}

/// Which case a pair of subgroup kinds falls into, with `swap` meaning the roles of
/// `H` and `K` must be exchanged (via `γ ↦ γ⁻¹`).
pub fn case_for(h: SubgroupKind, k: SubgroupKind) -> Option<(CaseId, bool)> {
    use SubgroupKind::*;
    match (h, k) {
        (Loxodromic, Loxodromic) => Some((CaseId::Case1, false)),
        (Loxodromic, ParabolicCyclic | ParabolicRank2) => Some((CaseId::Case4, false)),
        (ParabolicCyclic | ParabolicRank2, Loxodromic) => Some((CaseId::Case4, true)),
        (ParabolicCyclic | ParabolicRank2, ParabolicCyclic | ParabolicRank2) => {
            Some((CaseId::Case5, false))
        }
        _ => None,
    }
}
