//! Abelian subgroup specifications and their validation.

use crate::error::{Error, Result};
use crate::number_field::{FieldExt, FieldMap, NfElem};
use crate::separation::rational_coordinates;

use super::classify::{classify, MatrixClass};
use super::matrix::Mat2;
use super::parabolic::{fixed_point, to_infinity};

/// A subgroup given by explicit generators, together with the ambient data the search needs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubgroupSpec {
    Trivial,
    /// `⟨h^power⟩`; the maximal cyclic group is assumed to be `⟨h⟩`.
    LoxodromicCyclic {
        generator: Mat2,
        power: u64,
    },
    /// `⟨k₁⟩` inside the rank-2 parabolic group `⟨k₁, k₂⟩`.
    ParabolicCyclic {
        generator: Mat2,
        ambient: Mat2,
    },
    ParabolicRank2 {
        generators: [Mat2; 2],
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubgroupKind {
    Trivial,
    Loxodromic,
    ParabolicCyclic,
    ParabolicRank2,
}

impl SubgroupSpec {
    pub fn kind(&self) -> SubgroupKind {
        match self {
            SubgroupSpec::Trivial => SubgroupKind::Trivial,
            SubgroupSpec::LoxodromicCyclic { .. } => SubgroupKind::Loxodromic,
            SubgroupSpec::ParabolicCyclic { .. } => SubgroupKind::ParabolicCyclic,
            SubgroupSpec::ParabolicRank2 { .. } => SubgroupKind::ParabolicRank2,
        }
    }

    pub fn is_parabolic(&self) -> bool {
        matches!(
            self.kind(),
            SubgroupKind::ParabolicCyclic | SubgroupKind::ParabolicRank2
        )
    }

    /// Generators of the subgroup itself.
    pub fn generators(&self) -> Vec<Mat2> {
        match self {
            SubgroupSpec::Trivial => Vec::new(),
            SubgroupSpec::LoxodromicCyclic { generator, power } => {
                vec![generator.pow(*power as i64)]
            }
            SubgroupSpec::ParabolicCyclic { generator, .. } => vec![generator.clone()],
            SubgroupSpec::ParabolicRank2 { generators } => generators.to_vec(),
        }
    }

    /// Every matrix stored in the spec.
    pub fn matrices(&self) -> Vec<&Mat2> {
        match self {
            SubgroupSpec::Trivial => Vec::new(),
            SubgroupSpec::LoxodromicCyclic { generator, .. } => vec![generator],
            SubgroupSpec::ParabolicCyclic { generator, ambient } => vec![generator, ambient],
            SubgroupSpec::ParabolicRank2 { generators } => generators.iter().collect(),
        }
    }

    /// Parabolic lattice generators `[k₁, k₂]` (subgroup generator first).
    pub fn parabolic_pair(&self) -> Option<[&Mat2; 2]> {
        match self {
            SubgroupSpec::ParabolicCyclic { generator, ambient } => Some([generator, ambient]),
            SubgroupSpec::ParabolicRank2 { generators } => Some([&generators[0], &generators[1]]),
            _ => None,
        }
    }

    pub fn map_each(&self, f: impl Fn(&Mat2) -> Mat2) -> SubgroupSpec {
        match self {
            SubgroupSpec::Trivial => SubgroupSpec::Trivial,
            SubgroupSpec::LoxodromicCyclic { generator, power } => SubgroupSpec::LoxodromicCyclic {
                generator: f(generator),
                power: *power,
            },
            SubgroupSpec::ParabolicCyclic { generator, ambient } => SubgroupSpec::ParabolicCyclic {
                generator: f(generator),
                ambient: f(ambient),
            },
            SubgroupSpec::ParabolicRank2 { generators } => SubgroupSpec::ParabolicRank2 {
                generators: [f(&generators[0]), f(&generators[1])],
            },
        }
    }

    pub fn conj(&self, c: &Mat2) -> SubgroupSpec {
        self.map_each(|m| m.conj(c))
    }

    pub fn map_field(&self, map: &FieldMap) -> SubgroupSpec {
        self.map_each(|m| m.map_field(map))
    }

    /// Checks the structural invariants. Parabolic generators must have trace 2 unless
    /// `projective`, in which case they are sign-normalized first.
    pub fn validate(&self, projective: bool) -> Result<SubgroupSpec> {
        let bad = |msg: &str| Err(Error::InvalidInput(msg.into()));
        match self {
            SubgroupSpec::Trivial => Ok(SubgroupSpec::Trivial),
            SubgroupSpec::LoxodromicCyclic { generator, power } => {
                if *power == 0 {
                    return bad("loxodromic power must be positive");
                }
                if classify(generator) != MatrixClass::Nonparabolic {
                    return bad("loxodromic generator must have tr² ≠ 4");
                }
                Ok(self.clone())
            }
            _ => {
                let spec = self.map_each(|m| {
                    if projective && (&m.trace() + &m.field().from_int(2)).is_zero() {
                        m.neg()
                    } else {
                        m.clone()
                    }
                });
                let [k1, k2] = spec.parabolic_pair().unwrap();
                for k in [k1, k2] {
                    if classify(k) != MatrixClass::Parabolic {
                        return bad("parabolic generator must have tr² = 4 and differ from ±I");
                    }
                    if k.trace() != k.field().from_int(2) {
                        return bad("parabolic generators must have trace 2 in SL mode");
                    }
                }
                if !k1.commutes_with(k2) {
                    return bad("parabolic generators must commute");
                }
                if fixed_point(k1) != fixed_point(k2) {
                    return bad("parabolic generators must share a fixed point");
                }
                let t1 = translation(k1);
                let t2 = translation(k2);
                if rational_coordinates(&t2, &[t1]).is_some() {
                    return bad("parabolic generators must be independent");
                }
                Ok(spec)
            }
        }
    }
}

/// `x` with `C·k·C⁻¹ = (1 x; 0 1)`, where `C` moves the fixed point of `k` to `∞`.
pub fn translation(k: &Mat2) -> NfElem {
    match fixed_point(k) {
        None => k.b.clone(),
        Some(xi) => k.conj(&to_infinity(&xi)).b,
    }
}
