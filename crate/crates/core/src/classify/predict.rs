use serde::{Deserialize, Serialize};

use super::criteria::{ppqq_condition, qqqq_condition, rank_stability_type, ConditionMatch, RankStabilityType};
use super::verify::OracleComparison;
use super::{ramified_prime_count, shape_of, FieldShape};
use crate::arith::FactoredSquarefree;
use crate::biquad::rank_a_k1;
use crate::error::{Error, Result};
use crate::forms::Abelian2Group;
use crate::genus::rank_a;
use crate::quadfield::QuadraticField;

/// Where a claim comes from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClaimSource {
    /// The real genus field of the quadratic field.
    GenusField,
    /// The count of ramified places of `Q(√2)` in `K1` and the residues of the primes of `d`.
    BiquadraticRankFormula,
    /// A Legendre-symbol condition for `d = p1 p2 q1 q2`.
    PpqqCondition { condition: u8, labeling: Vec<u64> },
    /// A Legendre-symbol condition for `d = q1 q2 q3 q4`.
    QqqqCondition { condition: u8, labeling: Vec<u64> },
}

/// Logical strength of a structure claim.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// The condition holds exactly when the structures hold.
    Iff,
    /// The condition implies the structures; the converse is not claimed.
    SufficientOnly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankClaim {
    pub value: u32,
    pub source: ClaimSource,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureClaim {
    pub group: Abelian2Group,
    pub source: ClaimSource,
    pub direction: Direction,
}

/// Outcome of a Legendre-symbol classifier.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ConditionStatus {
    /// The residues of the primes of `d` are outside the classifier's hypothesis.
    NotApplicable,
    NoMatch,
    Matched {
        condition: u8,
        labeling: Vec<u64>,
    },
}

impl From<Option<ConditionMatch>> for ConditionStatus {
    fn from(m: Option<ConditionMatch>) -> Self {
        match m {
            Some(ConditionMatch { condition, labeling }) => ConditionStatus::Matched { condition, labeling },
            None => ConditionStatus::NoMatch,
        }
    }
}

/// Stabilization in the cyclotomic Z2-extension `K = K0 ⊂ K1 ⊂ ...`: when
/// the prime above 2 is totally ramified in `K1/K` and the 2-rank does not
/// grow from `K` to `K1`, Fukuda's theorem keeps it constant in every layer,
/// so μ = 0; equal orders would give λ = 0 as well.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerClaim {
    /// `rank A(Kn)` for all `n >= 0`.
    pub stable_rank: u32,
    pub mu_vanishes: bool,
    /// Set only when the predicted orders of `A(K)` and `A(K1)` agree.
    pub lambda_vanishes: bool,
}

/// Disagreements between independent parts of the prediction, reported rather than resolved.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Finding {
    /// `d` has one of the three congruence types, but the computed ranks are
    /// not `(2, 3, 2)`.
    RankStabilityDisagreement { case: u8, computed_ranks: [u32; 3], residue_tension: bool },
    /// The computed ranks are `(2, 3, 2)` with `d ≡ 1 (mod 4)`, but `d` has
    /// none of the three congruence types.
    RankStabilityUnrecognized { computed_ranks: [u32; 3] },
}

/// Everything predicted about `K = Q(√d)`, `K' = Q(√2d)` and `K1 = Q(√2, √d)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictionReport {
    pub d: FactoredSquarefree,
    pub ramified_prime_count: u32,
    /// `None` when the discriminant has other than 3 or 4 prime divisors.
    pub shape: Option<FieldShape>,
    pub rank_a_k: RankClaim,
    pub rank_a_kprime: RankClaim,
    pub rank_a_k1: RankClaim,
    /// `None` when no criterion determines the structure.
    pub structure_a_k: Option<StructureClaim>,
    pub structure_a_kprime: Option<StructureClaim>,
    pub structure_a_k1: Option<StructureClaim>,
    pub rank_stability: Option<RankStabilityType>,
    pub ppqq: ConditionStatus,
    pub qqqq: ConditionStatus,
    pub tower_claim: Option<TowerClaim>,
    pub findings: Vec<Finding>,
    pub verified: Option<OracleComparison>,
}

impl PredictionReport {
    pub fn ranks(&self) -> [u32; 3] {
        [self.rank_a_k.value, self.rank_a_kprime.value, self.rank_a_k1.value]
    }

    pub fn structures(&self) -> [Option<&StructureClaim>; 3] {
        [self.structure_a_k.as_ref(), self.structure_a_kprime.as_ref(), self.structure_a_k1.as_ref()]
    }
}

fn status(r: Result<Option<ConditionMatch>>) -> ConditionStatus {
    match r {
        Ok(m) => m.into(),
        Err(_) => ConditionStatus::NotApplicable,
    }
}

/// Assembles ranks from genus theory and the biquadratic rank formula, and
/// structures from whichever Legendre-symbol criterion applies. Requires odd `d > 1`.
pub fn predict(d: &FactoredSquarefree) -> Result<PredictionReport> {
    if !d.is_odd() {
        return Err(Error::EvenRadicand(d.value()));
    }
    let k = QuadraticField::from_factored(d.clone())?;
    let doubled = d.doubled().ok_or_else(|| Error::InvalidInput(format!("2 * {d} overflows")))?;
    let k_prime = QuadraticField::from_factored(doubled)?;

    let genus = |v| RankClaim { value: v, source: ClaimSource::GenusField };
    let rank_a_k = genus(rank_a(&k)?);
    let rank_a_kprime = genus(rank_a(&k_prime)?);
    let rank_a_k1 = RankClaim { value: rank_a_k1(d)?, source: ClaimSource::BiquadraticRankFormula };
    let ranks = [rank_a_k.value, rank_a_kprime.value, rank_a_k1.value];

    let ppqq = status(ppqq_condition(d));
    let qqqq = status(qqqq_condition(d));
    let criterion = match (&ppqq, &qqqq) {
        (ConditionStatus::Matched { condition, labeling }, _) => {
            Some((ClaimSource::PpqqCondition { condition: *condition, labeling: labeling.clone() }, Direction::Iff))
        }
        (_, ConditionStatus::Matched { condition, labeling }) => Some((
            ClaimSource::QqqqCondition { condition: *condition, labeling: labeling.clone() },
            Direction::SufficientOnly,
        )),
        _ => None,
    };
    let claim = |factors: Vec<u64>| {
        criterion.as_ref().map(|(source, direction)| StructureClaim {
            group: Abelian2Group::new(factors).expect("valid factors"),
            source: source.clone(),
            direction: *direction,
        })
    };
    let structure_a_k = claim(vec![2, 2]);
    let structure_a_kprime = claim(vec![2, 2, 2]);
    let structure_a_k1 = claim(vec![2, 4]);

    let rank_stability = rank_stability_type(d);
    let t = ramified_prime_count(d);
    let mut findings = Vec::new();
    match &rank_stability {
        Some(r) if ranks != [2, 3, 2] => findings.push(Finding::RankStabilityDisagreement {
            case: r.case,
            computed_ranks: ranks,
            residue_tension: r.residue_tension,
        }),
        None if ranks == [2, 3, 2] && d.value() % 4 == 1 && matches!(t, 3 | 4) => {
            findings.push(Finding::RankStabilityUnrecognized { computed_ranks: ranks })
        }
        _ => {}
    }

    // 2 is unramified in K and ramified in Q(√2) exactly when d ≡ 1 (mod 4),
    // which makes the prime above 2 totally ramified in K1/K.
    let tower_claim = (d.value() % 4 == 1 && rank_a_k.value == rank_a_k1.value).then(|| {
        let lambda_vanishes = match (&structure_a_k, &structure_a_k1) {
            (Some(a), Some(b)) => a.group.order() == b.group.order(),
            _ => false,
        };
        TowerClaim { stable_rank: rank_a_k.value, mu_vanishes: true, lambda_vanishes }
    });

    Ok(PredictionReport {
        d: d.clone(),
        ramified_prime_count: t,
        shape: shape_of(d).ok(),
        rank_a_k,
        rank_a_kprime,
        rank_a_k1,
        structure_a_k,
        structure_a_kprime,
        structure_a_k1,
        rank_stability,
        ppqq,
        qqqq,
        tower_claim,
        findings,
        verified: None,
    })
}
