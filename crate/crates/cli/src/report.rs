//! The JSON document every subcommand writes, and the CSV row of a sweep.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use twoclass_core::classify::{ClaimCheck, PredictionReport, SearchStrategy, SymbolSpec};
use twoclass_core::redei::Decomposition;

/// Bumped on any change to the shape of [`ReportDocument`].
pub const SCHEMA_VERSION: &str = "1.0";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDocument {
    pub schema_version: String,
    pub command: String,
    /// The parsed arguments, echoed back. Thread counts are left out so that
    /// output does not depend on parallelism.
    pub inputs: Map<String, Value>,
    pub results: Results,
    pub mismatches: Vec<Mismatch>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "data", rename_all = "snake_case")]
pub enum Results {
    Classification(Box<PredictionReport>),
    Sweep(Vec<SweepRow>),
    Verification(VerificationSummary),
    PrimeTuple(PrimeTupleResult),
    Unit(UnitResult),
    ClassGroup(ClassGroupResult),
    RedeiSets(RedeiSetsResult),
}

/// A claim the oracle disagreed with.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Mismatch {
    pub d: u64,
    pub claim: String,
    pub predicted: String,
    pub observed: String,
}

impl Mismatch {
    pub fn new(d: u64, check: &ClaimCheck) -> Self {
        Mismatch { d, claim: check.claim.clone(), predicted: check.predicted.clone(), observed: check.observed.clone() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleStatus {
    NotChecked,
    Match,
    Mismatch,
    OutOfRange,
    PrecisionExhausted,
}

/// One field of a sweep; also the CSV record, so every column is flat.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepRow {
    pub d: u64,
    pub shape: Option<String>,
    #[serde(rename = "rank_K")]
    pub rank_k: u32,
    #[serde(rename = "rank_Kprime")]
    pub rank_kprime: u32,
    #[serde(rename = "rank_K1")]
    pub rank_k1: u32,
    #[serde(rename = "structure_K")]
    pub structure_k: Option<String>,
    #[serde(rename = "structure_Kprime")]
    pub structure_kprime: Option<String>,
    #[serde(rename = "structure_K1")]
    pub structure_k1: Option<String>,
    /// Which criterion the structure claims come from.
    pub provenance: Option<String>,
    /// Congruence type of the rank-stability criterion, if any.
    pub rank_stability_case: Option<u8>,
    /// Stable rank of the tower, when the tower claim applies.
    pub tower_rank: Option<u32>,
    /// Finding kinds, `;`-separated.
    pub findings: Option<String>,
    pub oracle: OracleStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerificationSummary {
    pub fields: usize,
    pub claims_checked: usize,
    pub out_of_range: Vec<u64>,
    pub precision_exhausted: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrimeTupleResult {
    pub spec: SymbolSpec,
    pub strategy: SearchStrategy,
    pub primes: Vec<u64>,
    /// `None` if the product overflows 64 bits.
    pub product: Option<u64>,
}

/// `ε = (a + b√d) / 2`, with `a` and `b` as decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnitResult {
    pub d: u64,
    pub discriminant: u64,
    pub unit: String,
    pub a: String,
    pub b: String,
    pub norm: i8,
    pub cf_period: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassGroupResult {
    pub discriminant: i64,
    pub narrow: bool,
    pub order: usize,
    pub structure: Vec<u64>,
    pub two_part: Vec<u64>,
    /// One reduced form `(a, b, c)` per class.
    pub representatives: Vec<[i64; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RedeiSetsResult {
    pub discriminant: i64,
    pub s1: Vec<Decomposition>,
    pub s2: Vec<Decomposition>,
    pub narrow_two_rank: u32,
    pub narrow_four_rank: u32,
}
