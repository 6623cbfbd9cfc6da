//! One function per subcommand, each producing a [`ReportDocument`].

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{Map, Value};

use twoclass_core::arith::{factor_squarefree, FactoredSquarefree};
use twoclass_core::classify::{
    find_prime_tuple_with, predict, shape_of, verify_report, ClaimSource, Finding, PredictionReport, SymbolConstraint,
    SymbolSpec, TableRow, ORACLE_DISCRIMINANT_LIMIT,
};
use twoclass_core::forms::{narrow_class_group, ordinary_class_group, two_sylow};
use twoclass_core::quadfield::QuadraticField;
use twoclass_core::redei::{enumerate_s1, filter_s2};
use twoclass_core::Error;

use crate::report::*;
use crate::{ClassGroupArgs, ClassifyArgs, EnumerateArgs, Failure, FindPrimesArgs, S1S2Args, UnitArgs, VerifyArgs};

/// A finished command: the document, the sweep rows for CSV output, and
/// whether some field could not be checked.
pub(crate) struct Output {
    pub doc: ReportDocument,
    pub rows: Vec<SweepRow>,
    pub incomplete: bool,
}

impl Output {
    fn single(command: &str, inputs: &impl Serialize, results: Results) -> Self {
        Output { doc: document(command, inputs, results, Vec::new()), rows: Vec::new(), incomplete: false }
    }
}

fn document(command: &str, inputs: &impl Serialize, results: Results, mismatches: Vec<Mismatch>) -> ReportDocument {
    let inputs = match serde_json::to_value(inputs) {
        Ok(Value::Object(m)) => m,
        _ => Map::new(),
    };
    ReportDocument { schema_version: SCHEMA_VERSION.into(), command: command.into(), inputs, results, mismatches }
}

fn odd_radicand(d: u64) -> Result<FactoredSquarefree, Failure> {
    let f = factor_squarefree(d)?;
    if !f.is_odd() || d < 3 {
        return Err(Failure::Usage(format!("d must be an odd square-free integer > 1, got {d}")));
    }
    Ok(f)
}

pub(crate) fn classify(args: &ClassifyArgs) -> Result<Output, Failure> {
    let d = odd_radicand(args.d)?;
    let mut report = predict(&d)?;
    let mut mismatches = Vec::new();
    if args.verify {
        let v = verify_report(&report)?;
        mismatches.extend(v.mismatches().map(|c| Mismatch::new(args.d, c)));
        report.verified = Some(v);
    }
    let doc = document("classify", args, Results::Classification(Box::new(report)), mismatches);
    Ok(Output { doc, rows: Vec::new(), incomplete: false })
}

fn provenance(report: &PredictionReport) -> Option<String> {
    let labeling = |l: &[u64]| l.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
    report.structure_a_k.as_ref().map(|s| match &s.source {
        ClaimSource::PpqqCondition { condition, labeling: l } => {
            format!("ppqq condition {condition} ({})", labeling(l))
        }
        ClaimSource::QqqqCondition { condition, labeling: l } => {
            format!("qqqq condition {condition} ({})", labeling(l))
        }
        other => format!("{other:?}"),
    })
}

fn finding_kind(f: &Finding) -> &'static str {
    match f {
        Finding::RankStabilityDisagreement { residue_tension: true, .. } => {
            "rank_stability_disagreement_residue_tension"
        }
        Finding::RankStabilityDisagreement { .. } => "rank_stability_disagreement",
        Finding::RankStabilityUnrecognized { .. } => "rank_stability_unrecognized",
    }
}

struct Swept {
    row: SweepRow,
    mismatches: Vec<Mismatch>,
    claims: usize,
}

fn sweep_one(d: &FactoredSquarefree, verify: bool) -> Result<Swept, Error> {
    let report = predict(d)?;
    let group = |s: Option<&twoclass_core::classify::StructureClaim>| s.map(|c| c.group.to_string());
    let [sk, skp, sk1] = report.structures();
    let findings: Vec<&str> = report.findings.iter().map(finding_kind).collect();
    let mut row = SweepRow {
        d: d.value(),
        shape: report.shape.as_ref().map(|s| s.row.label().to_string()),
        rank_k: report.rank_a_k.value,
        rank_kprime: report.rank_a_kprime.value,
        rank_k1: report.rank_a_k1.value,
        structure_k: group(sk),
        structure_kprime: group(skp),
        structure_k1: group(sk1),
        provenance: provenance(&report),
        rank_stability_case: report.rank_stability.as_ref().map(|r| r.case),
        tower_rank: report.tower_claim.as_ref().map(|t| t.stable_rank),
        findings: (!findings.is_empty()).then(|| findings.join(";")),
        oracle: OracleStatus::NotChecked,
    };
    let mut mismatches = Vec::new();
    let mut claims = 0;
    if verify {
        match verify_report(&report) {
            Ok(v) => {
                claims = v.checks.len();
                mismatches.extend(v.mismatches().map(|c| Mismatch::new(d.value(), c)));
                row.oracle = if mismatches.is_empty() { OracleStatus::Match } else { OracleStatus::Mismatch };
            }
            Err(Error::OracleRangeExceeded { .. }) => row.oracle = OracleStatus::OutOfRange,
            Err(Error::PrecisionExhausted { .. }) => row.oracle = OracleStatus::PrecisionExhausted,
            Err(e) => return Err(e),
        }
    }
    Ok(Swept { row, mismatches, claims })
}

/// Odd square-free `d` in `[min, max]`, optionally of one table row, in increasing order.
fn sweep(min: u64, max: u64, shape: Option<TableRow>, verify: bool) -> Result<Vec<Swept>, Failure> {
    if min > max {
        return Err(Failure::Usage(format!("--min {min} exceeds --max {max}")));
    }
    let fields: Vec<FactoredSquarefree> = (min.max(3)..=max)
        .filter(|d| d % 2 == 1)
        .filter_map(|d| factor_squarefree(d).ok())
        .filter(|d| shape.map_or(true, |row| shape_of(d).is_ok_and(|s| s.row == row)))
        .collect();
    Ok(fields.par_iter().map(|d| sweep_one(d, verify)).collect::<Result<Vec<_>, _>>()?)
}

fn parse_shape(label: &Option<String>) -> Result<Option<TableRow>, Failure> {
    label.as_deref().map(|s| s.parse().map_err(|e: Error| Failure::Usage(e.to_string()))).transpose()
}

pub(crate) fn enumerate(args: &EnumerateArgs) -> Result<Output, Failure> {
    let swept = sweep(args.min, args.max, parse_shape(&args.shape)?, args.verify)?;
    let incomplete =
        swept.iter().any(|s| matches!(s.row.oracle, OracleStatus::OutOfRange | OracleStatus::PrecisionExhausted));
    let mismatches = swept.iter().flat_map(|s| s.mismatches.iter().cloned()).collect();
    let rows: Vec<SweepRow> = swept.into_iter().map(|s| s.row).collect();
    let doc = document("enumerate", args, Results::Sweep(rows.clone()), mismatches);
    Ok(Output { doc, rows, incomplete })
}

pub(crate) fn verify(args: &VerifyArgs) -> Result<Output, Failure> {
    if let Some(d) = args.d {
        let d = odd_radicand(d)?;
        let mut report = predict(&d)?;
        let v = verify_report(&report)?;
        let mismatches = v.mismatches().map(|c| Mismatch::new(d.value(), c)).collect();
        report.verified = Some(v);
        let doc = document("verify", args, Results::Classification(Box::new(report)), mismatches);
        return Ok(Output { doc, rows: Vec::new(), incomplete: false });
    }
    let swept = sweep(args.min, args.max, None, true)?;
    let with_status =
        |st: OracleStatus| swept.iter().filter(|s| s.row.oracle == st).map(|s| s.row.d).collect::<Vec<_>>();
    let summary = VerificationSummary {
        fields: swept.len(),
        claims_checked: swept.iter().map(|s| s.claims).sum(),
        out_of_range: with_status(OracleStatus::OutOfRange),
        precision_exhausted: with_status(OracleStatus::PrecisionExhausted),
    };
    let incomplete = !summary.out_of_range.is_empty() || !summary.precision_exhausted.is_empty();
    let mismatches = swept.iter().flat_map(|s| s.mismatches.iter().cloned()).collect();
    let rows = swept.into_iter().map(|s| s.row).collect();
    let doc = document("verify", args, Results::Verification(summary), mismatches);
    Ok(Output { doc, rows, incomplete })
}

/// `k,j=±1` entries separated by `;`.
pub(crate) fn parse_symbols(s: &str) -> Result<Vec<SymbolConstraint>, Failure> {
    let bad = |part: &str| Failure::Usage(format!("symbol constraint '{part}' is not of the form k,j=±1"));
    s.split(';')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|part| {
            let (pair, value) = part.split_once('=').ok_or_else(|| bad(part))?;
            let (k, j) = pair.split_once(',').ok_or_else(|| bad(part))?;
            let k = k.trim().parse().map_err(|_| bad(part))?;
            let j = j.trim().parse().map_err(|_| bad(part))?;
            let value = match value.trim() {
                "1" | "+1" => 1,
                "-1" => -1,
                _ => return Err(bad(part)),
            };
            Ok(SymbolConstraint { k, j, value })
        })
        .collect()
}

pub(crate) fn find_primes(args: &FindPrimesArgs) -> Result<Output, Failure> {
    let spec = SymbolSpec::new(args.mod8.clone(), parse_symbols(&args.symbols)?)?;
    if spec.is_empty() {
        return Err(Failure::Usage("--mod8 needs at least one residue".into()));
    }
    let strategy = args.strategy.into();
    let primes = find_prime_tuple_with(&spec, args.bound, args.start, strategy)?;
    let product = primes.iter().try_fold(1u64, |acc, &p| acc.checked_mul(p));
    Ok(Output::single("find-primes", args, Results::PrimeTuple(PrimeTupleResult { spec, strategy, primes, product })))
}

pub(crate) fn unit(args: &UnitArgs) -> Result<Output, Failure> {
    let k = QuadraticField::new(args.d)?;
    let u = k.unit();
    let (a, b) = u.value.halves();
    let result = UnitResult {
        d: args.d,
        discriminant: k.discriminant(),
        unit: u.value.to_string(),
        a: a.to_string(),
        b: b.to_string(),
        norm: u.norm,
        cf_period: u.cf_period,
    };
    Ok(Output::single("unit", args, Results::Unit(result)))
}

pub(crate) fn classgroup(args: &ClassGroupArgs) -> Result<Output, Failure> {
    let disc = args.discriminant;
    if disc > 0 && disc as u64 > ORACLE_DISCRIMINANT_LIMIT {
        return Err(Error::OracleRangeExceeded { discriminant: disc as u64, limit: ORACLE_DISCRIMINANT_LIMIT }.into());
    }
    let g = if args.ordinary {
        let d = if disc % 4 == 1 { disc } else { disc / 4 };
        let k = u64::try_from(d).ok().and_then(|d| QuadraticField::new(d).ok());
        match k {
            Some(k) if k.discriminant() as i64 == disc => ordinary_class_group(disc, k.unit().norm)?,
            _ => {
                return Err(Failure::Usage(format!(
                    "--ordinary needs the discriminant of a real quadratic field, got {disc}"
                )))
            }
        }
    } else {
        narrow_class_group(disc)?
    };
    let result = ClassGroupResult {
        discriminant: disc,
        narrow: g.is_narrow(),
        order: g.order(),
        structure: g.structure().to_vec(),
        two_part: two_sylow(&g).factors().to_vec(),
        representatives: g.classes().iter().map(|f| [f.a, f.b, f.c]).collect(),
    };
    Ok(Output::single("classgroup", args, Results::ClassGroup(result)))
}

pub(crate) fn s1s2(args: &S1S2Args) -> Result<Output, Failure> {
    let disc = args.discriminant;
    let s1 = enumerate_s1(disc)?;
    let s2 = filter_s2(disc)?;
    let result = RedeiSetsResult {
        discriminant: disc,
        narrow_two_rank: s1.len().trailing_zeros(),
        narrow_four_rank: s2.len().trailing_zeros(),
        s1,
        s2,
    };
    Ok(Output::single("s1s2", args, Results::RedeiSets(result)))
}
