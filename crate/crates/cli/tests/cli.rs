use std::process::Command;

use serde_json::Value;

use twoclass_cli::report::{OracleStatus, Results};
use twoclass_cli::{run, ReportDocument, EXIT_INCOMPLETE, EXIT_OK, EXIT_USAGE};

fn run_args(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(std::iter::once("twoclass").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn document(args: &[&str]) -> (ReportDocument, Value) {
    let (code, out, err) = run_args(args);
    assert_eq!(code, EXIT_OK, "{args:?}: {err}");
    let value: Value = serde_json::from_str(&out).unwrap();
    (serde_json::from_str(&out).unwrap(), value)
}

fn schema() -> jsonschema::Validator {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../docs/report-schema.json")).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

const EVERY_SUBCOMMAND: &[&[&str]] = &[
    &["classify", "1365"],
    &["classify", "1365", "--verify"],
    &["classify", "16705"],
    &["classify", "3"],
    &["enumerate", "--max", "2000", "--verify"],
    &["enumerate", "--min", "1000", "--max", "40000", "--shape", "q1q2q3q4"],
    &["find-primes", "--mod8", "7,3,3,3", "--symbols", "2,1=-1;3,1=1;4,3=-1"],
    &["find-primes", "--mod8", "1", "--start", "18", "--strategy", "single-progression"],
    &["verify", "--max", "3000"],
    &["verify", "--d", "26961"],
    &["unit", "94"],
    &["unit", "2"],
    &["classgroup", "40", "--narrow"],
    &["classgroup", "10920", "--ordinary"],
    &["classgroup", "12"],
    &["s1s2", "1365"],
    &["s1s2", "-4"],
];

#[test]
fn every_subcommand_matches_the_schema_and_round_trips() {
    let validator = schema();
    for args in EVERY_SUBCOMMAND {
        let (code, out, err) = run_args(args);
        if args == &["s1s2", "-4"] {
            // imaginary discriminants are outside the toolkit
            assert_eq!(code, EXIT_USAGE, "{err}");
            continue;
        }
        assert_eq!(code, EXIT_OK, "{args:?}: {err}");
        let value: Value = serde_json::from_str(&out).unwrap();
        let errors: Vec<String> =
            validator.iter_errors(&value).map(|e| format!("{e} at {}", e.instance_path())).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}");
        let doc: ReportDocument = serde_json::from_value(value.clone()).unwrap();
        assert_eq!(serde_json::to_value(&doc).unwrap(), value, "{args:?}");
        assert_eq!(doc.schema_version, twoclass_cli::SCHEMA_VERSION);
        assert_eq!(doc.command, args[0]);
    }
}

#[test]
fn unknown_fields_are_rejected() {
    let (_, mut value) = document(&["unit", "5"]);
    value["extra"] = Value::Bool(true);
    assert!(serde_json::from_value::<ReportDocument>(value.clone()).is_err());
    assert!(!schema().is_valid(&value));
}

#[test]
fn classify_1365() {
    let (doc, _) = document(&["classify", "1365"]);
    let Results::Classification(r) = doc.results else { panic!("{:?}", doc.results) };
    let groups: Vec<Vec<u64>> = r.structures().iter().map(|s| s.unwrap().group.factors().to_vec()).collect();
    assert_eq!(groups, vec![vec![2, 2], vec![2, 2, 2], vec![2, 4]]);
    assert!(doc.mismatches.is_empty());
}

#[test]
fn classgroup_40_narrow() {
    let (doc, _) = document(&["classgroup", "40", "--narrow"]);
    let Results::ClassGroup(g) = doc.results else { panic!() };
    assert_eq!((g.order, g.structure), (2, vec![2]));
    assert!(g.narrow);
    let (doc, _) = document(&["classgroup", "40", "--ordinary"]);
    let Results::ClassGroup(g) = doc.results else { panic!() };
    assert_eq!((g.order, g.narrow), (2, false));
}

#[test]
fn verify_to_20000_has_no_mismatches() {
    let (doc, _) = document(&["verify", "--max", "20000"]);
    let Results::Verification(s) = doc.results else { panic!() };
    assert!(s.fields > 8000);
    assert!(s.out_of_range.is_empty() && s.precision_exhausted.is_empty());
    assert!(doc.mismatches.is_empty());
}

#[test]
fn exit_codes() {
    let usage: &[&[&str]] = &[
        &[],
        &["frobnicate"],
        &["classify"],
        &["classify", "10"],
        &["classify", "12"],
        &["classify", "-5"],
        &["enumerate", "--min", "10", "--max", "5"],
        &["enumerate", "--max", "100", "--shape", "p1p1"],
        &["find-primes", "--mod8", "4"],
        &["find-primes", "--mod8", "1,3", "--symbols", "1,2=1"],
        &["find-primes", "--mod8", "5,5", "--symbols", "2,1=-1", "--bound", "1", "--start", "1000"],
        &["classgroup", "9"],
        &["classgroup", "20", "--ordinary"],
        &["classgroup", "40", "--narrow", "--ordinary"],
        &["unit", "4"],
        &["verify", "--d", "7", "--max", "10"],
    ];
    for args in usage {
        let (code, out, err) = run_args(args);
        assert_eq!(code, EXIT_USAGE, "{args:?}: {out}");
        assert!(!err.is_empty(), "{args:?}");
    }
    assert_eq!(run_args(&["--help"]).0, EXIT_OK);
    assert_eq!(run_args(&["--version"]).0, EXIT_OK);
    assert_eq!(run_args(&["classify", "500000003", "--verify"]).0, EXIT_INCOMPLETE);
    assert_eq!(run_args(&["verify", "--d", "500000003"]).0, EXIT_INCOMPLETE);
    assert_eq!(run_args(&["classgroup", "5000000001"]).0, EXIT_INCOMPLETE);
    assert_eq!(run_args(&["classify", "500000003"]).0, EXIT_OK);
}

#[test]
fn sweep_reports_fields_beyond_the_oracle() {
    let (code, out, _) = run_args(&["enumerate", "--min", "499999990", "--max", "500000010", "--verify"]);
    assert_eq!(code, EXIT_INCOMPLETE);
    let doc: ReportDocument = serde_json::from_str(&out).unwrap();
    let Results::Sweep(rows) = doc.results else { panic!() };
    assert!(rows.iter().any(|r| r.oracle == OracleStatus::OutOfRange));
    assert!(rows.iter().any(|r| r.oracle == OracleStatus::Match));
}

#[test]
fn sweeps_are_deterministic_across_thread_counts() {
    for extra in [&[][..], &["--csv"][..], &["--verify"][..]] {
        let base = ["enumerate", "--min", "1", "--max", "6000"];
        let with = |t: &str| {
            let args: Vec<&str> = base.iter().chain(extra).chain(&["--threads", t]).copied().collect();
            let (code, out, err) = run_args(&args);
            assert_eq!(code, EXIT_OK, "{err}");
            out
        };
        let one = with("1");
        assert_eq!(one, with("4"), "{extra:?}");
        assert_eq!(one, with("1"));
    }
}

#[test]
fn csv_has_the_documented_header() {
    let (code, out, _) = run_args(&["enumerate", "--max", "1400", "--csv", "--shape", "p1p2q1q2"]);
    assert_eq!(code, EXIT_OK);
    let mut lines = out.lines();
    assert_eq!(
        lines.next().unwrap(),
        "d,shape,rank_K,rank_Kprime,rank_K1,structure_K,structure_Kprime,structure_K1,provenance,\
         rank_stability_case,tower_rank,findings,oracle"
    );
    let rows: Vec<&str> = lines.collect();
    assert!(rows.iter().any(|r| r.starts_with("1365,p1p2q1q2,2,3,2,Z/2 + Z/2,")), "{rows:?}");
    let mut reader = csv::Reader::from_reader(out.as_bytes());
    let parsed: Vec<twoclass_cli::SweepRow> = reader.deserialize().map(Result::unwrap).collect();
    assert_eq!(parsed.len(), rows.len());
}

#[test]
fn found_primes_satisfy_the_constraints() {
    let (doc, _) = document(&["find-primes", "--mod8", "5,5,7,3", "--symbols", "2,1=-1;3,1=1;4,2=-1"]);
    let Results::PrimeTuple(t) = doc.results else { panic!() };
    assert!(twoclass_core::classify::tuple_satisfies(&t.spec, &t.primes));
    assert_eq!(t.product, Some(t.primes.iter().product()));
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_twoclass");
    let ok = Command::new(bin).args(["s1s2", "1365"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    let doc: ReportDocument = serde_json::from_slice(&ok.stdout).unwrap();
    let Results::RedeiSets(s) = doc.results else { panic!() };
    assert_eq!((s.s1.len(), s.s2.len(), s.narrow_two_rank, s.narrow_four_rank), (8, 1, 3, 0));
    let bad = Command::new(bin).args(["classify", "10"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
    let far = Command::new(bin).args(["classify", "500000003", "--verify"]).output().unwrap();
    assert_eq!(far.status.code(), Some(EXIT_INCOMPLETE));
}
