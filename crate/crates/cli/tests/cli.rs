use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use toric_jets_cli::{analyze, to_json_string, verify, witness, WitnessError, ANALYZE_CSV_HEADER, GUARD_ENV};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toric-jets"))
        .args(args)
        .env_remove(GUARD_ENV)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn manifest_path(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(rel)
}

fn compile(schema: &str) -> jsonschema::JSONSchema {
    let text = std::fs::read_to_string(manifest_path(&format!("../../docs/schema/{schema}.schema.json"))).unwrap();
    let schema: Value = serde_json::from_str(&text).unwrap();
    jsonschema::JSONSchema::compile(&schema).expect("schema compiles")
}

fn validate(schema: &str, doc: &Value) {
    let compiled = compile(schema);
    let msgs: Vec<String> = match compiled.validate(doc) {
        Ok(()) => Vec::new(),
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    assert!(msgs.is_empty(), "schema violations: {msgs:?}");
}

#[test]
fn golden_analyze_reports() {
    for (p, q, m) in [(2, 3, 5), (3, 5, 4), (5, 7, 3)] {
        let path = manifest_path(&format!("tests/golden/analyze_{p}_{q}_m{m}.json"));
        let golden = std::fs::read_to_string(&path).unwrap();
        let out = run(&[
            "analyze",
            "--p",
            &p.to_string(),
            "--q",
            &q.to_string(),
            "--m",
            &m.to_string(),
            "--format",
            "json",
        ]);
        assert_eq!(code(&out), 0);
        assert_eq!(stdout(&out), golden, "analyze ({p},{q}) m={m} drifted from {}", path.display());
    }
}

#[test]
fn analyze_values() {
    let doc = analyze(3, 5, 4).unwrap();
    assert_eq!(doc["components"]["N"]["enumerated"], 4);
    assert_eq!(doc["components"]["s1_count"], 2);
    assert_eq!(doc["components"]["exceptional"], 2);
    let doc = analyze(2, 3, 5).unwrap();
    let classes = doc["components"]["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 3);
    let s: Vec<u64> = classes.iter().map(|c| c["s"].as_u64().unwrap()).collect();
    assert_eq!(s, [1, 2, 3]);
}

#[test]
fn json_round_trip_is_byte_identical() {
    let docs = [
        analyze(5, 7, 3).unwrap(),
        witness(3, 5, 4, 3, 1, 2).unwrap(),
        verify(2, 3, 1, 2, 1 << 20, false).unwrap().document,
    ];
    for doc in docs {
        let text = to_json_string(&doc);
        let reparsed: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(to_json_string(&reparsed), text);
    }
    let out = run(&["witness", "--p", "3", "--q", "5", "--m", "4", "--i", "3", "--s", "1", "--l", "1", "--format", "json"]);
    let text = stdout(&out);
    let reparsed: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(to_json_string(&reparsed), text);
}

#[test]
fn outputs_match_schemas() {
    for (p, q, m) in [(2, 3, 5), (3, 5, 4), (5, 7, 3), (7, 19, 6)] {
        validate("analyze", &analyze(p, q, m).unwrap());
    }
    validate("witness", &witness(3, 5, 4, 3, 1, 2).unwrap());
    validate("witness", &witness(5, 7, 6, 4, 2, 3).unwrap());
    validate("verify", &verify(2, 3, 2, 3, 1 << 26, false).unwrap().document);
    validate("verify", &verify(2, 5, 2, 2, 1 << 26, true).unwrap().document);

    let mut broken = analyze(3, 5, 4).unwrap();
    broken["components"]["classes"][0]["canonical"] = serde_json::json!([2, 1]);
    assert!(!compile("analyze").is_valid(&broken));
    let mut broken = witness(3, 5, 4, 3, 1, 2).unwrap();
    broken["jet"][0][0] = serde_json::json!("1/0");
    assert!(!compile("witness").is_valid(&broken));
}

#[test]
fn witness_examples() {
    let doc = witness(3, 5, 4, 3, 1, 2).unwrap();
    assert_eq!(doc["v"], serde_json::json!([1, 1]));
    assert_eq!(doc["jet_text"], "(t, t, t, t^2)");
    assert_eq!(doc["orders"], serde_json::json!([1, 1, 1, 2]));
    assert_eq!(doc["is_member"], true);
    let doc = witness(3, 5, 4, 3, 1, 1).unwrap();
    assert_eq!(doc["v"], serde_json::json!([2, 3]));
    assert_eq!(doc["jet_text"], "(t^3, t^2, t, t)");
}

#[test]
fn witness_rejects_out_of_range_label() {
    let err = witness(3, 5, 4, 2, 1, 2).unwrap_err();
    assert!(matches!(err, WitnessError::Input(_)));
    let out = run(&["witness", "--p", "3", "--q", "5", "--m", "4", "--i", "2", "--s", "1", "--l", "2"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("[1, 1]"), "{}", stderr(&out));
}

#[test]
fn invalid_surfaces_exit_2() {
    let out = run(&["analyze", "--p", "4", "--q", "6", "--m", "2"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("gcd(p,q) must be 1"));
    for args in [
        ["analyze", "--p", "1", "--q", "5", "--m", "2"],
        ["analyze", "--p", "5", "--q", "3", "--m", "2"],
        ["analyze", "--p", "3", "--q", "5", "--m", "0"],
    ] {
        assert_eq!(code(&run(&args)), 2, "{args:?}");
    }
    assert_eq!(code(&run(&["analyze", "--p", "3"])), 2);
    assert_eq!(code(&run(&["verify", "--p", "2", "--q", "3", "--m", "1", "--field", "4"])), 2);
    assert_eq!(code(&run(&["analyze", "--p", "3", "--q", "5", "--m", "2", "--format", "xml"])), 2);
}

#[test]
fn guard_exceeded_exits_3() {
    let out = run(&["verify", "--p", "3", "--q", "5", "--m", "10", "--field", "5"]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("5^44"), "{}", stderr(&out));
    // the environment sets the default, the flag overrides it
    let args = ["verify", "--p", "2", "--q", "3", "--m", "1", "--field", "2"];
    let small = Command::new(env!("CARGO_BIN_EXE_toric-jets"))
        .args(args)
        .env(GUARD_ENV, "100")
        .output()
        .unwrap();
    assert_eq!(code(&small), 3);
    let overridden = Command::new(env!("CARGO_BIN_EXE_toric-jets"))
        .args(args)
        .args(["--guard", "256"])
        .env(GUARD_ENV, "100")
        .output()
        .unwrap();
    assert_eq!(code(&overridden), 0);
}

#[test]
fn verify_passes_on_small_surfaces() {
    let out = run(&["verify", "--p", "2", "--q", "3", "--m", "2", "--field", "3", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["passed"], true);
    let strata = doc["oracle"]["strata"].as_array().unwrap();
    assert_eq!(strata[0]["label"], serde_json::json!([2, 1, 1]));
    assert_eq!(strata[0]["count"], 324);
    let v = verify(2, 3, 1, 3, 1 << 26, true).unwrap();
    assert_eq!(v.document["oracle"]["strata"][0]["count"], 36);
    assert_eq!(v.exit_code(true), 0);
    let out = run(&["verify", "--p", "3", "--q", "5", "--m", "3", "--field", "2", "--strict"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
}

#[test]
fn markdown_and_csv_formats() {
    let out = run(&["analyze", "--p", "3", "--q", "5", "--m", "4"]);
    let md = stdout(&out);
    let rows: Vec<&str> = md.lines().filter(|l| l.starts_with("| 1") || l.starts_with("| 2")).collect();
    assert_eq!(rows.len(), 4);
    assert!(rows[0].contains("(2,1,1) = (3,1,2)"));
    let out = run(&["analyze", "--p", "3", "--q", "5", "--m", "4", "--format", "csv"]);
    let csv = stdout(&out);
    assert_eq!(csv.lines().next().unwrap(), ANALYZE_CSV_HEADER.join(","));
    assert_eq!(csv.lines().count(), 5);
    let out = run(&["verify", "--p", "2", "--q", "3", "--m", "1", "--field", "2", "--format", "csv"]);
    assert_eq!(stdout(&out).lines().next().unwrap(), "check,kind,passed,detail");
    let out = run(&["witness", "--p", "3", "--q", "5", "--m", "4", "--i", "3", "--s", "1", "--l", "2", "--format", "csv"]);
    assert_eq!(stdout(&out).lines().count(), 5);
}
