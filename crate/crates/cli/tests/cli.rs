use std::path::Path;
use std::process::{Command, Output};

use jsonschema::JSONSchema;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_maxclass"))
        .args(args)
        .env_remove("MAXCLASS_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

fn assert_schema(name: &str, instance: &Value) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("schema")
        .join(name);
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let compiled = JSONSchema::compile(&schema).expect("schema compiles");
    let msgs: Vec<String> = match compiled.validate(instance) {
        Ok(()) => Vec::new(),
        Err(errors) => errors.map(|e| e.to_string()).collect(),
    };
    assert!(msgs.is_empty(), "{name}: {msgs:?}\n{instance:#}");
}

#[test]
fn count_all_methods_agree() {
    let out = run(&[
        "count", "--n", "3", "--p", "5", "--N", "2", "--method", "all",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("r = 56 (agree)"));
}

#[test]
fn count_default_method() {
    let out = run(&["count", "--n", "2", "--p", "3", "--N", "1"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("r = 2 (agree)"));
}

#[test]
fn count_rejects_exceptional_prime() {
    let out = run(&["count", "--n", "4", "--p", "3", "--N", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceptional prime p=3 < n=4"));
}

#[test]
fn count_budget_from_environment_and_flag() {
    let args = [
        "count", "--n", "3", "--p", "5", "--N", "2", "--method", "enum",
    ];
    let out = Command::new(env!("CARGO_BIN_EXE_maxclass"))
        .args(args)
        .env("MAXCLASS_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));

    let out = Command::new(env!("CARGO_BIN_EXE_maxclass"))
        .args(args)
        .args(["--budget", "1000"])
        .env("MAXCLASS_BUDGET", "100")
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn count_json_matches_schema() {
    let v = json(&[
        "count", "--n", "3", "--p", "5", "--N", "2", "--format", "json",
    ]);
    assert_schema("count.schema.json", &v);
    assert_eq!(v["r"], "56");
    assert_eq!(v["orbit_census"]["25"], 20);
    let v = json(&[
        "count", "--n", "4", "--p", "5", "--N", "7", "--method", "closed", "--format", "json",
    ]);
    assert_schema("count.schema.json", &v);
    assert!(v["r_enumerated"].is_null());
}

#[test]
fn count_is_deterministic_across_threads() {
    let base = stdout(&run(&[
        "count", "--n", "3", "--p", "3", "--N", "3", "--format", "json",
    ]));
    for threads in ["1", "2", "4"] {
        let other = stdout(&run(&[
            "count",
            "--n",
            "3",
            "--p",
            "3",
            "--N",
            "3",
            "--format",
            "json",
            "--threads",
            threads,
        ]));
        assert_eq!(base, other);
    }
}

#[test]
fn zeta_text() {
    let out = stdout(&run(&["zeta", "--n", "3"]));
    assert!(out.contains("(1 - t)^2 / ((1 - p t)^2)"));
    assert!(out.contains("abscissa: 1\n"));
    assert!(out.contains("functional equation: OK (factor p^2)"));
    assert!(stdout(&run(&["zeta", "--n", "6"])).contains("abscissa: 4\n"));
}

#[test]
fn zeta_series() {
    let out = stdout(&run(&["zeta", "--n", "2", "--p", "3", "--series", "3"]));
    assert!(out.contains("series at p=3: 1, 2, 6, 18"));
    let v = json(&[
        "zeta", "--n", "2", "--p", "3", "--series", "3", "--format", "json",
    ]);
    assert_schema("zeta.schema.json", &v);
    assert_eq!(
        v["series"]["coefficients"],
        serde_json::json!(["1", "2", "6", "18"])
    );
}

#[test]
fn zeta_json_matches_schema() {
    for n in ["2", "3", "7"] {
        let v = json(&["zeta", "--n", n, "--format", "json"]);
        assert_schema("zeta.schema.json", &v);
        assert_eq!(v["functional_equation"]["holds"], true);
    }
}

#[test]
fn verify_targeted_suites() {
    let out = run(&[
        "verify", "--suite", "shout", "--n", "3", "--p", "5", "--N", "1",
    ]);
    assert!(out.status.success(), "{}", stdout(&out));
    let out = run(&[
        "verify", "--suite", "oracle", "--n", "2", "--p", "3", "--N", "2",
    ]);
    assert!(out.status.success(), "{}", stdout(&out));
    let out = run(&["verify", "--suite", "zeta"]);
    assert!(out.status.success());
    assert!(stdout(&out).lines().all(|l| !l.starts_with("FAIL")));
}

#[test]
fn verify_json_matches_schema() {
    let v = json(&[
        "verify", "--suite", "counting", "--n", "3", "--p", "5", "--N", "1", "--format", "json",
    ]);
    assert_schema("verify.schema.json", &v);
    assert_eq!(v["passed"], true);
}

#[test]
fn table_rows() {
    let out = stdout(&run(&["table", "--n", "3", "--p", "5", "--max-N", "2"]));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "n\tp\tN\tr_enum\tr_closed\tr_series\tagree");
    assert_eq!(lines.len(), 4);
    assert!(lines[3].ends_with("56\t56\t56\tyes"));

    let out = stdout(&run(&["table", "--n", "2", "--p", "2", "--max-N", "3"]));
    let r: Vec<&str> = out
        .lines()
        .skip(1)
        .map(|l| l.split('\t').nth(3).unwrap())
        .collect();
    assert_eq!(r, ["1", "1", "2", "4"]);

    let out = stdout(&run(&["table", "--n", "2", "--p", "2", "--max-N", "0"]));
    assert_eq!(
        out,
        "n\tp\tN\tr_enum\tr_closed\tr_series\tagree\n2\t2\t0\t1\t1\t1\tyes\n"
    );
}

#[test]
fn table_records_errors_and_continues() {
    let out = run(&[
        "table", "--n", "3", "--p", "5", "--max-N", "3", "--budget", "1000",
    ]);
    assert!(!out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].ends_with("\terror"));
    assert_eq!(lines.len(), 5);
    assert!(lines[3].ends_with("yes\t"));
    assert!(lines[4].contains("budget"));
}

#[test]
fn dump_matches_schema() {
    let v = json(&[
        "dump", "--n", "3", "--p", "5", "--N", "1", "--lambda", "0,1,1",
    ]);
    assert_schema("dump.schema.json", &v);
    assert_eq!(v["rows"][0], serde_json::json!([0, 2, 0, 4, 4]));
    let out = run(&[
        "dump", "--n", "3", "--p", "5", "--N", "1", "--lambda", "1,1,1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}
