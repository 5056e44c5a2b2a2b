//! Black-box checks of the command-line binary: the exit-code contract,
//! one-line diagnostics, output formats, and conformance of every JSON
//! document to the shipped schema.

use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_curvelab")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().unwrap()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

// ---------------------------------------------------------------------
// A small JSON-schema checker covering exactly the keywords the shipped
// schema uses: type (single or alternatives), const, enum, minimum,
// required, properties, additionalProperties, items, allOf, if/then and
// $ref into definitions.

fn type_matches(name: &str, v: &Value) -> bool {
    match name {
        "object" => v.is_object(),
        "array" => v.is_array(),
        "string" => v.is_string(),
        "boolean" => v.is_boolean(),
        "null" => v.is_null(),
        "number" => v.is_number(),
        "integer" => v.is_i64() || v.is_u64(),
        _ => false,
    }
}

fn validate(schema: &Value, root: &Value, value: &Value, path: &str) -> Result<(), String> {
    if let Some(r) = schema.get("$ref").and_then(Value::as_str) {
        let pointer = r
            .strip_prefix('#')
            .ok_or_else(|| format!("{path}: unsupported $ref {r}"))?;
        let target = root
            .pointer(pointer)
            .ok_or_else(|| format!("{path}: dangling $ref {r}"))?;
        return validate(target, root, value, path);
    }
    if let Some(t) = schema.get("type") {
        let ok = match t {
            Value::String(name) => type_matches(name, value),
            Value::Array(alts) => alts
                .iter()
                .filter_map(Value::as_str)
                .any(|name| type_matches(name, value)),
            _ => return Err(format!("{path}: malformed type keyword {t}")),
        };
        if !ok {
            return Err(format!("{path}: {value} does not have type {t}"));
        }
    }
    if let Some(c) = schema.get("const") {
        if c != value {
            return Err(format!("{path}: {value} differs from const {c}"));
        }
    }
    if let Some(options) = schema.get("enum").and_then(Value::as_array) {
        if !options.contains(value) {
            return Err(format!("{path}: {value} not among {options:?}"));
        }
    }
    if let Some(m) = schema.get("minimum").and_then(Value::as_f64) {
        if let Some(x) = value.as_f64() {
            if x < m {
                return Err(format!("{path}: {x} under minimum {m}"));
            }
        }
    }
    if let Some(req) = schema.get("required").and_then(Value::as_array) {
        if let Some(obj) = value.as_object() {
            for key in req.iter().filter_map(Value::as_str) {
                if !obj.contains_key(key) {
                    return Err(format!("{path}: missing required key {key}"));
                }
            }
        }
    }
    if let Some(props) = schema.get("properties").and_then(Value::as_object) {
        if let Some(obj) = value.as_object() {
            for (key, sub) in props {
                if let Some(v) = obj.get(key) {
                    validate(sub, root, v, &format!("{path}/{key}"))?;
                }
            }
            if schema.get("additionalProperties") == Some(&Value::Bool(false)) {
                for key in obj.keys() {
                    if !props.contains_key(key) {
                        return Err(format!("{path}: unexpected key {key}"));
                    }
                }
            }
        }
    }
    if let Some(items) = schema.get("items") {
        if let Some(arr) = value.as_array() {
            for (i, v) in arr.iter().enumerate() {
                validate(items, root, v, &format!("{path}[{i}]"))?;
            }
        }
    }
    if let Some(all) = schema.get("allOf").and_then(Value::as_array) {
        for (i, sub) in all.iter().enumerate() {
            validate(sub, root, value, &format!("{path}<allOf {i}>"))?;
        }
    }
    if let (Some(cond), Some(then)) = (schema.get("if"), schema.get("then")) {
        if validate(cond, root, value, path).is_ok() {
            validate(then, root, value, path)?;
        }
    }
    Ok(())
}

fn shipped_schema() -> Value {
    let text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/../../schemas/output.schema.json"
    ))
    .expect("schema file ships with the repository");
    serde_json::from_str(&text).unwrap()
}

fn assert_valid(doc: &Value) {
    let schema = shipped_schema();
    if let Err(e) = validate(&schema, &schema, doc, "$") {
        panic!("schema violation: {e}\ndocument: {doc:#}");
    }
}

// ---------------------------------------------------------------------
// Worked examples.

#[test]
fn length_example_matches_figure_eight() {
    let out = run(&["length", "--surface", "0,3", "--word", "aB"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    let got = doc["result"]["length"].as_f64().unwrap();
    assert!((got - 3.525494).abs() < 1e-6, "length {got}");
    assert_valid(&doc);
}

#[test]
fn criterion_example_is_unbounded_with_exit_zero() {
    let out = run(&[
        "criterion", "--surface", "1,1", "--multicurve", "1/0,0/1", "--depth", "6",
    ]);
    assert_eq!(out.status.code(), Some(0), "exhaustive verdicts exit 0");
    let doc = json_of(&out);
    assert_eq!(doc["result"]["verdict"], "UNBOUNDED");
    assert_valid(&doc);
}

// ---------------------------------------------------------------------
// Exit-code contract.

#[test]
fn unknown_subcommand_is_an_input_error() {
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert_eq!(err.trim().lines().count(), 1, "one-line diagnostic: {err}");
    assert!(err.contains("frobnicate"), "diagnostic names the token: {err}");
}

#[test]
fn malformed_word_names_the_offending_letter() {
    let out = run(&["length", "--surface", "0,3", "--word", "a$"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains('$'), "diagnostic names the token: {err}");
}

#[test]
fn slope_tokens_are_rejected_off_the_punctured_torus() {
    let out = run(&["intersect", "--surface", "0,3", "--multicurve", "1/2"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("1/2"), "diagnostic names the token: {err}");
}

#[test]
fn uncertified_count_exits_three_with_result() {
    // The count of this twisted image against `ac` plateaus at 1 within
    // radius 2 but has the wrong homological parity, so it must be
    // reported uncertified.
    let out = run(&[
        "intersect", "--surface", "2,0", "--multicurve", "abaBACACAcac", "--multicurve", "ac",
        "--radius", "2",
    ]);
    assert_eq!(out.status.code(), Some(3), "honest uncertainty exits 3");
    let doc = json_of(&out);
    assert_eq!(doc["result"]["certified"], Value::Bool(false));
    assert_valid(&doc);
}

#[test]
fn degenerate_length_exits_four() {
    let out = run(&["length", "--surface", "1,1", "--lengths", "0.00001", "--word", "a"]);
    assert_eq!(out.status.code(), Some(4));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("NUMERIC_DEGENERACY"), "{err}");
}

#[test]
fn invalid_thread_cap_is_an_input_error() {
    let out = Command::new(bin())
        .args(["length", "--surface", "0,3", "--word", "aB"])
        .env("CURVELAB_THREADS", "abc")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("CURVELAB_THREADS"), "{err}");
}

// ---------------------------------------------------------------------
// Output formats.

#[test]
fn csv_outputs_carry_a_header_line() {
    for args in [
        vec!["pinch-probe", "--preset", "bounded-slope"],
        vec![
            "thick-sample", "--surface", "1,1", "--epsilon", "0.5", "--count", "3", "--seed",
            "7", "--format", "csv",
        ],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        let text = String::from_utf8(out.stdout).unwrap();
        let first = text.lines().next().unwrap();
        assert!(
            first.starts_with("# curvelab 0.1.0"),
            "header line missing for {args:?}: {first}"
        );
        assert!(first.contains("seed") || first.contains("preset"), "{first}");
    }
}

#[test]
fn every_subcommand_emits_schema_conformant_json() {
    let invocations: &[&[&str]] = &[
        &["length", "--surface", "1,1", "--multicurve", "max:1/0,0/1"],
        &["systole", "--surface", "2,0"],
        &["intersect", "--surface", "1,1", "--multicurve", "2/3"],
        &["intersect", "--surface", "1,1", "--multicurve", "2/3", "--multicurve", "1/0"],
        &["orbit-min", "--surface", "1,1", "--multicurve", "1/2", "--depth", "4"],
        &["criterion", "--preset", "separating-curve"],
        &["pinch-probe", "--preset", "bounded-slope", "--format", "json"],
        &["bers", "--surface", "2,0", "--budget", "4"],
        &["homology-basis", "--surface", "2,0", "--budget", "4"],
        &["thick-sample", "--surface", "2,0", "--epsilon", "0.5", "--count", "3", "--seed", "11"],
        &[
            "empirical-k", "--surface", "1,1", "--multicurve", "1/0,0/1", "--epsilon", "0.5",
            "--count", "3", "--seed", "3", "--depth", "3",
        ],
        &["selftest"],
    ];
    for args in invocations {
        let out = run(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert_valid(&json_of(&out));
    }
}
