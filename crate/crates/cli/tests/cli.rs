use std::process::{Command, Output};

use serde_json::Value;

fn doublet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_doublet")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = doublet(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn smatrix_markdown_has_labeled_rows() {
    let out = doublet(&["smatrix", "S3", "--format", "md"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("| (e,0) | 1/6 | 1/6 | 1/3 | 1/3 | 1/3 | 1/3 | 1/2 | 1/2 |"));
    assert!(text.contains("| ((12),1) | 1/2 | -1/2 | 0 | 0 | 0 | 0 | -1/2 | 1/2 |"));
}

#[test]
fn document_envelope_and_cyclotomic_encoding() {
    let doc = json(&["tmatrix", "S3"]);
    assert_eq!(doc["schemaVersion"], "1.0");
    assert_eq!(doc["command"], "tmatrix");
    let diag = doc["payload"]["diagonal"].as_array().unwrap();
    assert_eq!(diag.len(), 8);
    assert_eq!(diag[4]["display"], "ω");
    assert_eq!(diag[4]["conductor"], 3);
    assert_eq!(diag[7]["display"], "-1");
    assert_eq!(diag[7]["coeffs"], serde_json::json!(["-1/1"]));
}

#[test]
fn invariants_of_s3_squared() {
    let doc = json(&["invariants", "S3", "S3"]);
    let items = doc["payload"]["invariants"].as_array().unwrap();
    assert_eq!(items.len(), 28);
    let zs: Vec<&str> = items.iter().map(|i| i["partitionFunction"].as_str().unwrap()).collect();
    assert!(zs.contains(&"|χ0+χ3+χ6|^2"));
    assert!(zs.contains(&"|χ0|^2+|χ1|^2+|χ2|^2+|χ3|^2+|χ4|^2+|χ5|^2+|χ6|^2+|χ7|^2"));
    let single = json(&["invariants", "S3"]);
    assert_eq!(single["payload"]["count"], 28);
}

#[test]
fn dw_lens_space() {
    let doc = json(&["dw", "S3", "L(2)"]);
    assert_eq!(doc["payload"]["invariant"], "2/3");
    assert_eq!(doc["payload"]["homomorphisms"], 4);
    let lit = json(&["dw", "C2", "<2; x1 x2 x1^-1 x2^-1>"]);
    assert_eq!(lit["payload"]["invariant"], "2/1");
}

#[test]
fn graph_and_equivalences() {
    let g = json(&["graph", "S3", "S3"]);
    assert_eq!(g["payload"]["vertexCount"], 8);
    assert_eq!(g["payload"]["edgeCount"], 28);
    assert_eq!(g["payload"]["components"].as_array().unwrap().len(), 4);
    let e = json(&["equivalences", "C2", "C2"]);
    assert_eq!(e["payload"]["count"], 2);
}

#[test]
fn output_is_byte_deterministic() {
    for args in [&["algebras", "S3"][..], &["parents", "S3", "C2", "--format", "csv"], &["characters", "D4"]] {
        assert_eq!(doublet(args).stdout, doublet(args).stdout, "{args:?}");
    }
}

#[test]
fn verify_flag_passes_on_catalog_groups() {
    for g in ["S3", "D4", "Q8", "C2xC2"] {
        let out = doublet(&["verify", g]);
        assert!(out.status.success(), "{g}: {}", String::from_utf8_lossy(&out.stderr));
    }
    assert!(doublet(&["algebras", "S3", "--verify"]).status.success());
    assert!(doublet(&["simples", "C3", "--verify", "--format", "csv"]).status.success());
}

#[test]
fn exit_codes() {
    assert_eq!(doublet(&["smatrix", "NotAGroup"]).status.code(), Some(2));
    assert_eq!(doublet(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(doublet(&["dw", "S3", "<1; x3>"]).status.code(), Some(2));
    let cap = doublet(&["algebras", "C100"]);
    assert_eq!(cap.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&cap.stderr).contains("cap is 64"));
}

/// Walks the `required` lists of the shipped schema (objects and arrays only).
fn check_required(schema: &Value, defs: &Value, value: &Value, path: &str) {
    if let Some(r) = schema["$ref"].as_str() {
        let name = r.rsplit('/').next().unwrap();
        return check_required(&defs[name], defs, value, path);
    }
    for key in schema["required"].as_array().into_iter().flatten() {
        let key = key.as_str().unwrap();
        assert!(value.get(key).is_some(), "{path}: missing `{key}`");
        check_required(&schema["properties"][key], defs, &value[key], &format!("{path}.{key}"));
    }
    if let (Some(items), Some(first)) = (schema.get("items"), value.as_array().and_then(|a| a.first())) {
        check_required(items, defs, first, &format!("{path}[0]"));
    }
}

#[test]
fn outputs_carry_the_fields_the_schema_requires() {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../docs/schema.json")).unwrap();
    let schema: Value = serde_json::from_str(&text).unwrap();
    let defs = &schema["$defs"];
    let runs: [&[&str]; 11] = [
        &["simples", "S3"],
        &["smatrix", "S3"],
        &["tmatrix", "S3"],
        &["characters", "S3"],
        &["algebras", "S3"],
        &["verify", "S3"],
        &["invariants", "S3", "C2"],
        &["parents", "S3", "C2"],
        &["equivalences", "C2", "C2"],
        &["graph", "S3", "C2"],
        &["dw", "S3", "L(3)"],
    ];
    for args in runs {
        let doc = json(args);
        check_required(&schema, defs, &doc, args[0]);
        check_required(&defs[args[0]], defs, &doc["payload"], args[0]);
    }
}
