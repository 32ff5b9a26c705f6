mod common;

use common::{data, greenseq, schema_dir};
use serde_json::Value;

fn validator(name: &str) -> jsonschema::Validator {
    let path = schema_dir().join(format!("{name}.json"));
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn check(schema: &str, doc: &str) {
    let v = validator(schema);
    let value: Value = serde_json::from_str(doc).unwrap_or_else(|e| panic!("{schema}: {e}\n{doc}"));
    if let Err(e) = v.validate(&value) {
        panic!("{schema}: {e}\n{doc}");
    }
}

fn stdout(args: &[&str]) -> String {
    let r = greenseq(args);
    assert!(r.exit_code <= 1, "{args:?}: {}", r.stderr);
    r.stdout
}

#[test]
fn single_documents_validate() {
    let brick = data("modules/a2_brick.rep");
    let bad = data("modules/a2_relations_fail.rep");
    let double = data("modules/a2_double_f3.rep");
    let kron_module = data("modules/kronecker_brick.rep");
    let kron = data("quivers/kronecker.qv");
    let cases: Vec<(&str, Vec<&str>)> = vec![
        ("quiver_info", vec!["quiver", "info", "E6"]),
        ("quiver_info", vec!["quiver", "info", &kron]),
        ("roots_list", vec!["roots", "list", "D5", "--json"]),
        ("mgs_validate", vec!["mgs", "validate", "A2", "--roots", "1,0;0,1;1,1"]),
        ("mgs_validate", vec!["mgs", "validate", "A2", "--roots", "1,0;1,1;0,1"]),
        ("mgs_validate", vec!["mgs", "validate", "A2", "--roots", "1,0", "--prefix"]),
        ("mgs_validate", vec!["mgs", "validate", "A2", "--roots", "1,0;1,0"]),
        ("mgs_validate", vec!["mgs", "validate", "A2", "--roots", "1,0;1,1"]),
        ("mgs_validate", vec!["mgs", "validate", "A2", "--roots", "2,0"]),
        ("mgs_from_charge", vec!["mgs", "from-charge", "A3", "--charge", "s1=-2,1;s2=0,1;s3=1,1"]),
        ("torsion_lattice", vec!["torsion", "lattice", "A3", "--json"]),
        ("check_opposite", vec!["torsion", "check-opposite", "D4"]),
        ("modlab_check", vec!["modlab", "check", &brick, "--charge", "s1=-1,1;s2=1,1"]),
        ("modlab_check", vec!["modlab", "check", &bad]),
        ("modlab_check", vec!["modlab", "check", &double, "--charge", "s1=-1,1;s2=1,1"]),
        ("modlab_check", vec!["modlab", "check", &kron_module]),
    ];
    for (schema, args) in cases {
        check(schema, &stdout(&args));
    }
}

#[test]
fn streams_validate_line_by_line() {
    for args in [
        vec!["weyl", "chains", "A3", "--json"],
        vec!["weyl", "chains", "D4", "--json", "--limit", "5"],
        vec!["mgs", "enumerate", "A3", "--json"],
        vec!["mgs", "enumerate", "E6", "--json", "--limit", "3"],
    ] {
        let out = stdout(&args);
        assert!(out.lines().count() >= 2);
        for line in out.lines() {
            check("sequence_stream_line", line);
        }
    }
}

#[test]
fn schemas_reject_wrong_shapes() {
    let v = validator("sequence_stream_line");
    assert!(v.validate(&serde_json::json!({ "word": [0], "roots": [] })).is_err());
    assert!(v.validate(&serde_json::json!({ "count": 1 })).is_err());
    let v = validator("quiver_info");
    assert!(v.validate(&serde_json::json!({})).is_err());
}
