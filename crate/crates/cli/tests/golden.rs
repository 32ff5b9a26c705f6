//! Byte-for-byte comparison against recorded outputs. Set
//! `GREENSEQ_BLESS=1` to rewrite the recordings.

mod common;

use common::{Case, CASES};

#[test]
fn outputs_match_golden_files() {
    let bless = std::env::var_os("GREENSEQ_BLESS").is_some();
    let mut mismatches = Vec::new();
    for case in CASES {
        let result = case.run();
        assert_eq!(result.exit_code, case.exit, "{}: {}", case.name, result.stderr);
        let text = Case::render(&result);
        let path = case.golden_path();
        if bless {
            std::fs::write(&path, &text).unwrap();
            continue;
        }
        let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
        if expected != text {
            mismatches.push(case.name);
        }
    }
    assert!(mismatches.is_empty(), "golden mismatches: {mismatches:?}");
}

#[test]
fn repeated_runs_are_identical() {
    for case in CASES {
        let (a, b) = (case.run(), case.run());
        assert_eq!(a, b, "{}", case.name);
    }
}
