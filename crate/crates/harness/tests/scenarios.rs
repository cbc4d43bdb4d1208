use normkeep_harness::run::{run_checks, CheckStatus};
use normkeep_harness::scenario::parse_scenario;

fn codes(text: &str) -> String {
    parse_scenario(text).map(|_| String::new()).unwrap_or_else(|e| e.code().to_string())
}

#[test]
fn unresolved_names_are_reported() {
    let text = r#"{
        "schema_version": 1,
        "pairs": { "p": { "kind": "spaces", "x": "X", "y": "Y" } }
    }"#;
    assert_eq!(codes(text), "unresolved_name");
}

#[test]
fn version_and_fields_are_checked() {
    assert_ne!(codes(r#"{ "schema_version": 2 }"#), "");
    assert_ne!(codes(r#"{ "schema_version": 1, "bogus": 3 }"#), "");
    assert_ne!(codes("not json"), "");
    assert_eq!(codes(r#"{ "schema_version": 1 }"#), "");
}

#[test]
fn checks_need_their_arguments() {
    let text = r#"{
        "schema_version": 1,
        "spaces": { "Y": { "kind": "euclidean", "dim": 2 } },
        "pairs": { "p": { "kind": "spaces", "x": "Y", "y": "Y" } },
        "checks": [ { "checker": "check_lh", "pair": "p" } ]
    }"#;
    assert_ne!(codes(text), "");
    let unknown = r#"{
        "schema_version": 1,
        "checks": [ { "checker": "no_such_checker" } ]
    }"#;
    assert_ne!(codes(unknown), "");
}

#[test]
fn infinite_exponent_and_expected_errors() {
    let text = r#"{
        "schema_version": 1,
        "spaces": {
            "Y": { "kind": "p", "dim": 2, "p": "inf" },
            "Z": { "kind": "euclidean", "dim": 3 }
        },
        "pairs": { "p": { "kind": "spaces", "x": "Y", "y": "Y" } },
        "elements": { "f": [1.0, -2.0], "g": [1.0, 2.0, 3.0] },
        "checks": [
            { "checker": "check_lh", "pair": "p", "element": "f", "expect": "in_lh" },
            { "checker": "check_lh", "pair": "p", "element": "g", "expect": "dim_mismatch" }
        ]
    }"#;
    let sc = parse_scenario(text).unwrap();
    let report = run_checks(&sc);
    assert!(report.checks.iter().all(|c| c.status == CheckStatus::Pass), "{report:#?}");
    assert_eq!(report.checks[0].detail["norm_y"], 2.0);
}

#[test]
fn bochner_space_from_scenario() {
    let text = r#"{
        "schema_version": 1,
        "spaces": {
            "R": { "kind": "euclidean", "dim": 1 },
            "B": { "kind": "bochner", "target": "R", "weights": [1.0, 3.0], "p": 2 }
        },
        "elements": { "f": [2.0, 1.0] },
        "checks": [ { "checker": "verify_norm_axioms", "space": "B", "samples": 50, "expect": "norm" } ]
    }"#;
    let report = run_checks(&parse_scenario(text).unwrap());
    assert_eq!(report.passed, 1, "{report:#?}");
}
