use normkeep_harness::cli::run_cli;
use normkeep_harness::error::{EXIT_CONFIG, EXIT_FAILURE, EXIT_OK};
use serde_json::Value;

fn scenario(name: &str) -> String {
    format!("{}/scenarios/{name}.json", env!("CARGO_MANIFEST_DIR"))
}

fn machine(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["normkeep"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--format", "machine"]);
    let out = run_cli(full);
    assert!(out.stderr.is_empty(), "stderr: {}", out.stderr);
    (out.code, serde_json::from_str(&out.stdout).expect("machine output is JSON"))
}

#[test]
fn bundled_scenarios_pass() {
    for name in ["r_in_c", "lip3", "lhw_only", "renorm_line"] {
        let (code, v) = machine(&["check", &scenario(name)]);
        assert_eq!(code, EXIT_OK, "{name}: {v:#}");
        assert_eq!(v["report"]["failed"], 0);
        assert_eq!(v["report"]["errors"], 0);
    }
}

#[test]
fn wrong_expectation_exits_one() {
    let (code, v) = machine(&["check", &scenario("wrong_expectation")]);
    assert_eq!(code, EXIT_FAILURE);
    assert_eq!(v["report"]["checks"][0]["outcome"], "not_in_lh");
}

#[test]
fn empty_scenario_is_header_only() {
    let out = run_cli(["normkeep", "check", &scenario("empty")]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout.lines().count(), 1);
}

#[test]
fn missing_file_is_a_config_error() {
    let out = run_cli(["normkeep", "check", "/nonexistent/scenario.json"]);
    assert_eq!(out.code, EXIT_CONFIG);
    assert!(!out.stderr.is_empty());
}

#[test]
fn project_real_axis() {
    let (code, v) = machine(&["project", &scenario("r_in_c"), "--set", "R", "--point", "3,4"]);
    assert_eq!(code, EXIT_OK);
    let p = &v["report"]["projection"];
    assert_eq!(p["distance"], 4.0);
    assert_eq!(p["minimizers"]["points"][0][0], 3.0);
    assert_eq!(p["minimizers"]["points"][0][1], 0.0);
}

#[test]
fn project_rejects_bad_input() {
    let out = run_cli(["normkeep", "project", &scenario("r_in_c"), "--set", "nope", "--point", "1,2"]);
    assert_eq!(out.code, EXIT_CONFIG);
    assert!(out.stderr.contains("unresolved_name"), "{}", out.stderr);
    let out = run_cli(["normkeep", "project", &scenario("r_in_c"), "--set", "R", "--point", "1,2,3"]);
    assert_eq!(out.code, EXIT_CONFIG, "{}", out.stderr);
    let out = run_cli(["normkeep", "project", &scenario("r_in_c"), "--set", "R", "--point", "[1,x]"]);
    assert_eq!(out.code, EXIT_CONFIG);
}

#[test]
fn renorm_command() {
    let (code, v) = machine(&["renorm", &scenario("renorm_line"), "--set", "axis", "--samples", "50"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["report"]["passed"], true);
    let human = run_cli(["normkeep", "renorm", &scenario("renorm_line"), "--set", "axis", "--samples", "50"]);
    assert_eq!(human.code, EXIT_OK);
    assert!(human.stdout.contains("passed"));
}

#[test]
fn tolerance_overrides_reach_the_report() {
    let (_, v) = machine(&["check", &scenario("lhw_only"), "--tol-rel", "1e-6", "--tol-abs", "1e-10"]);
    assert_eq!(v["report"]["tolerance"]["rel"], 1e-6);
    assert_eq!(v["report"]["tolerance"]["abs"], 1e-10);
    let out = run_cli(["normkeep", "check", &scenario("lhw_only"), "--tol-rel", "-1"]);
    assert_eq!(out.code, EXIT_CONFIG);
}

#[test]
fn search_sound_and_mutant() {
    let (code, v) = machine(&["search", "lh-subset-lhw", "--trials", "200", "--seed", "3"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["report"]["violations"], 0);
    let (code, v) = machine(&["search", "norm-sandwich-without-convergence", "--trials", "400", "--seed", "3"]);
    assert_eq!(code, EXIT_FAILURE);
    assert!(v["report"]["findings"].as_array().is_some_and(|f| !f.is_empty()));
}

#[test]
fn search_zero_trials_is_rejected() {
    let out = run_cli(["normkeep", "search", "lh-subset-lhw", "--trials", "0"]);
    assert_eq!(out.code, EXIT_CONFIG);
}

#[test]
fn statements_listing() {
    let (code, v) = machine(&["statements"]);
    assert_eq!(code, EXIT_OK);
    let ids: Vec<&str> = v["report"].as_array().unwrap().iter().map(|s| s["id"].as_str().unwrap()).collect();
    assert!(ids.contains(&"induced-renorm"));
    assert!(ids.contains(&"norm-sandwich-without-convergence"));
}

#[test]
fn machine_reports_repeat_byte_for_byte() {
    let args = ["normkeep", "check", &scenario("r_in_c"), "--format", "machine"];
    assert_eq!(run_cli(args).stdout, run_cli(args).stdout);
    let args = ["normkeep", "search", "induced-renorm", "--trials", "50", "--format", "machine"];
    assert_eq!(run_cli(args).stdout, run_cli(args).stdout);
}

#[test]
fn help_exits_zero() {
    let out = run_cli(["normkeep", "--help"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("search"));
}
