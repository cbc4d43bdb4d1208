use normkeep::Tolerance;
use normkeep_harness::cli::parse_vector_arg;
use normkeep_harness::scenario::parse_scenario;
use normkeep_harness::search::{replay, run_search, Evaluation, SearchOptions};
use proptest::prelude::*;

proptest! {
    #[test]
    fn vector_arguments_round_trip(v in prop::collection::vec(-1e6f64..1e6, 1..8), brackets: bool, spaces: bool) {
        let sep = if spaces { " " } else { "," };
        let body = v.iter().map(|x| format!("{x:?}")).collect::<Vec<_>>().join(sep);
        let text = if brackets { format!("[{body}]") } else { body };
        prop_assert_eq!(parse_vector_arg(&text).unwrap(), v);
    }

    #[test]
    fn vector_parser_never_panics(text in ".{0,40}") {
        let _ = parse_vector_arg(&text);
    }

    #[test]
    fn scenario_parser_never_panics(text in ".{0,200}") {
        let _ = parse_scenario(&text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn findings_replay_from_their_fingerprint(seed in 0u64..1000) {
        let opts = SearchOptions { trials: 200, seed, max_findings: 1, ..SearchOptions::default() };
        let report = run_search("norm-sandwich-without-convergence", &opts).unwrap();
        for f in &report.findings {
            let (_, eval) = replay(&f.fingerprint, Tolerance::default()).unwrap();
            match eval {
                Evaluation::Violated { magnitude, .. } => prop_assert_eq!(magnitude.to_bits(), f.magnitude.to_bits()),
                other => prop_assert!(false, "replay gave {:?}", other),
            }
        }
    }
}
