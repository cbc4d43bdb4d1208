#![no_main]

use libfuzzer_sys::fuzz_target;
use normkeep_harness::cli::parse_vector_arg;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(v) = parse_vector_arg(text) {
            assert!(!v.is_empty());
            assert!(v.iter().all(|x| x.is_finite()));
        }
    }
});
