#![no_main]

use libfuzzer_sys::fuzz_target;
use normkeep_harness::run::run_checks;
use normkeep_harness::scenario::parse_scenario;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(sc) = parse_scenario(text) {
            // Keep runs short: only small scenarios are executed.
            if text.len() < 2048 {
                let _ = run_checks(&sc);
            }
        }
    }
});
