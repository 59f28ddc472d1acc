//! TOML experiment config loader: arbitrary text never panics.
#![no_main]

use std::path::Path;

use interlang_harness::ExperimentConfig;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    if let Ok(cfg) = ExperimentConfig::from_toml(text, Path::new(".")) {
        let _ = cfg.cells();
    }
});
