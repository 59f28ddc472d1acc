//! Baseline answer extraction: total on arbitrary text, and never Unknown
//! under the closed-world assumption.
#![no_main]

use interlang_core::{Assumption, Verdict};
use interlang_harness::extract_baseline_answer;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    assert_ne!(extract_baseline_answer(text, Assumption::Cwa), Verdict::Unknown);
    let _ = extract_baseline_answer(text, Assumption::Owa);
});
