//! Chain-rule parser: arbitrary text never panics.
#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    let _ = interlang_core::rules::parse_rules(text);
});
