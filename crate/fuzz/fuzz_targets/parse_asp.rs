//! ASP parser and grounder: arbitrary text never panics.
#![no_main]

use interlang_core::asp::{ground_with_limit, parse_asp};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    if let Ok(program) = parse_asp(text) {
        let _ = ground_with_limit(&program.rules, 10_000);
    }
});
