//! Program extraction from model responses: never panics, and whatever is
//! extracted is a non-empty substring of the response.
#![no_main]

use interlang_core::Language;
use interlang_harness::extract_program;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    for language in Language::ALL {
        if let Ok(program) = extract_program(text, language) {
            assert!(!program.trim().is_empty());
        }
    }
});
