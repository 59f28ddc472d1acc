//! Chat completion decoder: arbitrary response bodies never panic.
#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|body: &str| {
    let _ = interlang_gateway::decode_completion(body);
});
