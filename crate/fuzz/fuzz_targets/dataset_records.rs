//! JSONL dataset loader: arbitrary text never panics for any dataset.
#![no_main]

use interlang_harness::{parse_records, DatasetId};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    for id in DatasetId::ALL {
        let _ = parse_records(text, id);
    }
});
