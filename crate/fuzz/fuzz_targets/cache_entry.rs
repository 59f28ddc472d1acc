//! Cache entry decoder: arbitrary bytes never panic, and decoded entries
//! survive a JSON round trip.
#![no_main]

use interlang_gateway::CacheEntry;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(entry) = serde_json::from_slice::<CacheEntry>(data) {
        let text = serde_json::to_string(&entry).expect("entry serializes");
        let back: CacheEntry = serde_json::from_str(&text).expect("entry reparses");
        assert_eq!(back, entry);
    }
});
