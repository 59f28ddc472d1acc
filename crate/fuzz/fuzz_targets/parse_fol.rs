//! Unicode FOL parser: never panics, and every parsed formula survives a
//! render and reparse unchanged.
#![no_main]

use interlang_core::fol::{parse_fol, parse_formula, render_formula, Dialect};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    if let Ok(program) = parse_fol(text, Dialect::UnicodeFol) {
        for f in program.premises.iter().chain(program.query.iter()) {
            let rendered = render_formula(f, Dialect::UnicodeFol);
            let back = parse_formula(&rendered, Dialect::UnicodeFol).expect("rendered formula reparses");
            assert_eq!(&back, f);
        }
    }
});
