mod support;

use proptest::prelude::*;

use interlang_core::fol::{parse_fol, parse_formula, render_formula, Dialect, SymbolKind};
use support::gen;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn render_then_parse_is_identity(seed in any::<u64>()) {
        let mut r = gen::rng(seed);
        let f = gen::roundtrip_formula(&mut r, 5);
        for d in [Dialect::UnicodeFol, Dialect::AsciiFol] {
            let text = render_formula(&f, d);
            let back = parse_formula(&text, d);
            prop_assert_eq!(back.as_ref(), Ok(&f), "{} text: {}", d, text);
        }
    }

    #[test]
    fn parsing_is_deterministic(text in "[A-Za-z(),∀∃¬∧∨→↔ .&|>-]{0,40}") {
        for d in [Dialect::UnicodeFol, Dialect::AsciiFol] {
            let a = parse_fol(&text, d);
            let b = parse_fol(&text, d);
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn successful_parses_have_one_arity_per_symbol(seed in any::<u64>()) {
        let mut r = gen::rng(seed);
        let lines: Vec<String> = (0..4).map(|_| render_formula(&gen::roundtrip_formula(&mut r, 4), Dialect::UnicodeFol)).collect();
        let text = lines.join("\n");
        if let Ok(p) = parse_fol(&text, Dialect::UnicodeFol) {
            let mut arities = std::collections::BTreeMap::new();
            for f in &p.premises {
                for a in f.atoms() {
                    let prev = arities.insert(a.predicate.clone(), a.arity());
                    prop_assert!(prev.is_none_or(|n| n == a.arity()));
                }
            }
            for (name, n) in arities {
                let info = p.signature.get(&name).unwrap();
                prop_assert_eq!(info.kind, SymbolKind::Predicate);
                prop_assert_eq!(info.arity, n);
            }
        }
    }
}
