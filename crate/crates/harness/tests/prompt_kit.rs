//! Prompt construction and extraction properties.

use interlang_core::{solve_program, Answer, Language, SolverLimits};
use interlang_harness::prompt::{example_labels, shipped_answer_example, shipped_example, PromptError};
use interlang_harness::{build_prompt, extract_program, generate_synthetic, DatasetId, Method, PromptStyle, ReasoningProblem};
use proptest::prelude::*;

fn problem_for(dataset: DatasetId) -> ReasoningProblem {
    let mut p = generate_synthetic(3, 2, 9).remove(1);
    p.dataset = dataset;
    p.assumption = dataset.assumption();
    p
}

#[test]
fn every_shipped_example_executes_to_its_label() {
    let limits = SolverLimits::default();
    let mut checked = 0;
    for dataset in DatasetId::ALL {
        for language in Language::ALL {
            let Some(ex) = shipped_example(dataset, language) else {
                assert!(!dataset.supports(language), "{dataset}/{language} has no example");
                continue;
            };
            let program = extract_program(&ex.translation, language).unwrap();
            let report = solve_program(&program, language, dataset.assumption(), &limits)
                .unwrap_or_else(|e| panic!("{dataset}/{language}: {e}"));
            assert_eq!(report.answer, Answer::Verdict(ex.label), "{dataset}/{language}");
            checked += 1;
        }
        for cot in [false, true] {
            let ex = shipped_answer_example(dataset, cot);
            assert_eq!(ex.reasoning.is_some(), cot);
        }
    }
    assert_eq!(checked, 14);
}

#[test]
fn styles_change_only_the_wrapping() {
    for dataset in DatasetId::ALL {
        let p = problem_for(dataset);
        for method in Method::ALL.into_iter().filter(|m| m.supports(dataset)) {
            let labels = example_labels(method.mode());
            let mut reference: Option<(String, String, Vec<String>)> = None;
            for style in PromptStyle::all() {
                let b = build_prompt(&p, method, style).unwrap();
                let payload = style.unwrap(&b.example, labels).unwrap_or_else(|| panic!("style {style} does not unwrap"));
                let frame = b.user.replacen(&b.example, "<EXAMPLE>", 1);
                let current = (b.system.clone(), frame, payload);
                match &reference {
                    None => reference = Some(current),
                    Some(r) => assert_eq!(r, &current, "{dataset}/{method} style {style}"),
                }
            }
        }
    }
}

#[test]
fn prompts_are_deterministic_and_distinct_per_style() {
    let p = problem_for(DatasetId::Prontoqa);
    let hashes: Vec<String> = PromptStyle::all().map(|s| build_prompt(&p, Method::Asp, s).unwrap().hash()).collect();
    let again: Vec<String> = PromptStyle::all().map(|s| build_prompt(&p, Method::Asp, s).unwrap().hash()).collect();
    assert_eq!(hashes, again);
    let mut unique = hashes.clone();
    unique.sort();
    unique.dedup();
    assert_eq!(unique.len(), 8);
}

#[test]
fn neurosymbolic_prompts_embed_one_translation_example() {
    let p = problem_for(DatasetId::Proofwriter);
    for method in Method::ALL {
        let b = build_prompt(&p, method, PromptStyle::new(1).unwrap()).unwrap();
        assert_eq!(b.user.matches("Translation:\n").count(), usize::from(!method.is_baseline()), "{method}");
        assert!(b.user.contains(&p.premises) && b.user.contains(&p.question));
    }
}

#[test]
fn folio_refuses_logic_programming_languages() {
    let p = problem_for(DatasetId::Folio);
    for method in [Method::Asp, Method::Pyke] {
        let err = build_prompt(&p, method, PromptStyle::new(3).unwrap()).unwrap_err();
        assert!(matches!(err, PromptError::IncompatiblePair { dataset: DatasetId::Folio, .. }));
    }
}

proptest! {
    #[test]
    fn wrap_then_unwrap_is_identity(
        style in 1u8..=8,
        bodies in proptest::collection::vec("[a-zA-Z0-9 .,:()?\n-]{0,40}", 3),
    ) {
        let style = PromptStyle::new(style).unwrap();
        let labels = ["Problem", "Question", "Answer"];
        let sections: Vec<(&str, &str)> = labels.iter().copied().zip(bodies.iter().map(String::as_str)).collect();
        let text = style.wrap(&sections);
        prop_assert_eq!(style.unwrap(&text, &labels), Some(bodies.clone()));
    }

    #[test]
    fn fenced_extraction_returns_the_block(program in "[a-z(),.:-][a-z(), .:-]{0,29}(\n[a-z(), .:-]{1,30}){0,4}", prose in "[A-Za-z ,.]{0,40}") {
        let response = format!("{prose}\n```\n{program}\n```\n{prose}");
        prop_assert_eq!(extract_program(&response, Language::Asp).unwrap(), program.trim_end());
    }
}
