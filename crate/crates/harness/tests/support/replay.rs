//! Writes scripted responses into a response cache so the replay gateway
//! can serve them, and defines the checked-in replay fixture set.

use std::path::{Path, PathBuf};

use interlang_gateway::{CacheEntry, CacheKey, GenerationParams, ResponseCache};
use interlang_harness::{build_prompt, Cell, ExperimentConfig, Method, ReasoningProblem};

/// Fixed timestamp so fixture files are reproducible.
pub const FIXTURE_CREATED_AT: u64 = 1_767_225_600;

pub fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join("replay")
}

/// A chat-completions response body with one choice.
pub fn completion_body(text: &str, finish_reason: &str) -> String {
    serde_json::json!({
        "id": "fixture",
        "object": "chat.completion",
        "choices": [{
            "index": 0,
            "message": { "role": "assistant", "content": text },
            "finish_reason": finish_reason,
        }],
        "usage": {
            "prompt_tokens": 400,
            "completion_tokens": text.split_whitespace().count(),
            "total_tokens": 400 + text.split_whitespace().count(),
        },
    })
    .to_string()
}

/// Stores `text` as the response to the prompt of (`cell`, `problem`).
pub fn store_response(
    cache: &ResponseCache,
    config: &ExperimentConfig,
    cell: &Cell,
    problem: &ReasoningProblem,
    text: &str,
    finish_reason: &str,
    latency_ms: u64,
) -> CacheKey {
    let bundle = build_prompt(problem, cell.method, cell.style).expect("compatible cell");
    let params: GenerationParams = config.generation_params(&cell.model);
    let key = CacheKey::derive(&bundle.messages(), &params);
    let entry = CacheEntry {
        key: key.clone(),
        created_at: FIXTURE_CREATED_AT,
        params,
        latency_ms,
        body: completion_body(text, finish_reason),
    };
    cache.put(&entry).expect("cache write");
    key
}

fn fenced(program: &str) -> String {
    format!("Here is the translation.\n\n```\n{program}\n```\n")
}

fn lines(program: &str) -> Vec<String> {
    program.lines().map(str::to_string).collect()
}

/// Index of the first rule line of a gold translation.
fn first_rule(ls: &[String]) -> usize {
    ls.iter().position(|l| l.starts_with('∀') || l.starts_with("all ") || l.contains(":-") || l.starts_with("rule ")).expect("rule line")
}

/// Scripted response for problem `i` under `method`, plus its finish reason.
///
/// Designed outcomes per method over ten problems:
/// - fol: #0 unbalanced parentheses, #2 drops a rule (wrong answer); 9 parsed, 8 correct.
/// - nltk: #1 Unicode connectives, #4 arity conflict; unfenced responses.
/// - asp: #3 `-not`, #5 prose only, #6 unsafe rule.
/// - pyke: #7 two statements on one line, #8 truncated mid-rule, #9 extra rule flips the answer.
/// - std: #3 wrong answer, #6 empty response (defaults to False).
/// - cot: #2 wrong answer, #5 no marker but a verdict word at the end.
pub fn scripted_response(method: Method, i: usize, problem: &ReasoningProblem) -> (String, &'static str) {
    let gold = problem.gold_translations.as_ref().expect("synthetic problems carry gold translations");
    let label = problem.label.to_string();
    match method {
        Method::Fol => {
            let mut ls = lines(&gold.fol);
            match i {
                0 => {
                    let r = first_rule(&ls);
                    ls[r].pop();
                }
                2 => {
                    let r = first_rule(&ls);
                    ls.remove(r);
                }
                _ => {}
            }
            (fenced(&ls.join("\n")), "stop")
        }
        Method::Nltk => {
            let program = match i {
                1 => gold.fol.clone(),
                4 => {
                    let mut ls = lines(&gold.nltk);
                    let pred = ls[0].split('(').next().unwrap().to_string();
                    ls.insert(1, format!("{pred}(rell, odo)"));
                    ls.join("\n")
                }
                _ => gold.nltk.clone(),
            };
            (format!("The premises become:\n{program}\nThat is the whole program."), "stop")
        }
        Method::Asp => match i {
            3 => {
                let mut ls = lines(&gold.asp);
                let pred = ls[0].split('(').next().unwrap().to_string();
                ls.insert(1, format!("-not {pred}(odo)."));
                (fenced(&ls.join("\n")), "stop")
            }
            5 => ("I am not able to write this program, but the individual probably belongs to the category.".to_string(), "stop"),
            6 => {
                let mut ls = lines(&gold.asp);
                ls.insert(1, "stray(Y) :- extra(X).".to_string());
                (fenced(&ls.join("\n")), "stop")
            }
            _ => (format!("```asp\n{}\n```", gold.asp), "stop"),
        },
        Method::Pyke => match i {
            7 => {
                let mut ls = lines(&gold.pyke);
                let second = ls.remove(1);
                ls[0] = format!("{} {second}", ls[0]);
                (fenced(&ls.join("\n")), "stop")
            }
            8 => {
                let ls = lines(&gold.pyke);
                let r = first_rule(&ls);
                let cut = &ls[r][..ls[r].find('(').unwrap() + 1];
                (format!("```\n{}\n{cut}", ls[..r].join("\n")), "length")
            }
            9 => {
                let mut ls = lines(&gold.pyke);
                let query = ls.pop().unwrap();
                let target = query.trim_start_matches("? ").split('(').next().unwrap().to_string();
                let source = ls[0].trim_start_matches("fact ").split('(').next().unwrap().to_string();
                ls.push(format!("rule {source}(X) => {target}(X)"));
                ls.push(query);
                (fenced(&ls.join("\n")), "stop")
            }
            _ => (fenced(&gold.pyke), "stop"),
        },
        Method::Std => match i {
            3 => ("The answer is True.".to_string(), "stop"),
            6 => (String::new(), "stop"),
            _ => (format!("The answer is {label}."), "stop"),
        },
        Method::Cot => match i {
            2 => ("Following the rules, the chain does not reach the category.\nAnswer: False".to_string(), "stop"),
            5 => (format!("Following the rules one step at a time gives the result: {label}"), "stop"),
            _ => (format!("Following the rules one step at a time settles the question.\nAnswer: {label}"), "stop"),
        },
    }
}

/// Deterministic latency for fixture `i` of `method`.
pub fn scripted_latency(method: Method, i: usize) -> u64 {
    let base = Method::ALL.iter().position(|m| *m == method).unwrap() as u64 * 100;
    700 + base + 37 * i as u64
}
