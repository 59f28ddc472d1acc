//! Seeded generator of chain-shaped reasoning problems with a controlled
//! number of inference hops.
//!
//! A problem of depth `d` states one fact about an individual and `d`
//! category rules forming a chain. Positive problems ask about the last
//! category of the chain; negative problems ask about an off-chain category
//! that only appears in a distractor rule. Labels alternate starting with
//! `True`. Every problem carries gold translations in all four languages.

use rand::seq::{IndexedRandom, SliceRandom};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use interlang_core::{Assumption, Verdict};

use crate::problem::{DatasetId, GoldTranslations, ReasoningProblem};

const CATEGORIES: &[&str] = &[
    "blicket", "dax", "wug", "fep", "toma", "zorp", "grell", "quin", "sniv", "mib", "varn", "plok", "treb",
    "yurl", "koff", "nim", "jast", "drob", "welt", "fumple", "gorp", "hask", "lurp", "brin", "skeld", "vosk",
    "tarn", "pilk", "zeb", "crom", "opal", "ulm", "esk", "ivet",
];

const INDIVIDUALS: &[&str] = &["Rell", "Sima", "Odo", "Kaya", "Bram", "Lio", "Neva", "Taro", "Ines", "Umar"];

/// Largest supported depth: the vocabulary must cover the chain plus two
/// distractor categories.
pub const MAX_DEPTH: usize = CATEGORIES.len() - 3;

/// Generates `n` problems of exactly `depth` hops. Identical arguments give
/// identical output.
///
/// # Panics
///
/// If `depth` is 0 or exceeds [`MAX_DEPTH`].
pub fn generate_synthetic(depth: usize, n: usize, seed: u64) -> Vec<ReasoningProblem> {
    assert!((1..=MAX_DEPTH).contains(&depth), "depth must be in 1..={MAX_DEPTH}");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|i| one_problem(&mut rng, depth, i)).collect()
}

fn one_problem(rng: &mut ChaCha8Rng, depth: usize, index: usize) -> ReasoningProblem {
    let mut words: Vec<&str> = CATEGORIES.to_vec();
    words.shuffle(rng);
    let chain = &words[..=depth];
    let (source, target) = (words[depth + 1], words[depth + 2]);
    let who = *INDIVIDUALS.choose(rng).expect("non-empty");
    let positive = index % 2 == 0;

    let mut rules: Vec<(&str, &str)> = chain.windows(2).map(|w| (w[0], w[1])).collect();
    if !positive {
        rules.push((source, target));
    }
    rules.shuffle(rng);
    let asked = if positive { chain[depth] } else { target };

    let mut sentences = vec![format!("{who} is {} {}.", article(chain[0]), chain[0])];
    sentences.extend(rules.iter().map(|(a, b)| format!("Each {a} is {} {b}.", article(b))));
    let premises = sentences.join(" ");
    let question = format!("True or false: {who} is {} {asked}.", article(asked));

    let c = who.to_lowercase();
    let cap = |w: &str| {
        let mut s = w[..1].to_uppercase();
        s.push_str(&w[1..]);
        s
    };
    let mut fol = vec![format!("{}({c})", cap(chain[0]))];
    let mut nltk = fol.clone();
    let mut asp = vec![format!("{}({c}).", chain[0])];
    let mut pyke = vec![format!("fact {}({c})", chain[0])];
    for (a, b) in &rules {
        fol.push(format!("∀x ({}(x) → {}(x))", cap(a), cap(b)));
        nltk.push(format!("all x. ({}(x) -> {}(x))", cap(a), cap(b)));
        asp.push(format!("{b}(X) :- {a}(X)."));
        pyke.push(format!("rule {a}(X) => {b}(X)"));
    }
    fol.push(format!("? {}({c})", cap(asked)));
    nltk.push(format!("? {}({c})", cap(asked)));
    asp.push(format!("? {asked}({c})"));
    pyke.push(format!("? {asked}({c})"));

    ReasoningProblem {
        id: format!("synthetic-d{depth}-{index}"),
        dataset: DatasetId::Synthetic,
        premises,
        question,
        label: if positive { Verdict::True } else { Verdict::False },
        assumption: Assumption::Cwa,
        gold_translations: Some(GoldTranslations {
            fol: fol.join("\n"),
            nltk: nltk.join("\n"),
            asp: asp.join("\n"),
            pyke: pyke.join("\n"),
        }),
    }
}

fn article(word: &str) -> &'static str {
    if word.starts_with(['a', 'e', 'i', 'o', 'u']) {
        "an"
    } else {
        "a"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn depth_one_has_two_sentences() {
        let p = &generate_synthetic(1, 1, 0)[0];
        assert_eq!(p.label, Verdict::True);
        assert_eq!(p.premises.matches('.').count(), 2);
        assert!(p.premises.contains(" is a") && p.premises.contains("Each "));
    }

    #[test]
    fn labels_alternate() {
        let ps = generate_synthetic(3, 6, 5);
        let labels: Vec<_> = ps.iter().map(|p| p.label).collect();
        assert_eq!(labels, [Verdict::True, Verdict::False].repeat(3));
    }

    #[test]
    fn same_seed_same_problems() {
        assert_eq!(generate_synthetic(4, 8, 42), generate_synthetic(4, 8, 42));
        assert_ne!(generate_synthetic(4, 8, 42), generate_synthetic(4, 8, 43));
    }
}
