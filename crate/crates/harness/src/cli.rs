//! Command-line interface.
//!
//! Exit codes: 0 success, 1 usage error, 2 config error, 3 runtime failure.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use interlang_core::{solve_program, Assumption, BackendError, Language};

use crate::config::{ConfigError, ExperimentConfig, Translator};
use crate::problem::DatasetId;
use crate::prompt::{build_prompt, extract_baseline_answer, extract_program, Method, PromptStyle};
use crate::record::TrialRecord;
use crate::report::{render_report, summarize_records, ReportFormat};
use crate::runner::{gateway_for, load_problems, run_experiment, RunError};
use crate::synthetic::{generate_synthetic, MAX_DEPTH};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_CONFIG: u8 = 2;
pub const EXIT_RUNTIME: u8 = 3;

/// File name of the records written by `run`.
pub const RECORDS_FILE: &str = "records.jsonl";

#[derive(Debug, Parser)]
#[command(name = "interlang", version, about = "Translate logic problems into formal languages, solve them and score the results")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate synthetic chain problems as JSON lines.
    Generate {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=MAX_DEPTH as u64))]
        depth: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Translate one problem with the configured model and print the program.
    Translate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        dataset: DatasetId,
        /// Problem id.
        #[arg(long)]
        problem: String,
        #[arg(long)]
        method: Method,
        #[arg(long, default_value = "1", value_parser = parse_style)]
        style: PromptStyle,
        /// Model id; defaults to the first model of the matrix.
        #[arg(long)]
        model: Option<String>,
    },
    /// Solve a program file and print the answer.
    Solve {
        #[arg(long)]
        language: Language,
        #[arg(long, default_value = "owa")]
        assumption: Assumption,
        /// Program file, or `-` for standard input.
        file: PathBuf,
    },
    /// Run the full experiment matrix and write trial records.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Directory for the records file.
        #[arg(long)]
        out: PathBuf,
    },
    /// Summarize trial records.
    Report {
        #[arg(long)]
        records: PathBuf,
        /// csv, json or table.
        #[arg(long, default_value = "table")]
        format: ReportFormat,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_style(s: &str) -> Result<PromptStyle, String> {
    let id: u8 = s.parse().map_err(|_| format!("`{s}` is not a style number"))?;
    PromptStyle::new(id).map_err(|e| e.to_string())
}

/// A failure with its exit code.
struct Failure(u8, String);

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure(EXIT_CONFIG, e.to_string())
    }
}

impl From<RunError> for Failure {
    fn from(e: RunError) -> Self {
        match e {
            RunError::Config(c) => c.into(),
            other => Failure(EXIT_RUNTIME, other.to_string()),
        }
    }
}

fn runtime(e: impl std::fmt::Display) -> Failure {
    Failure(EXIT_RUNTIME, e.to_string())
}

/// Parses `args` (program name first) and runs the command.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else {
                let _ = write!(out, "{}", e.render());
                EXIT_OK
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn write_output(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| runtime(format!("cannot write {}: {e}", p.display()))),
        None => out.write_all(text.as_bytes()).map_err(runtime),
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Generate { depth, n, seed, out: path } => {
            let mut text = String::new();
            for p in generate_synthetic(depth as usize, n as usize, seed) {
                text.push_str(&serde_json::to_string(&p).expect("problems serialize"));
                text.push('\n');
            }
            write_output(out, path.as_deref(), &text)
        }
        Command::Translate { config, dataset, problem, method, style, model } => {
            let cfg = ExperimentConfig::load(&config)?;
            let problems = load_problems(&cfg)?;
            let p = problems
                .get(&dataset)
                .and_then(|ps| ps.iter().find(|p| p.id == problem))
                .ok_or_else(|| runtime(format!("no problem `{problem}` in {dataset}")))?;
            if !method.supports(dataset) {
                return Err(ConfigError::IncompatibleCell { dataset, method }.into());
            }
            let text = match cfg.run.translator {
                Translator::Oracle => {
                    let language = method.language().ok_or_else(|| runtime("the oracle translator has no baseline answers"))?;
                    let gold = p.gold_translations.as_ref().ok_or_else(|| runtime("problem has no gold translations"))?;
                    gold.get(language).to_string()
                }
                Translator::Llm => {
                    let gw = gateway_for(&cfg)?.expect("llm translator has a gateway");
                    let model = model.unwrap_or_else(|| cfg.matrix.models[0].clone());
                    let bundle = build_prompt(p, method, style).map_err(runtime)?;
                    let response = gw.complete(&bundle.messages(), &cfg.generation_params(&model)).map_err(runtime)?;
                    if response.truncated {
                        eprintln!("warning: response was truncated at the token limit");
                    }
                    response.text
                }
            };
            let result = match method.language() {
                Some(l) => extract_program(&text, l).map_err(runtime)?,
                None => extract_baseline_answer(&text, p.assumption).to_string(),
            };
            writeln!(out, "{result}").map_err(runtime)
        }
        Command::Solve { language, assumption, file } => {
            let text = if file.as_os_str() == "-" {
                let mut s = String::new();
                io::stdin().read_to_string(&mut s).map_err(runtime)?;
                s
            } else {
                fs::read_to_string(&file).map_err(|e| runtime(format!("cannot read {}: {e}", file.display())))?
            };
            match solve_program(&text, language, assumption, &Default::default()) {
                Ok(report) => writeln!(out, "{}", report.answer).map_err(runtime),
                Err(BackendError::Parse(d)) => Err(runtime(format!("parse failed: {d}"))),
                Err(e) => Err(runtime(format!("solve failed: {e}"))),
            }
        }
        Command::Run { config, out: dir } => {
            let cfg = ExperimentConfig::load(&config)?;
            let problems = load_problems(&cfg)?;
            let gateway = gateway_for(&cfg)?;
            let records = run_experiment(&cfg, &problems, gateway.as_ref())?;
            fs::create_dir_all(&dir).map_err(|e| runtime(format!("cannot create {}: {e}", dir.display())))?;
            let path = dir.join(RECORDS_FILE);
            fs::write(&path, records_to_jsonl(&records)).map_err(|e| runtime(format!("cannot write {}: {e}", path.display())))?;
            writeln!(out, "wrote {} records to {}", records.len(), path.display()).map_err(runtime)
        }
        Command::Report { records, format, out: path } => {
            let text = fs::read_to_string(&records).map_err(|e| runtime(format!("cannot read {}: {e}", records.display())))?;
            let records = records_from_jsonl(&text).map_err(runtime)?;
            let report = render_report(&summarize_records(&records), format).map_err(runtime)?;
            write_output(out, path.as_deref(), &report)
        }
    }
}

/// One JSON object per line.
pub fn records_to_jsonl(records: &[TrialRecord]) -> String {
    records.iter().map(|r| serde_json::to_string(r).expect("records serialize") + "\n").collect()
}

/// Inverse of [`records_to_jsonl`]; blank lines are skipped.
pub fn records_from_jsonl(text: &str) -> Result<Vec<TrialRecord>, String> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| serde_json::from_str(l).map_err(|e| format!("record on line {}: {e}", i + 1)))
        .collect()
}
