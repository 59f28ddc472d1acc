//! Per-cell summaries and their CSV, JSON and text-table renderings.
//!
//! Percentages are printed with two decimals. Cell rows come in the sort
//! order of [`Cell`]; aggregate rows (style `*`) follow for every
//! (dataset, model, method) group that spans more than one style.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::metrics::{aggregate, compute_metrics, AggregateStat, MetricsSummary};
use crate::problem::DatasetId;
use crate::prompt::Method;
use crate::record::{error_keys, Cell, TrialRecord};

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("nothing to report")]
    NothingToReport,
    #[error("cannot write report: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReportFormat {
    Csv,
    Json,
    TableText,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("unknown report format `{0}` (expected csv, json or table)")]
pub struct UnknownFormat(pub String);

impl FromStr for ReportFormat {
    type Err = UnknownFormat;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            "table" | "table-text" => Ok(ReportFormat::TableText),
            _ => Err(UnknownFormat(s.to_string())),
        }
    }
}

/// Number of failures of one kind.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorCount {
    pub kind: String,
    pub count: usize,
}

/// Metrics of one matrix cell.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellSummary {
    pub cell: Cell,
    pub metrics: MetricsSummary,
    /// Per-instance correctness as 0 or 100, so `mean` equals overall accuracy in percent.
    pub instances: AggregateStat,
    pub truncated: usize,
    /// Non-zero failure counts in taxonomy order.
    pub errors: Vec<ErrorCount>,
}

/// Style-averaged metrics of one (dataset, model, method) group.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AggregateRow {
    pub dataset: DatasetId,
    pub model: String,
    pub method: Method,
    pub exec_rate: f64,
    pub exec_acc: f64,
    /// Overall accuracy in percent across styles.
    pub overall: AggregateStat,
    pub size: usize,
    pub executed: usize,
    pub correct: usize,
    pub truncated: usize,
    pub errors: Vec<ErrorCount>,
}

/// Groups records by cell; each cell's dataset size is its record count.
pub fn summarize_records(records: &[TrialRecord]) -> Vec<CellSummary> {
    let mut groups: BTreeMap<Cell, Vec<TrialRecord>> = BTreeMap::new();
    for r in records {
        groups.entry(r.cell()).or_default().push(r.clone());
    }
    groups
        .into_iter()
        .map(|(cell, rs)| {
            let metrics = compute_metrics(&rs, rs.len());
            let scores: Vec<f64> = rs.iter().map(|r| if r.is_correct() { 100.0 } else { 0.0 }).collect();
            let errors = histogram(rs.iter().filter_map(|r| r.outcome.error_key()).map(|k| (k, 1)));
            CellSummary {
                cell,
                metrics,
                instances: aggregate(&scores).expect("groups are non-empty"),
                truncated: rs.iter().filter(|r| r.truncated).count(),
                errors,
            }
        })
        .collect()
}

fn histogram(items: impl Iterator<Item = (String, usize)>) -> Vec<ErrorCount> {
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for (k, n) in items {
        *counts.entry(k).or_default() += n;
    }
    error_keys().into_iter().filter_map(|kind| counts.get(&kind).map(|&count| ErrorCount { kind, count })).collect()
}

/// Aggregates over styles for groups with more than one style.
pub fn aggregate_rows(summaries: &[CellSummary]) -> Vec<AggregateRow> {
    let mut groups: BTreeMap<(DatasetId, String, Method), Vec<&CellSummary>> = BTreeMap::new();
    for s in summaries {
        groups.entry((s.cell.dataset, s.cell.model.clone(), s.cell.method)).or_default().push(s);
    }
    groups
        .into_iter()
        .filter(|(_, ss)| ss.len() > 1)
        .map(|((dataset, model, method), ss)| {
            let mean = |f: fn(&MetricsSummary) -> f64| ss.iter().map(|s| f(&s.metrics)).sum::<f64>() / ss.len() as f64;
            let overall: Vec<f64> = ss.iter().map(|s| s.metrics.overall_acc * 100.0).collect();
            AggregateRow {
                dataset,
                model,
                method,
                exec_rate: mean(|m| m.exec_rate),
                exec_acc: mean(|m| m.exec_acc),
                overall: aggregate(&overall).expect("non-empty"),
                size: ss.iter().map(|s| s.metrics.dataset_size).sum(),
                executed: ss.iter().map(|s| s.metrics.executed).sum(),
                correct: ss.iter().map(|s| s.metrics.correct).sum(),
                truncated: ss.iter().map(|s| s.truncated).sum(),
                errors: histogram(ss.iter().flat_map(|s| s.errors.iter().map(|e| (e.kind.clone(), e.count)))),
            }
        })
        .collect()
}

fn pct(x: f64) -> String {
    format!("{:.2}", x * 100.0)
}

fn num(x: f64) -> String {
    format!("{x:.2}")
}

fn errors_field(errors: &[ErrorCount]) -> String {
    errors.iter().map(|e| format!("{}={}", e.kind, e.count)).collect::<Vec<_>>().join(";")
}

/// Renders summaries in `format`.
pub fn render_report(summaries: &[CellSummary], format: ReportFormat) -> Result<String, ReportError> {
    if summaries.is_empty() {
        return Err(ReportError::NothingToReport);
    }
    let aggregates = aggregate_rows(summaries);
    Ok(match format {
        ReportFormat::Csv => render_csv(summaries, &aggregates)?,
        ReportFormat::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                cells: &'a [CellSummary],
                aggregates: &'a [AggregateRow],
            }
            let mut s = serde_json::to_string_pretty(&Doc { cells: summaries, aggregates: &aggregates })
                .expect("summaries serialize");
            s.push('\n');
            s
        }
        ReportFormat::TableText => render_table(summaries),
    })
}

/// Renders and writes a report file.
pub fn emit_report(summaries: &[CellSummary], format: ReportFormat, path: &Path) -> Result<(), ReportError> {
    let text = render_report(summaries, format)?;
    fs::write(path, text)?;
    Ok(())
}

const CSV_HEADER: [&str; 15] = [
    "dataset", "method", "style", "model", "exec_rate", "exec_acc", "overall_acc", "mean", "sem", "n", "errors", "size",
    "executed", "correct", "truncated",
];

fn render_csv(summaries: &[CellSummary], aggregates: &[AggregateRow]) -> Result<String, ReportError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).map_err(csv_io)?;
    for s in summaries {
        let m = &s.metrics;
        w.write_record([
            s.cell.dataset.to_string(),
            s.cell.method.to_string(),
            s.cell.style.to_string(),
            s.cell.model.clone(),
            pct(m.exec_rate),
            pct(m.exec_acc),
            pct(m.overall_acc),
            num(s.instances.mean),
            s.instances.sem.map(num).unwrap_or_default(),
            s.instances.n.to_string(),
            errors_field(&s.errors),
            m.dataset_size.to_string(),
            m.executed.to_string(),
            m.correct.to_string(),
            s.truncated.to_string(),
        ])
        .map_err(csv_io)?;
    }
    for a in aggregates {
        w.write_record([
            a.dataset.to_string(),
            a.method.to_string(),
            "*".to_string(),
            a.model.clone(),
            pct(a.exec_rate),
            pct(a.exec_acc),
            num(a.overall.mean),
            num(a.overall.mean),
            a.overall.sem.map(num).unwrap_or_default(),
            a.overall.n.to_string(),
            errors_field(&a.errors),
            a.size.to_string(),
            a.executed.to_string(),
            a.correct.to_string(),
            a.truncated.to_string(),
        ])
        .map_err(csv_io)?;
    }
    let bytes = w.into_inner().map_err(|e| std::io::Error::other(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

fn csv_io(e: csv::Error) -> std::io::Error {
    std::io::Error::other(e)
}

fn stat_cell(values: &[f64]) -> String {
    match aggregate(values) {
        None => "-".to_string(),
        Some(AggregateStat { mean, sem: Some(sem), n }) => format!("{mean:.2} ± {sem:.2} (n={n})"),
        Some(AggregateStat { mean, sem: None, n }) => format!("{mean:.2} (n={n})"),
    }
}

fn write_rows(out: &mut String, rows: &[Vec<String>]) {
    let widths: Vec<usize> = (0..rows[0].len()).map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0)).collect();
    for row in rows {
        let line: Vec<String> = row.iter().zip(&widths).map(|(v, w)| format!("{v:<w$}")).collect();
        let _ = writeln!(out, "{}", line.join("  ").trim_end());
    }
}

/// Overall-accuracy matrix (methods by datasets) per model, then per-cell details.
fn render_table(summaries: &[CellSummary]) -> String {
    let datasets: Vec<DatasetId> = DatasetId::ALL.into_iter().filter(|d| summaries.iter().any(|s| s.cell.dataset == *d)).collect();
    let mut models: Vec<String> = summaries.iter().map(|s| s.cell.model.clone()).collect();
    models.dedup();
    models.sort();
    models.dedup();
    let mut out = String::new();
    let matrix = |title: String, pick: &dyn Fn(&CellSummary) -> bool, out: &mut String| {
        let _ = writeln!(out, "{title}\nOverall accuracy (%), mean ± SEM over cells");
        let mut rows = vec![std::iter::once("method".to_string())
            .chain(datasets.iter().map(|d| d.to_string()))
            .chain(std::iter::once("all".to_string()))
            .collect::<Vec<_>>()];
        for method in Method::ALL {
            let of = |d: Option<DatasetId>| -> Vec<f64> {
                summaries
                    .iter()
                    .filter(|s| pick(s) && s.cell.method == method && d.is_none_or(|d| s.cell.dataset == d))
                    .map(|s| s.metrics.overall_acc * 100.0)
                    .collect()
            };
            if of(None).is_empty() {
                continue;
            }
            let mut row = vec![method.to_string()];
            row.extend(datasets.iter().map(|d| stat_cell(&of(Some(*d)))));
            row.push(stat_cell(&of(None)));
            rows.push(row);
        }
        write_rows(out, &rows);
        out.push('\n');
    };
    for model in &models {
        matrix(format!("== {model} =="), &|s: &CellSummary| &s.cell.model == model, &mut out);
    }
    if models.len() > 1 {
        matrix("== all models ==".to_string(), &|_: &CellSummary| true, &mut out);
    }
    let _ = writeln!(out, "Cells");
    let mut rows = vec![["dataset", "method", "style", "model", "exec_rate", "exec_acc", "overall_acc", "errors"]
        .map(str::to_string)
        .to_vec()];
    for s in summaries {
        let m = &s.metrics;
        let exec_acc = if m.exec_acc_undefined { format!("{} (undefined)", pct(m.exec_acc)) } else { pct(m.exec_acc) };
        rows.push(vec![
            s.cell.dataset.to_string(),
            s.cell.method.to_string(),
            s.cell.style.to_string(),
            s.cell.model.clone(),
            pct(m.exec_rate),
            exec_acc,
            pct(m.overall_acc),
            errors_field(&s.errors),
        ]);
    }
    write_rows(&mut out, &rows);
    out
}
