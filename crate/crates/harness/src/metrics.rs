//! Execution rate, execution accuracy and overall accuracy, plus mean and
//! standard error aggregation.

use serde::{Deserialize, Serialize};

use crate::record::TrialRecord;

/// Counts and rates for one cell.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricsSummary {
    pub dataset_size: usize,
    pub executed: usize,
    pub correct: usize,
    pub exec_rate: f64,
    /// Zero when nothing executed; see `exec_acc_undefined`.
    pub exec_acc: f64,
    pub overall_acc: f64,
    pub exec_acc_undefined: bool,
}

impl MetricsSummary {
    /// # Panics
    ///
    /// Unless `correct <= executed <= dataset_size`.
    pub fn from_counts(dataset_size: usize, executed: usize, correct: usize) -> Self {
        assert!(correct <= executed && executed <= dataset_size, "need #TRUE <= #EXEC <= #D");
        let ratio = |a: usize, b: usize| if b == 0 { 0.0 } else { a as f64 / b as f64 };
        Self {
            dataset_size,
            executed,
            correct,
            exec_rate: ratio(executed, dataset_size),
            exec_acc: ratio(correct, executed),
            overall_acc: ratio(correct, dataset_size),
            exec_acc_undefined: executed == 0,
        }
    }
}

/// Metrics for the records of one cell over a dataset of `dataset_size`
/// problems. Baseline cells count every instance as executed.
pub fn compute_metrics(records: &[TrialRecord], dataset_size: usize) -> MetricsSummary {
    let correct = records.iter().filter(|r| r.is_correct()).count();
    let baseline = records.first().is_some_and(|r| r.method.is_baseline());
    let executed = if baseline { dataset_size } else { records.iter().filter(|r| r.executed()).count() };
    MetricsSummary::from_counts(dataset_size, executed, correct)
}

/// Mean with standard error of the mean over `n` values.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AggregateStat {
    pub mean: f64,
    /// Sample standard deviation over the square root of `n`; needs `n >= 2`.
    pub sem: Option<f64>,
    pub n: usize,
}

/// `None` for an empty slice.
pub fn aggregate(values: &[f64]) -> Option<AggregateStat> {
    let n = values.len();
    if n == 0 {
        return None;
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    let sem = (n >= 2).then(|| {
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
        var.sqrt() / (n as f64).sqrt()
    });
    Some(AggregateStat { mean, sem, n })
}
