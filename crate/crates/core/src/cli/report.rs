//! Run, evaluation and comparison reports (versioned JSON) and flat CSV tables.

use serde::{Deserialize, Serialize};

use super::config::RunConfig;
use crate::baselines::{ConfusionCounts, Metrics};
use crate::error::{Error, Result};
use crate::evolve::GenerationStats;

pub const REPORT_VERSION: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitSizes {
    pub train: usize,
    pub validation: usize,
    pub test: usize,
}

impl From<[usize; 3]> for SplitSizes {
    fn from(s: [usize; 3]) -> Self {
        SplitSizes {
            train: s[0],
            validation: s[1],
            test: s[2],
        }
    }
}

/// Output files of a run, relative to the report's directory.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Artifacts {
    pub model: String,
    pub history_csv: String,
    pub metrics_csv: String,
    pub train_csv: String,
    pub validation_csv: String,
    pub test_csv: String,
}

impl Default for Artifacts {
    fn default() -> Self {
        Artifacts {
            model: "model.json".into(),
            history_csv: "history.csv".into(),
            metrics_csv: "metrics.csv".into(),
            train_csv: "train.csv".into(),
            validation_csv: "validation.csv".into(),
            test_csv: "test.csv".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub format: String,
    pub version: u64,
    pub seed: u64,
    pub config: RunConfig,
    pub split_sizes: SplitSizes,
    pub history: Vec<GenerationStats>,
    pub best_validation_fitness: f64,
    pub test_counts: ConfusionCounts,
    pub metrics: Metrics,
    pub wall_clock_seconds: f64,
    pub artifacts: Artifacts,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplePrediction {
    pub sample_id: String,
    pub label: String,
    pub predicted: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport {
    pub format: String,
    pub version: u64,
    pub n_samples: usize,
    pub counts: ConfusionCounts,
    pub metrics: Metrics,
    pub predictions: Vec<SamplePrediction>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodResult {
    pub method: String,
    /// `q` for GANet, `k` for kNNG.
    pub neighbors: usize,
    pub counts: ConfusionCounts,
    pub metrics: Metrics,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareReport {
    pub format: String,
    pub version: u64,
    pub seed: u64,
    pub config: RunConfig,
    pub split_sizes: SplitSizes,
    pub results: Vec<MethodResult>,
    pub wall_clock_seconds: f64,
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| Error::Invalid(format!("report serialization failed: {e}")))
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Invalid(format!("report parse failed: {e}")))
}

pub fn history_csv(history: &[GenerationStats]) -> String {
    let mut out = String::from("generation,best,mean,best_ever\n");
    for h in history {
        out.push_str(&format!(
            "{},{},{},{}\n",
            h.generation, h.best, h.mean, h.best_ever
        ));
    }
    out
}

pub fn metrics_csv(rows: &[MethodResult]) -> String {
    let mut out =
        String::from("method,neighbors,accuracy,sensitivity,specificity,h_mean,tp,fp,tn,fn\n");
    for r in rows {
        let m = &r.metrics;
        let c = &r.counts;
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            r.method,
            r.neighbors,
            m.accuracy,
            m.sensitivity,
            m.specificity,
            m.h_mean,
            c.tp,
            c.fp,
            c.tn,
            c.fn_
        ));
    }
    out
}
