//! Binary confusion counts and the accuracy / sensitivity / specificity /
//! harmonic-mean quadruple.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionCounts {
    pub tp: usize,
    pub fp: usize,
    pub tn: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
    pub positive_label: String,
}

impl ConfusionCounts {
    /// One-vs-rest counts for `positive_label`.
    pub fn from_predictions(
        truth: &[String],
        predicted: &[String],
        positive_label: &str,
    ) -> Result<Self> {
        if truth.len() != predicted.len() {
            return Err(Error::Dimension {
                expected: truth.len(),
                actual: predicted.len(),
            });
        }
        let mut c = ConfusionCounts {
            tp: 0,
            fp: 0,
            tn: 0,
            fn_: 0,
            positive_label: positive_label.to_string(),
        };
        for (t, p) in truth.iter().zip(predicted) {
            match (t == positive_label, p == positive_label) {
                (true, true) => c.tp += 1,
                (false, true) => c.fp += 1,
                (false, false) => c.tn += 1,
                (true, false) => c.fn_ += 1,
            }
        }
        Ok(c)
    }

    pub fn total(&self) -> usize {
        self.tp + self.fp + self.tn + self.fn_
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub accuracy: f64,
    pub sensitivity: f64,
    pub specificity: f64,
    pub h_mean: f64,
}

/// Ratio with an empty denominator counted as 0.
fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

/// `3 / (1/a + 1/b + 1/c)`, or 0 when any component is 0.
pub fn harmonic_mean3(a: f64, b: f64, c: f64) -> f64 {
    if a <= 0.0 || b <= 0.0 || c <= 0.0 {
        0.0
    } else {
        3.0 / (1.0 / a + 1.0 / b + 1.0 / c)
    }
}

pub fn metrics(counts: &ConfusionCounts) -> Result<Metrics> {
    let total = counts.total();
    if total == 0 {
        return Err(Error::Invalid("no evaluated items".into()));
    }
    let accuracy = ratio(counts.tp + counts.tn, total);
    let sensitivity = ratio(counts.tp, counts.tp + counts.fn_);
    let specificity = ratio(counts.tn, counts.tn + counts.fp);
    Ok(Metrics {
        accuracy,
        sensitivity,
        specificity,
        h_mean: harmonic_mean3(accuracy, sensitivity, specificity),
    })
}
