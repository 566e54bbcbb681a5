//! kNN-graph baseline, evaluation metrics and synthetic data.

mod knng;
mod metrics;
mod synthetic;

pub use knng::{knng_classifier, knng_classify};
pub use metrics::{harmonic_mean3, metrics, ConfusionCounts, Metrics};
pub use synthetic::{generate_synthetic, SyntheticSpec, NEGATIVE_LABEL, POSITIVE_LABEL};
