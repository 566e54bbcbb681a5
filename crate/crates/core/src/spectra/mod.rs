//! Labeled spectra: the dataset type, CSV ingestion, per-sample preprocessing
//! transforms and subject-grouped splitting.

mod csv_io;
mod preprocess;
pub mod savgol;
mod split;

pub use csv_io::{load_csv, read_csv, save_csv, write_csv};
pub use preprocess::{
    normalize_amide, preprocess, preprocess_traced, savgol_smooth, truncate, PreprocessConfig,
    PreprocessStep, WavenumberRange,
};
pub use split::{split_by_subject, DatasetSplit, SplitSpec};

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absorbance spectra sharing one wavenumber axis, with per-sample label,
/// subject grouping and identifier.
///
/// The wavenumber axis is always stored in descending order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumDataset {
    wavenumbers: Vec<f64>,
    samples: Vec<Vec<f64>>,
    labels: Vec<String>,
    subject_ids: Vec<String>,
    sample_ids: Vec<String>,
}

impl SpectrumDataset {
    /// Builds a dataset, validating shape and identifier invariants.
    ///
    /// An ascending axis is reversed together with every row.
    pub fn new(
        wavenumbers: Vec<f64>,
        samples: Vec<Vec<f64>>,
        labels: Vec<String>,
        subject_ids: Vec<String>,
        sample_ids: Vec<String>,
    ) -> Result<Self> {
        let n = samples.len();
        if labels.len() != n || subject_ids.len() != n || sample_ids.len() != n {
            return Err(Error::Invalid(format!(
                "{} samples but {} labels, {} subject ids, {} sample ids",
                n,
                labels.len(),
                subject_ids.len(),
                sample_ids.len()
            )));
        }
        if wavenumbers.is_empty() {
            return Err(Error::Invalid("empty wavenumber axis".into()));
        }
        if let Some(i) = wavenumbers.iter().position(|w| !w.is_finite()) {
            return Err(Error::Invalid(format!(
                "non-finite wavenumber at column {i}"
            )));
        }
        let ascending = match monotonic_direction(&wavenumbers) {
            Some(dir) => dir,
            None => {
                return Err(Error::Invalid(
                    "wavenumbers are not strictly monotonic".into(),
                ))
            }
        };
        for (i, row) in samples.iter().enumerate() {
            if row.len() != wavenumbers.len() {
                return Err(Error::Invalid(format!(
                    "sample {} has {} values, expected {}",
                    sample_ids[i],
                    row.len(),
                    wavenumbers.len()
                )));
            }
        }
        let mut seen = HashSet::with_capacity(n);
        for id in &sample_ids {
            if !seen.insert(id.as_str()) {
                return Err(Error::Invalid(format!("duplicate sample_id {id}")));
            }
        }

        let mut ds = SpectrumDataset {
            wavenumbers,
            samples,
            labels,
            subject_ids,
            sample_ids,
        };
        if ascending && ds.wavenumbers.len() > 1 {
            ds.wavenumbers.reverse();
            for row in &mut ds.samples {
                row.reverse();
            }
        }
        Ok(ds)
    }

    /// Same metadata, new axis and values. Used by the preprocessing transforms.
    pub(crate) fn with_values(&self, wavenumbers: Vec<f64>, samples: Vec<Vec<f64>>) -> Self {
        debug_assert_eq!(samples.len(), self.samples.len());
        SpectrumDataset {
            wavenumbers,
            samples,
            labels: self.labels.clone(),
            subject_ids: self.subject_ids.clone(),
            sample_ids: self.sample_ids.clone(),
        }
    }

    /// Rows at `indices`, in that order.
    pub fn subset(&self, indices: &[usize]) -> Self {
        SpectrumDataset {
            wavenumbers: self.wavenumbers.clone(),
            samples: indices.iter().map(|&i| self.samples[i].clone()).collect(),
            labels: indices.iter().map(|&i| self.labels[i].clone()).collect(),
            subject_ids: indices.iter().map(|&i| self.subject_ids[i].clone()).collect(),
            sample_ids: indices.iter().map(|&i| self.sample_ids[i].clone()).collect(),
        }
    }

    pub fn wavenumbers(&self) -> &[f64] {
        &self.wavenumbers
    }

    pub fn samples(&self) -> &[Vec<f64>] {
        &self.samples
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn subject_ids(&self) -> &[String] {
        &self.subject_ids
    }

    pub fn sample_ids(&self) -> &[String] {
        &self.sample_ids
    }

    pub fn n_samples(&self) -> usize {
        self.samples.len()
    }

    pub fn n_wavenumbers(&self) -> usize {
        self.wavenumbers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Distinct labels in sorted order.
    pub fn label_set(&self) -> Vec<String> {
        self.labels
            .iter()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    /// Distinct subject ids in sorted order.
    pub fn subjects(&self) -> Vec<String> {
        self.subject_ids
            .iter()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }
}

/// `Some(true)` for strictly ascending, `Some(false)` for strictly descending.
fn monotonic_direction(values: &[f64]) -> Option<bool> {
    if values.len() < 2 {
        return Some(false);
    }
    let ascending = values[1] > values[0];
    let ok = values.windows(2).all(|w| {
        if ascending {
            w[1] > w[0]
        } else {
            w[1] < w[0]
        }
    });
    ok.then_some(ascending)
}
