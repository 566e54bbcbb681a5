use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectra::SpectrumDataset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Metric {
    /// `1 / (1 + ||a - b||)`, in (0, 1].
    Euclidean,
    /// Cosine of the angle between the vectors, in [-1, 1].
    Cosine,
}

impl Metric {
    /// Similarity of two equal-length vectors. Cosine of a zero vector is NaN;
    /// callers validate norms first.
    pub fn similarity(self, a: &[f64], b: &[f64]) -> f64 {
        match self {
            Metric::Euclidean => {
                let d2: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum();
                1.0 / (1.0 + d2.sqrt())
            }
            Metric::Cosine => {
                let (mut dot, mut na, mut nb) = (0.0, 0.0, 0.0);
                for (x, y) in a.iter().zip(b) {
                    dot += x * y;
                    na += x * x;
                    nb += y * y;
                }
                (dot / (na.sqrt() * nb.sqrt())).clamp(-1.0, 1.0)
            }
        }
    }

    /// Rejects vectors for which the metric is undefined.
    pub(crate) fn check_vector(self, v: &[f64]) -> bool {
        match self {
            Metric::Euclidean => true,
            Metric::Cosine => v.iter().any(|x| *x != 0.0),
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Metric::Euclidean => "euclidean",
            Metric::Cosine => "cosine",
        })
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "euclidean" => Ok(Metric::Euclidean),
            "cosine" => Ok(Metric::Cosine),
            other => Err(Error::Config(format!(
                "unknown metric `{other}` (expected euclidean or cosine)"
            ))),
        }
    }
}

/// Dense symmetric pairwise similarity matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityMatrix {
    metric: Metric,
    n: usize,
    values: Vec<f64>,
}

impl SimilarityMatrix {
    /// Pairwise similarities of `rows`. Errors name the offending row by index.
    pub fn from_rows(rows: &[Vec<f64>], metric: Metric) -> Result<Self> {
        let ids: Vec<String> = (0..rows.len()).map(|i| format!("row {i}")).collect();
        Self::build(rows, &ids, metric)
    }

    fn build(rows: &[Vec<f64>], ids: &[String], metric: Metric) -> Result<Self> {
        let n = rows.len();
        if n < 2 {
            return Err(Error::Invalid(format!(
                "similarity needs at least 2 items, got {n}"
            )));
        }
        let dim = rows[0].len();
        for (row, id) in rows.iter().zip(ids) {
            if row.len() != dim {
                return Err(Error::Dimension {
                    expected: dim,
                    actual: row.len(),
                });
            }
            if !metric.check_vector(row) {
                return Err(Error::Invalid(format!(
                    "{id} is an all-zero vector; cosine similarity is undefined"
                )));
            }
        }
        let mut values = vec![0.0; n * n];
        for i in 0..n {
            values[i * n + i] = 1.0;
            for j in i + 1..n {
                let s = metric.similarity(&rows[i], &rows[j]);
                values[i * n + j] = s;
                values[j * n + i] = s;
            }
        }
        Ok(SimilarityMatrix { metric, n, values })
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.n..(i + 1) * self.n]
    }
}

/// Pairwise similarity of all spectra in `ds`.
pub fn compute_similarity(ds: &SpectrumDataset, metric: Metric) -> Result<SimilarityMatrix> {
    SimilarityMatrix::build(ds.samples(), ds.sample_ids(), metric)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euclidean_examples() {
        let m = SimilarityMatrix::from_rows(&[vec![0.0, 0.0], vec![3.0, 4.0]], Metric::Euclidean)
            .unwrap();
        assert!((m.get(0, 1) - 1.0 / 6.0).abs() < 1e-15);
        assert_eq!(m.get(1, 0), m.get(0, 1));
        assert_eq!(m.get(0, 0), 1.0);
        assert_eq!(Metric::Euclidean.similarity(&[1.5, 2.0], &[1.5, 2.0]), 1.0);
    }

    #[test]
    fn cosine_examples() {
        assert_eq!(Metric::Cosine.similarity(&[1.0, 0.0], &[0.0, 1.0]), 0.0);
        assert!((Metric::Cosine.similarity(&[1.0, 2.0], &[2.0, 4.0]) - 1.0).abs() < 1e-15);
        let err = SimilarityMatrix::from_rows(&[vec![0.0, 0.0], vec![1.0, 1.0]], Metric::Cosine);
        assert!(matches!(err, Err(Error::Invalid(msg)) if msg.contains("row 0")));
    }

    #[test]
    fn needs_two_items() {
        assert!(SimilarityMatrix::from_rows(&[vec![1.0]], Metric::Euclidean).is_err());
    }
}
