//! Importance-based classification of a query by virtual insertion.
//!
//! The query is linked to its `q_test` most similar training vertices. Each
//! class scores the importance of the linked vertices it owns, weighted by
//! `similarity^gamma`; the highest score wins.

use serde::{Deserialize, Serialize};

use super::similarity::Metric;
use crate::error::{Error, Result};

/// Temporary links of one query: `(training index, similarity)`, most similar
/// first, ties to the lower index.
#[derive(Debug, Clone, PartialEq)]
pub struct QueryLinks {
    links: Vec<(usize, f64)>,
}

impl QueryLinks {
    /// Links `query` to its `q_test` most similar rows of `train`.
    pub fn new(query: &[f64], train: &[Vec<f64>], metric: Metric, q_test: usize) -> Result<Self> {
        let dim = train.first().map(Vec::len).unwrap_or(0);
        if query.len() != dim {
            return Err(Error::Dimension {
                expected: dim,
                actual: query.len(),
            });
        }
        if !metric.check_vector(query) {
            return Err(Error::Invalid(
                "query is an all-zero vector; cosine similarity is undefined".into(),
            ));
        }
        let mut ranked: Vec<(usize, f64)> = train
            .iter()
            .enumerate()
            .map(|(j, row)| (j, metric.similarity(query, row)))
            .collect();
        ranked.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        ranked.truncate(q_test);
        Ok(QueryLinks { links: ranked })
    }

    pub fn links(&self) -> &[(usize, f64)] {
        &self.links
    }
}

/// Outcome of classifying one query.
#[derive(Debug, Clone, PartialEq)]
pub struct Prediction {
    pub class: usize,
    /// Per-class score, indexed by class.
    pub scores: Vec<f64>,
}

/// Weight of a link in the class score. Negative cosine similarities count
/// as zero so that fractional exponents stay defined.
pub fn link_weight(similarity: f64, gamma: f64) -> f64 {
    similarity.max(0.0).powf(gamma)
}

/// Scores every class for a linked query and picks the winner.
///
/// Ties go to the class whose linked vertices have the highest mean
/// similarity to the query, then to the lowest class index.
pub fn score_query(
    links: &QueryLinks,
    labels: &[usize],
    n_classes: usize,
    importance: &[f64],
    gamma: f64,
) -> Prediction {
    let mut scores = vec![0.0; n_classes];
    let mut sim_sum = vec![0.0; n_classes];
    let mut sim_count = vec![0usize; n_classes];
    for &(j, s) in &links.links {
        let class = labels[j];
        scores[class] += importance[j] * link_weight(s, gamma);
        sim_sum[class] += s;
        sim_count[class] += 1;
    }
    let mean_sim = |c: usize| {
        if sim_count[c] == 0 {
            f64::NEG_INFINITY
        } else {
            sim_sum[c] / sim_count[c] as f64
        }
    };
    let mut best = 0;
    for c in 1..n_classes {
        if scores[c] > scores[best] || (scores[c] == scores[best] && mean_sim(c) > mean_sim(best))
        {
            best = c;
        }
    }
    Prediction {
        class: best,
        scores,
    }
}

/// Training vertices with their importance, ready to classify queries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImportanceClassifier {
    pub metric: Metric,
    pub gamma: f64,
    pub q_test: usize,
    pub n_classes: usize,
    pub train: Vec<Vec<f64>>,
    pub labels: Vec<usize>,
    pub importance: Vec<f64>,
}

impl ImportanceClassifier {
    pub fn classify(&self, query: &[f64]) -> Result<Prediction> {
        let links = QueryLinks::new(query, &self.train, self.metric, self.q_test)?;
        Ok(self.score(&links))
    }

    pub fn score(&self, links: &QueryLinks) -> Prediction {
        score_query(
            links,
            &self.labels,
            self.n_classes,
            &self.importance,
            self.gamma,
        )
    }

    pub fn predict_all(&self, queries: &[Vec<f64>]) -> Result<Vec<usize>> {
        queries
            .iter()
            .map(|y| self.classify(y).map(|p| p.class))
            .collect()
    }
}
