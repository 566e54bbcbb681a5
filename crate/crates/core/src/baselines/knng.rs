//! Class-constrained k-nearest-neighbour graph baseline.

use crate::error::{Error, Result};
use crate::graph::{compute_importance, ClassGraph, ImportanceClassifier, ImportanceConfig, Metric};
use crate::labels::LabelSet;
use crate::spectra::SpectrumDataset;

/// Importance classifier over the kNN graph of `train`: every vertex points
/// to those of its `k` nearest neighbours that share its label.
pub fn knng_classifier(
    train: &SpectrumDataset,
    k: usize,
    metric: Metric,
    importance: &ImportanceConfig,
) -> Result<(LabelSet, ImportanceClassifier)> {
    importance.validate()?;
    let n = train.n_samples();
    if k == 0 || k + 1 > n {
        return Err(Error::Config(format!(
            "k must satisfy 1 <= k <= n_train - 1 (k = {k}, n_train = {n})"
        )));
    }
    let labels = LabelSet::new(train.labels().iter().cloned());
    let classes = labels.encode(train.labels())?;
    let rows = train.samples();

    let mut edges = Vec::with_capacity(n * k);
    for i in 0..n {
        let mut others: Vec<(usize, f64)> = (0..n)
            .filter(|&j| j != i)
            .map(|j| (j, metric.similarity(&rows[i], &rows[j])))
            .collect();
        if others.iter().any(|(_, s)| s.is_nan()) {
            return Err(Error::Invalid(format!(
                "similarity undefined for sample {}",
                train.sample_ids()[i]
            )));
        }
        others.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        edges.extend(
            others
                .iter()
                .take(k)
                .filter(|(j, _)| classes[*j] == classes[i])
                .map(|(j, _)| (i, *j)),
        );
    }
    let graph = ClassGraph::from_edges(classes.clone(), &edges)?;
    let scores = compute_importance(&graph, importance)?;
    let classifier = ImportanceClassifier {
        metric,
        gamma: importance.gamma,
        q_test: importance.q_test_or(k),
        n_classes: labels.len(),
        train: rows.to_vec(),
        labels: classes,
        importance: scores,
    };
    Ok((labels, classifier))
}

/// Predicted label names for every row of `test`.
pub fn knng_classify(
    train: &SpectrumDataset,
    test: &SpectrumDataset,
    k: usize,
    metric: Metric,
    importance: &ImportanceConfig,
) -> Result<Vec<String>> {
    let (labels, classifier) = knng_classifier(train, k, metric, importance)?;
    test.samples()
        .iter()
        .map(|y| classifier.classify(y).map(|p| labels.name(p.class).to_string()))
        .collect()
}
