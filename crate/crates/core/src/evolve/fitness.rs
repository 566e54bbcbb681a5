use rayon::prelude::*;

use super::genome::Genome;
use crate::error::{Error, Result};
use crate::graph::{compute_importance, decode, score_query, ImportanceConfig, MapMatrix, Metric, QueryLinks};

/// Validation items pre-linked to the training vertices. Query links do not
/// depend on the genome, so each evaluation is decode + importance + scoring.
#[derive(Debug, Clone)]
pub struct FitnessContext<'a> {
    map: &'a MapMatrix,
    train_labels: &'a [usize],
    n_classes: usize,
    links: Vec<QueryLinks>,
    truth: Vec<usize>,
    importance: ImportanceConfig,
}

impl<'a> FitnessContext<'a> {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        map: &'a MapMatrix,
        train_rows: &[Vec<f64>],
        train_labels: &'a [usize],
        n_classes: usize,
        validation_rows: &[Vec<f64>],
        validation_labels: &[usize],
        metric: Metric,
        importance: ImportanceConfig,
        q_test: usize,
    ) -> Result<Self> {
        if validation_rows.is_empty() {
            return Err(Error::Invalid("validation set is empty".into()));
        }
        if validation_rows.len() != validation_labels.len() {
            return Err(Error::Dimension {
                expected: validation_rows.len(),
                actual: validation_labels.len(),
            });
        }
        if train_rows.len() != map.n() || train_labels.len() != map.n() {
            return Err(Error::Dimension {
                expected: map.n(),
                actual: train_rows.len(),
            });
        }
        let links = validation_rows
            .iter()
            .map(|y| QueryLinks::new(y, train_rows, metric, q_test))
            .collect::<Result<Vec<_>>>()?;
        Ok(FitnessContext {
            map,
            train_labels,
            n_classes,
            links,
            truth: validation_labels.to_vec(),
            importance,
        })
    }

    /// Validation accuracy of the importance classifier on the genome's graph.
    pub fn evaluate(&self, genome: &Genome) -> Result<f64> {
        let graph = decode(genome, self.map, self.train_labels)?;
        let importance = compute_importance(&graph, &self.importance)?;
        let correct = self
            .links
            .iter()
            .zip(&self.truth)
            .filter(|(links, &truth)| {
                score_query(
                    links,
                    self.train_labels,
                    self.n_classes,
                    &importance,
                    self.importance.gamma,
                )
                .class
                    == truth
            })
            .count();
        Ok(correct as f64 / self.truth.len() as f64)
    }

    /// Evaluates every genome (in parallel) and stores its fitness. Results
    /// are written back in population order.
    pub fn evaluate_all(&self, pop: &mut [Genome]) -> Result<()> {
        let scores = pop
            .par_iter()
            .map(|g| self.evaluate(g))
            .collect::<Result<Vec<f64>>>()?;
        for (g, f) in pop.iter_mut().zip(scores) {
            g.fitness = Some(f);
        }
        Ok(())
    }
}
