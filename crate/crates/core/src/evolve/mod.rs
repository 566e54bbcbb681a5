//! Genetic search over MapAll edge selections.

mod config;
mod fitness;
mod genome;
mod model_io;
mod operators;
mod run;

pub use config::{Crossover, GaConfig, GanetConfig, Preset, Reinsertion, Selection};
pub use fitness::FitnessContext;
pub use genome::Genome;
pub use model_io::{MODEL_FORMAT, MODEL_VERSION};
pub use operators::{
    crossover_two_point, crossover_uniform, init_population, init_population_with, mutate,
    reinsert, select_roulette, select_tournament, two_point_at, uniform_with_mask,
};
pub use run::{run_ganet, GanetModel, GenerationStats};

use crate::error::Result;
use crate::graph::{ImportanceConfig, MapMatrix, Metric};

/// Validation accuracy of `genome` on a labeled validation set.
#[allow(clippy::too_many_arguments)]
pub fn evaluate(
    genome: &Genome,
    map: &MapMatrix,
    train_rows: &[Vec<f64>],
    train_labels: &[usize],
    n_classes: usize,
    validation_rows: &[Vec<f64>],
    validation_labels: &[usize],
    metric: Metric,
    importance: &ImportanceConfig,
    q_test: usize,
) -> Result<f64> {
    FitnessContext::new(
        map,
        train_rows,
        train_labels,
        n_classes,
        validation_rows,
        validation_labels,
        metric,
        *importance,
        q_test,
    )?
    .evaluate(genome)
}
