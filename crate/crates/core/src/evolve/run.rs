use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::config::{Crossover, GanetConfig, Selection};
use super::fitness::FitnessContext;
use super::genome::Genome;
use super::operators::{
    crossover_two_point, crossover_uniform, init_population_with, mutate, reinsert,
    select_roulette, select_tournament,
};
use crate::error::{Error, Result};
use crate::graph::{
    build_map_all, compute_importance, decode, ClassGraph, ImportanceClassifier, MapMatrix,
    Prediction, SimilarityMatrix,
};
use crate::labels::LabelSet;
use crate::spectra::{preprocess, SpectrumDataset};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenerationStats {
    pub generation: usize,
    /// Best fitness in the current population.
    pub best: f64,
    pub mean: f64,
    /// Best fitness seen in any generation so far.
    pub best_ever: f64,
}

/// A trained classifier: the best genome, the graph it decodes to and the
/// training spectra it was built on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GanetModel {
    pub config: GanetConfig,
    pub labels: LabelSet,
    pub map: MapMatrix,
    pub best_genome: Genome,
    pub train_graph: ClassGraph,
    /// Training spectra after preprocessing.
    pub train_data: SpectrumDataset,
    pub history: Vec<GenerationStats>,
}

impl GanetModel {
    /// Builds a model around a fixed genome, without any search.
    pub fn from_genome(
        train: &SpectrumDataset,
        genome: Genome,
        config: GanetConfig,
    ) -> Result<GanetModel> {
        config.validate()?;
        let labels = LabelSet::new(train.labels().iter().cloned());
        let train_labels = labels.encode(train.labels())?;
        let sim = SimilarityMatrix::from_rows(train.samples(), config.metric)?;
        let map = build_map_all(&sim, &train_labels, config.ga.q)?;
        Self::assemble(train, genome, map, labels, train_labels, config, Vec::new())
    }

    fn assemble(
        train: &SpectrumDataset,
        genome: Genome,
        map: MapMatrix,
        labels: LabelSet,
        train_labels: Vec<usize>,
        config: GanetConfig,
        history: Vec<GenerationStats>,
    ) -> Result<GanetModel> {
        let graph = decode(&genome, &map, &train_labels)?;
        let importance = compute_importance(&graph, &config.importance)?;
        let train_graph = graph.with_importance(importance)?;
        Ok(GanetModel {
            config,
            labels,
            map,
            best_genome: genome,
            train_graph,
            train_data: train.clone(),
            history,
        })
    }

    pub fn classifier(&self) -> ImportanceClassifier {
        ImportanceClassifier {
            metric: self.config.metric,
            gamma: self.config.importance.gamma,
            q_test: self.config.q_test(),
            n_classes: self.labels.len(),
            train: self.train_data.samples().to_vec(),
            labels: self.train_graph.labels().to_vec(),
            importance: self
                .train_graph
                .importance()
                .expect("model graph carries importance")
                .to_vec(),
        }
    }

    /// Classifies one already-preprocessed spectrum.
    pub fn classify(&self, y: &[f64]) -> Result<Prediction> {
        self.classifier().classify(y)
    }

    /// Predicted label names for an already-preprocessed dataset.
    pub fn predict(&self, ds: &SpectrumDataset) -> Result<Vec<String>> {
        self.check_axis(ds)?;
        let classifier = self.classifier();
        ds.samples()
            .iter()
            .map(|y| {
                classifier
                    .classify(y)
                    .map(|p| self.labels.name(p.class).to_string())
            })
            .collect()
    }

    /// Applies the stored preprocessing to raw spectra, then predicts.
    pub fn predict_raw(&self, raw: &SpectrumDataset) -> Result<Vec<String>> {
        let ds = preprocess(raw, &self.config.preprocess)?;
        self.predict(&ds)
    }

    fn check_axis(&self, ds: &SpectrumDataset) -> Result<()> {
        let expected = self.train_data.wavenumbers();
        let actual = ds.wavenumbers();
        let same = expected.len() == actual.len()
            && expected
                .iter()
                .zip(actual)
                .all(|(a, b)| (a - b).abs() <= 1e-6 * a.abs().max(1.0));
        if same {
            Ok(())
        } else {
            Err(Error::Dimension {
                expected: expected.len(),
                actual: actual.len(),
            })
        }
    }

    /// Validation accuracy of the stored genome on `validation`.
    pub fn validation_fitness(&self, validation: &SpectrumDataset) -> Result<f64> {
        let train_labels = self.train_graph.labels();
        let val_labels = self.labels.encode(validation.labels())?;
        let ctx = FitnessContext::new(
            &self.map,
            self.train_data.samples(),
            train_labels,
            self.labels.len(),
            validation.samples(),
            &val_labels,
            self.config.metric,
            self.config.importance,
            self.config.q_test(),
        )?;
        ctx.evaluate(&self.best_genome)
    }

    pub fn best_fitness(&self) -> Option<f64> {
        self.best_genome.fitness
    }
}

/// Evolves edge selections over the training graph, scoring each genome by
/// its validation accuracy. Both datasets must already be preprocessed.
///
/// The returned model holds the best genome seen in any generation.
pub fn run_ganet(
    train: &SpectrumDataset,
    validation: &SpectrumDataset,
    cfg: &GanetConfig,
) -> Result<GanetModel> {
    cfg.validate()?;
    if train.wavenumbers() != validation.wavenumbers() {
        return Err(Error::Dimension {
            expected: train.n_wavenumbers(),
            actual: validation.n_wavenumbers(),
        });
    }
    let labels = LabelSet::new(train.labels().iter().cloned());
    let train_labels = labels.encode(train.labels())?;
    let val_labels = labels.encode(validation.labels())?;

    let sim = SimilarityMatrix::from_rows(train.samples(), cfg.metric)?;
    let map = build_map_all(&sim, &train_labels, cfg.ga.q)?;
    let ctx = FitnessContext::new(
        &map,
        train.samples(),
        &train_labels,
        labels.len(),
        validation.samples(),
        &val_labels,
        cfg.metric,
        cfg.importance,
        cfg.q_test(),
    )?;

    let ga = &cfg.ga;
    let mutation_rate = ga.mutation_rate_for(map.n());
    let mut rng = ChaCha8Rng::seed_from_u64(ga.seed);

    let mut population = init_population_with(&mut rng, map.n(), map.q(), ga.population_size);
    ctx.evaluate_all(&mut population)?;
    let mut best = fittest(&population).clone();
    let mut history = vec![stats(0, &population, &best)];

    for generation in 1..=ga.generations {
        let mut offspring = Vec::with_capacity(ga.population_size);
        while offspring.len() < ga.population_size {
            let a = &population[select(&population, ga.selection, ga.tournament_size, &mut rng)];
            let b = &population[select(&population, ga.selection, ga.tournament_size, &mut rng)];
            let (c1, c2) = if rng.gen_bool(ga.crossover_rate) {
                match ga.crossover {
                    Crossover::TwoPoint => crossover_two_point(a, b, &mut rng),
                    Crossover::Uniform => crossover_uniform(a, b, &mut rng),
                }
            } else {
                (a.clone(), b.clone())
            };
            offspring.push(mutate(&c1, mutation_rate, &mut rng));
            offspring.push(mutate(&c2, mutation_rate, &mut rng));
        }
        ctx.evaluate_all(&mut offspring)?;

        let champion = fittest(&offspring);
        if champion.fitness_or_min() > best.fitness_or_min() {
            best = champion.clone();
        }
        population = reinsert(population, offspring, ga.reinsertion);
        history.push(stats(generation, &population, &best));
    }

    GanetModel::assemble(train, best, map, labels, train_labels, cfg.clone(), history)
}

fn select<R: Rng + ?Sized>(pop: &[Genome], selection: Selection, k: usize, rng: &mut R) -> usize {
    match selection {
        Selection::Tournament => select_tournament(pop, k, rng),
        Selection::Roulette => select_roulette(pop, rng),
    }
}

/// First genome with the maximum fitness.
fn fittest(pop: &[Genome]) -> &Genome {
    pop.iter()
        .reduce(|best, g| {
            if g.fitness_or_min() > best.fitness_or_min() {
                g
            } else {
                best
            }
        })
        .expect("non-empty population")
}

fn stats(generation: usize, pop: &[Genome], best: &Genome) -> GenerationStats {
    let fitness: Vec<f64> = pop.iter().map(Genome::fitness_or_min).collect();
    GenerationStats {
        generation,
        best: fitness.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        mean: fitness.iter().sum::<f64>() / fitness.len() as f64,
        best_ever: best.fitness_or_min(),
    }
}
