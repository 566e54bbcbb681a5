//! Genetic operators over flat bit strings.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::config::{GaConfig, Reinsertion};
use super::genome::Genome;
use crate::graph::MapMatrix;

/// Random population shaped for `map`, seeded from `cfg.seed`.
pub fn init_population(map: &MapMatrix, cfg: &GaConfig) -> Vec<Genome> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    init_population_with(&mut rng, map.n(), map.q(), cfg.population_size)
}

/// `size` genomes of i.i.d. fair bits drawn from `rng`.
pub fn init_population_with<R: Rng + ?Sized>(
    rng: &mut R,
    rows: usize,
    cols: usize,
    size: usize,
) -> Vec<Genome> {
    (0..size)
        .map(|_| {
            let bits = (0..rows * cols).map(|_| rng.gen::<bool>()).collect();
            Genome::from_bits(rows, cols, bits).expect("bit count matches shape")
        })
        .collect()
}

/// Index of the fittest of `k` uniform draws (with replacement). Among equal
/// fitness the first draw wins, so a flat population is sampled uniformly.
pub fn select_tournament<R: Rng + ?Sized>(pop: &[Genome], k: usize, rng: &mut R) -> usize {
    assert!(!pop.is_empty(), "tournament over an empty population");
    let mut best = rng.gen_range(0..pop.len());
    for _ in 1..k.max(1) {
        let c = rng.gen_range(0..pop.len());
        if pop[c].fitness_or_min() > pop[best].fitness_or_min() {
            best = c;
        }
    }
    best
}

/// Fitness-proportional choice; uniform when the total fitness is zero.
pub fn select_roulette<R: Rng + ?Sized>(pop: &[Genome], rng: &mut R) -> usize {
    assert!(!pop.is_empty(), "roulette over an empty population");
    let weight = |g: &Genome| g.fitness.unwrap_or(0.0).max(0.0);
    let total: f64 = pop.iter().map(weight).sum();
    if !(total > 0.0) {
        return rng.gen_range(0..pop.len());
    }
    let target = rng.gen::<f64>() * total;
    let mut acc = 0.0;
    let mut last_positive = 0;
    for (i, g) in pop.iter().enumerate() {
        let w = weight(g);
        if w > 0.0 {
            last_positive = i;
            acc += w;
            if target < acc {
                return i;
            }
        }
    }
    last_positive
}

/// Two-point crossover with cut points drawn uniformly from `0..=len`.
pub fn crossover_two_point<R: Rng + ?Sized>(
    a: &Genome,
    b: &Genome,
    rng: &mut R,
) -> (Genome, Genome) {
    assert_eq!(a.shape(), b.shape(), "crossover of different shapes");
    let len = a.len();
    let cuts = index::sample(rng, len + 1, 2);
    let (p1, p2) = (cuts.index(0).min(cuts.index(1)), cuts.index(0).max(cuts.index(1)));
    two_point_at(a, b, p1, p2)
}

/// Children swap the segment `[p1, p2)`.
pub fn two_point_at(a: &Genome, b: &Genome, p1: usize, p2: usize) -> (Genome, Genome) {
    assert!(p1 <= p2 && p2 <= a.len(), "cut points out of range");
    let mut c1 = a.clone();
    let mut c2 = b.clone();
    c1.bits_mut()[p1..p2].copy_from_slice(&b.bits()[p1..p2]);
    c2.bits_mut()[p1..p2].copy_from_slice(&a.bits()[p1..p2]);
    (c1, c2)
}

/// Uniform crossover with a fair random mask.
pub fn crossover_uniform<R: Rng + ?Sized>(
    a: &Genome,
    b: &Genome,
    rng: &mut R,
) -> (Genome, Genome) {
    assert_eq!(a.shape(), b.shape(), "crossover of different shapes");
    let mask: Vec<bool> = (0..a.len()).map(|_| rng.gen::<bool>()).collect();
    uniform_with_mask(a, b, &mask)
}

/// Child 1 copies `a` where the mask is set and `b` elsewhere; child 2 the reverse.
pub fn uniform_with_mask(a: &Genome, b: &Genome, mask: &[bool]) -> (Genome, Genome) {
    assert_eq!(mask.len(), a.len());
    let mut c1 = a.clone();
    let mut c2 = b.clone();
    {
        let (x, y) = (c1.bits_mut(), c2.bits_mut());
        for (k, &m) in mask.iter().enumerate() {
            if !m {
                x[k] = b.bits()[k];
                y[k] = a.bits()[k];
            }
        }
    }
    (c1, c2)
}

/// Flips each bit independently with probability `rate`.
pub fn mutate<R: Rng + ?Sized>(g: &Genome, rate: f64, rng: &mut R) -> Genome {
    let mut out = g.clone();
    for bit in out.bits_mut() {
        if rng.gen_bool(rate) {
            *bit = !*bit;
        }
    }
    out
}

/// Builds the next generation from evaluated parents and offspring.
///
/// Ordered reinsertion keeps the `parents.len()` fittest of both groups;
/// equal fitness prefers offspring, then the lower index.
pub fn reinsert(parents: Vec<Genome>, offspring: Vec<Genome>, mode: Reinsertion) -> Vec<Genome> {
    match mode {
        Reinsertion::Pure => offspring,
        Reinsertion::Ordered => {
            let size = parents.len();
            let mut pool: Vec<(u8, usize, Genome)> = offspring
                .into_iter()
                .enumerate()
                .map(|(i, g)| (0, i, g))
                .chain(parents.into_iter().enumerate().map(|(i, g)| (1, i, g)))
                .collect();
            pool.sort_by(|x, y| {
                y.2.fitness_or_min()
                    .total_cmp(&x.2.fitness_or_min())
                    .then(x.0.cmp(&y.0))
                    .then(x.1.cmp(&y.1))
            });
            pool.into_iter().take(size).map(|(_, _, g)| g).collect()
        }
    }
}
