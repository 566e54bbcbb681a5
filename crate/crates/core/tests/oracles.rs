//! Library results checked against straight-line reference computations.

mod common;

use rand::Rng;
use rand_distr::{Distribution, Normal};

use ganet::evolve::{evaluate, Genome};
use ganet::graph::{
    build_map_all, compute_importance, decode, pagerank_importance, ClassGraph,
    ImportanceClassifier, ImportanceConfig, Metric, SimilarityMatrix,
};
use ganet::spectra::savgol::SavitzkyGolay;

fn gaussian_toy(seed: u64, per_class: usize, dim: usize) -> (Vec<Vec<f64>>, Vec<usize>) {
    let mut rng = common::rng(seed);
    let noise = Normal::new(0.0, 1.0).unwrap();
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    for class in 0..2 {
        for _ in 0..per_class {
            rows.push(
                (0..dim)
                    .map(|_| class as f64 * 1.5 + noise.sample(&mut rng))
                    .collect(),
            );
            labels.push(class);
        }
    }
    (rows, labels)
}

fn euclid_sim(a: &[f64], b: &[f64]) -> f64 {
    let mut d2 = 0.0;
    for i in 0..a.len() {
        d2 += (a[i] - b[i]).powi(2);
    }
    1.0 / (1.0 + d2.sqrt())
}

/// Class score computed literally: link to the `q_test` nearest training
/// vertices, sum importance times similarity^gamma per class, take the max.
fn classify_literal(
    query: &[f64],
    train: &[Vec<f64>],
    labels: &[usize],
    importance: &[f64],
    q_test: usize,
    gamma: f64,
) -> usize {
    let mut order: Vec<usize> = (0..train.len()).collect();
    let sims: Vec<f64> = train.iter().map(|t| euclid_sim(query, t)).collect();
    order.sort_by(|&a, &b| sims[b].partial_cmp(&sims[a]).unwrap().then(a.cmp(&b)));
    let mut score = [0.0f64; 2];
    let mut mean = [0.0f64; 2];
    let mut count = [0usize; 2];
    for &j in &order[..q_test] {
        score[labels[j]] += importance[j] * sims[j].powf(gamma);
        mean[labels[j]] += sims[j];
        count[labels[j]] += 1;
    }
    let m = |c: usize| {
        if count[c] == 0 {
            f64::NEG_INFINITY
        } else {
            mean[c] / count[c] as f64
        }
    };
    if score[1] > score[0] || (score[1] == score[0] && m(1) > m(0)) {
        1
    } else {
        0
    }
}

#[test]
fn classification_matches_literal_score_formula() {
    let (train, labels) = gaussian_toy(11, 10, 2);
    let sim = SimilarityMatrix::from_rows(&train, Metric::Euclidean).unwrap();
    let map = build_map_all(&sim, &labels, 3).unwrap();
    let mut rng = common::rng(11);
    let genome =
        Genome::from_bits(20, 3, (0..60).map(|_| rng.gen_bool(0.6)).collect()).unwrap();
    let graph = decode(&genome, &map, &labels).unwrap();
    let importance = compute_importance(&graph, &ImportanceConfig::default()).unwrap();

    let classifier = ImportanceClassifier {
        metric: Metric::Euclidean,
        gamma: 2.0,
        q_test: 3,
        n_classes: 2,
        train: train.clone(),
        labels: labels.clone(),
        importance: importance.clone(),
    };
    let (queries, _) = gaussian_toy(12, 25, 2);
    for q in &queries {
        let expected = classify_literal(q, &train, &labels, &importance, 3, 2.0);
        assert_eq!(classifier.classify(q).unwrap().class, expected, "query {q:?}");
    }
}

#[test]
fn zero_genome_fitness_is_uniform_importance_accuracy() {
    let (train, labels) = gaussian_toy(21, 8, 3);
    let (val, val_labels) = gaussian_toy(22, 6, 3);
    let sim = SimilarityMatrix::from_rows(&train, Metric::Euclidean).unwrap();
    let map = build_map_all(&sim, &labels, 3).unwrap();

    let uniform = vec![1.0 / train.len() as f64; train.len()];
    let correct = val
        .iter()
        .zip(&val_labels)
        .filter(|(q, &t)| classify_literal(q, &train, &labels, &uniform, 3, 1.0) == t)
        .count();
    let expected = correct as f64 / val.len() as f64;

    let got = evaluate(
        &Genome::zeros(16, 3),
        &map,
        &train,
        &labels,
        2,
        &val,
        &val_labels,
        Metric::Euclidean,
        &ImportanceConfig::default(),
        3,
    )
    .unwrap();
    assert_eq!(got, expected);
}

#[test]
fn pagerank_two_sources_into_sink() {
    // a -> c, b -> c
    let g = ClassGraph::from_edges(vec![0; 3], &[(0, 2), (1, 2)]).unwrap();
    let power = pagerank_importance(&g, &ImportanceConfig::default()).unwrap();
    let dense = common::pagerank_dense(3, &[(0, 2), (1, 2)], 0.85);
    for (a, b) in power.iter().zip(&dense) {
        assert!((a - b).abs() < 1e-8);
    }
    assert!(power[2] > power[0]);
    assert!((power[0] - power[1]).abs() < 1e-15);
}

#[test]
fn pagerank_matches_dense_solve_at_other_dampings() {
    let mut rng = common::rng(31);
    for damping in [0.5, 0.7, 0.95] {
        let cfg = ImportanceConfig {
            pagerank_damping: damping,
            ..ImportanceConfig::default()
        };
        for _ in 0..20 {
            let n = rng.gen_range(2..=10);
            let (g, edges) = common::random_digraph(&mut rng, n);
            let power = pagerank_importance(&g, &cfg).unwrap();
            let dense = common::pagerank_dense(n, &edges, damping);
            for (a, b) in power.iter().zip(&dense) {
                assert!((a - b).abs() < 1e-8, "damping {damping}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn map_all_five_items_matches_sort_then_mask() {
    let mut rng = common::rng(7);
    let rows = common::random_rows(&mut rng, 5, 3, false);
    let labels = vec![0, 1, 0, 1, 1];
    let sim = SimilarityMatrix::from_rows(&rows, Metric::Euclidean).unwrap();
    let map = build_map_all(&sim, &labels, 3).unwrap();
    assert_eq!(map.entries(), common::map_all_brute(&sim, &labels, 3).as_slice());
}

/// Savitzky-Golay output at every point equals the least-squares polynomial
/// fitted to the point's window (the first/last full window near the ends).
#[test]
fn savgol_matches_direct_least_squares() {
    let mut rng = common::rng(41);
    let row: Vec<f64> = (0..40).map(|_| rng.gen_range(-1.0..1.0)).collect();
    for (window, degree) in [(5, 2), (7, 3), (9, 2), (11, 4)] {
        for deriv in [0, 1] {
            let filter = SavitzkyGolay::new(window, degree, deriv).unwrap();
            let out = filter.apply(&row).unwrap();
            let half = window / 2;
            for (i, &got) in out.iter().enumerate() {
                let start = i.saturating_sub(half).min(row.len() - window);
                let xs: Vec<f64> = (start..start + window).map(|k| k as f64).collect();
                let expected =
                    common::lsq_poly_at(&xs, &row[start..start + window], degree, i as f64, deriv);
                assert!(
                    (got - expected).abs() < 1e-9,
                    "w{window} d{degree} deriv{deriv} i{i}: {got} vs {expected}"
                );
            }
        }
    }
}

#[test]
fn savgol_quadratic_unchanged() {
    let ys: Vec<f64> = (0..7).map(|i| (i * i) as f64).collect();
    let out = SavitzkyGolay::new(5, 2, 0).unwrap().apply(&ys).unwrap();
    for (a, b) in out.iter().zip(&ys) {
        assert!((a - b).abs() < 1e-9);
    }
}
