mod common;

use proptest::prelude::*;

use ganet::baselines::{harmonic_mean3, metrics, ConfusionCounts};
use ganet::evolve::{two_point_at, uniform_with_mask, Genome};
use ganet::graph::{
    build_map_all, compute_importance, decode, degree_importance, ClassGraph,
    ImportanceClassifier, ImportanceConfig, ImportanceMeasure, Metric, SimilarityMatrix,
};
use ganet::spectra::savgol::SavitzkyGolay;
use ganet::spectra::{read_csv, split_by_subject, write_csv, SpectrumDataset, SplitSpec};

fn rows_strategy(max_n: usize, dim: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(prop::collection::vec(-10.0f64..10.0, dim), 4..=max_n)
}

fn genome_strategy(rows: usize, cols: usize) -> impl Strategy<Value = Genome> {
    prop::collection::vec(any::<bool>(), rows * cols)
        .prop_map(move |bits| Genome::from_bits(rows, cols, bits).unwrap())
}

fn edges_strategy(n: usize) -> impl Strategy<Value = Vec<(usize, usize)>> {
    prop::collection::vec((0..n, 0..n), 0..3 * n)
        .prop_map(|e| e.into_iter().filter(|(a, b)| a != b).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn decode_is_monotone_and_union_preserving(
        rows in rows_strategy(12, 3),
        seed in any::<u64>(),
    ) {
        let n = rows.len();
        let q = 3.min(n - 1);
        let labels: Vec<usize> = (0..n).map(|i| i % 2).collect();
        let sim = SimilarityMatrix::from_rows(&rows, Metric::Euclidean).unwrap();
        let map = build_map_all(&sim, &labels, q).unwrap();
        let mut rng = common::rng(seed);
        let a = ganet::evolve::init_population_with(&mut rng, n, q, 1).remove(0);
        let b = ganet::evolve::init_population_with(&mut rng, n, q, 1).remove(0);
        let ga = decode(&a, &map, &labels).unwrap();
        let gb = decode(&b, &map, &labels).unwrap();
        let gu = decode(&a.union(&b).unwrap(), &map, &labels).unwrap();
        let mut expected: Vec<_> = ga.edges().chain(gb.edges()).collect();
        expected.sort_unstable();
        expected.dedup();
        let got: Vec<_> = gu.edges().collect();
        prop_assert_eq!(got, expected);
        for (i, j) in ga.edges() {
            prop_assert!(gu.has_edge(i, j));
            prop_assert_eq!(labels[i], labels[j]);
        }
        let full = decode(&Genome::ones(n, q), &map, &labels).unwrap();
        prop_assert_eq!(full.edge_count(), map.filled());
    }

    #[test]
    fn importance_sums_to_one(n in 1usize..12, edges in edges_strategy(12), pr in any::<bool>()) {
        let edges: Vec<_> = edges.into_iter().filter(|&(a, b)| a < n && b < n).collect();
        let g = ClassGraph::from_edges(vec![0; n], &edges).unwrap();
        let cfg = ImportanceConfig {
            measure: if pr { ImportanceMeasure::Pagerank } else { ImportanceMeasure::Degree },
            ..ImportanceConfig::default()
        };
        let imp = compute_importance(&g, &cfg).unwrap();
        prop_assert!((imp.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        prop_assert!(imp.iter().all(|v| *v >= 0.0));
    }

    #[test]
    fn importance_is_permutation_equivariant(
        n in 2usize..10,
        edges in edges_strategy(10),
        shift in 1usize..10,
        pr in any::<bool>(),
    ) {
        let edges: Vec<_> = edges.into_iter().filter(|&(a, b)| a < n && b < n).collect();
        let perm = |v: usize| (v + shift) % n;
        let g = ClassGraph::from_edges(vec![0; n], &edges).unwrap();
        let moved: Vec<_> = edges.iter().map(|&(a, b)| (perm(a), perm(b))).collect();
        let h = ClassGraph::from_edges(vec![0; n], &moved).unwrap();
        let cfg = ImportanceConfig {
            measure: if pr { ImportanceMeasure::Pagerank } else { ImportanceMeasure::Degree },
            ..ImportanceConfig::default()
        };
        let a = compute_importance(&g, &cfg).unwrap();
        let b = compute_importance(&h, &cfg).unwrap();
        for v in 0..n {
            prop_assert!((a[v] - b[perm(v)]).abs() < 1e-10);
        }
    }

    #[test]
    fn degree_of_edgeless_graph_is_uniform(n in 1usize..20) {
        let g = ClassGraph::from_edges(vec![0; n], &[]).unwrap();
        prop_assert!(degree_importance(&g).iter().all(|v| (*v - 1.0 / n as f64).abs() < 1e-15));
    }

    #[test]
    fn split_keeps_subjects_whole(
        subjects in 6usize..40,
        reps in 1usize..4,
        seed in any::<u64>(),
    ) {
        let n = subjects * reps;
        let ds = SpectrumDataset::new(
            vec![2.0, 1.0],
            (0..n).map(|i| vec![i as f64, 1.0]).collect(),
            (0..n).map(|i| if (i / reps) % 2 == 0 { "A" } else { "B" }.to_string()).collect(),
            (0..n).map(|i| format!("s{}", i / reps)).collect(),
            (0..n).map(|i| format!("x{i}")).collect(),
        ).unwrap();
        let spec = SplitSpec { seed, ..SplitSpec::default() };
        let split = split_by_subject(&ds, &spec).unwrap();
        let sizes = split.sizes();
        prop_assert_eq!(sizes.iter().sum::<usize>(), n);
        let parts = [&split.train, &split.validation, &split.test];
        let mut all: Vec<String> = parts.iter().flat_map(|p| p.sample_ids().to_vec()).collect();
        all.sort();
        all.dedup();
        prop_assert_eq!(all.len(), n);
        for (i, a) in parts.iter().enumerate() {
            for b in &parts[i + 1..] {
                for s in a.subjects() {
                    prop_assert!(!b.subjects().contains(&s));
                }
            }
        }
        prop_assert_eq!(split, split_by_subject(&ds, &spec).unwrap());
    }

    #[test]
    fn csv_round_trip_is_exact(
        rows in prop::collection::vec(prop::collection::vec(-1e6f64..1e6, 5), 1..8),
    ) {
        let n = rows.len();
        let ds = SpectrumDataset::new(
            vec![1800.5, 1700.25, 1500.0, 1200.125, 900.0],
            rows,
            (0..n).map(|i| if i % 2 == 0 { "ASD" } else { "TD" }.to_string()).collect(),
            (0..n).map(|i| format!("S{i}")).collect(),
            (0..n).map(|i| format!("S{i}_R1")).collect(),
        ).unwrap();
        let mut buf = Vec::new();
        write_csv(&ds, &mut buf).unwrap();
        prop_assert_eq!(read_csv(buf.as_slice()).unwrap(), ds);
    }

    #[test]
    fn savgol_reproduces_low_degree_polynomials(
        c in prop::array::uniform3(-5.0f64..5.0),
        half in 1usize..6,
        len in 15usize..40,
    ) {
        let window = 2 * half + 1;
        let ys: Vec<f64> = (0..len)
            .map(|i| { let x = i as f64 * 0.1; c[0] + c[1] * x + c[2] * x * x })
            .collect();
        let out = SavitzkyGolay::new(window, 2, 0).unwrap().apply(&ys).unwrap();
        for (a, b) in out.iter().zip(&ys) {
            prop_assert!((a - b).abs() < 1e-9);
        }
        let d = SavitzkyGolay::new(window, 2, 1).unwrap().apply(&ys).unwrap();
        for (i, v) in d.iter().enumerate() {
            let x = i as f64 * 0.1;
            let exact = (c[1] + 2.0 * c[2] * x) * 0.1;
            prop_assert!((v - exact).abs() < 1e-9);
        }
    }

    #[test]
    fn euclidean_classification_ignores_query_translation(
        rows in rows_strategy(10, 3),
        query in prop::collection::vec(-10.0f64..10.0, 3),
        offset in prop::collection::vec(-5.0f64..5.0, 3),
    ) {
        let n = rows.len();
        let clf = |train: Vec<Vec<f64>>| ImportanceClassifier {
            metric: Metric::Euclidean,
            gamma: 1.0,
            q_test: 3,
            n_classes: 2,
            train,
            labels: (0..n).map(|i| i % 2).collect(),
            importance: vec![1.0 / n as f64; n],
        };
        let shift = |v: &Vec<f64>| v.iter().zip(&offset).map(|(a, b)| a + b).collect::<Vec<f64>>();
        let base = clf(rows.clone()).classify(&query).unwrap();
        let moved = clf(rows.iter().map(shift).collect()).classify(&shift(&query)).unwrap();
        prop_assert_eq!(base.class, moved.class);
    }

    #[test]
    fn cosine_classification_ignores_query_scale(
        rows in rows_strategy(10, 3),
        query in prop::collection::vec(0.5f64..10.0, 3),
        scale in 0.1f64..100.0,
    ) {
        prop_assume!(rows.iter().all(|r| r.iter().any(|v| *v != 0.0)));
        let n = rows.len();
        let clf = ImportanceClassifier {
            metric: Metric::Cosine,
            gamma: 2.0,
            q_test: 3,
            n_classes: 2,
            train: rows,
            labels: (0..n).map(|i| i % 2).collect(),
            importance: vec![1.0 / n as f64; n],
        };
        let scaled: Vec<f64> = query.iter().map(|v| v * scale).collect();
        let a = clf.classify(&query).unwrap();
        let b = clf.classify(&scaled).unwrap();
        prop_assert_eq!(a.class, b.class);
    }

    #[test]
    fn crossover_conserves_bits_per_position(
        a in genome_strategy(3, 4),
        b in genome_strategy(3, 4),
        p in 0usize..=12,
        r in 0usize..=12,
        mask in prop::collection::vec(any::<bool>(), 12),
    ) {
        let (p1, p2) = (p.min(r), p.max(r));
        for (c1, c2) in [two_point_at(&a, &b, p1, p2), uniform_with_mask(&a, &b, &mask)] {
            for i in 0..12 {
                let mut parents = [a.bits()[i], b.bits()[i]];
                let mut children = [c1.bits()[i], c2.bits()[i]];
                parents.sort();
                children.sort();
                prop_assert_eq!(parents, children);
            }
        }
    }

    #[test]
    fn h_mean_is_bounded_by_components(tp in 0usize..50, fp in 0usize..50, tn in 0usize..50, fn_ in 0usize..50) {
        prop_assume!(tp + fn_ > 0 && tn + fp > 0);
        let m = metrics(&ConfusionCounts { tp, fp, tn, fn_, positive_label: "ASD".into() }).unwrap();
        let lo = m.accuracy.min(m.sensitivity).min(m.specificity);
        let hi = m.accuracy.max(m.sensitivity).max(m.specificity);
        prop_assert!(m.h_mean >= lo - 1e-12 && m.h_mean <= hi + 1e-12);
        prop_assert_eq!(m.h_mean, harmonic_mean3(m.accuracy, m.sensitivity, m.specificity));
    }
}
