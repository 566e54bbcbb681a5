//! Independent reference implementations and fixtures shared by the
//! integration tests.

#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ganet::graph::{ClassGraph, SimilarityMatrix};
use ganet::spectra::SpectrumDataset;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// PageRank as the solution of the linear system
/// `(I - d P^T - (d/n) 1 dangling^T) x = (1 - d)/n 1`, solved by LU.
pub fn pagerank_dense(n: usize, edges: &[(usize, usize)], damping: f64) -> Vec<f64> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(i, j) in edges {
        if !out[i].contains(&j) {
            out[i].push(j);
        }
    }
    let nf = n as f64;
    let mut a = DMatrix::<f64>::identity(n, n);
    for (i, targets) in out.iter().enumerate() {
        if targets.is_empty() {
            for r in 0..n {
                a[(r, i)] -= damping / nf;
            }
        } else {
            let w = damping / targets.len() as f64;
            for &j in targets {
                a[(j, i)] -= w;
            }
        }
    }
    let b = DVector::from_element(n, (1.0 - damping) / nf);
    let x = a.lu().solve(&b).expect("pagerank system is non-singular");
    let sum: f64 = x.iter().sum();
    x.iter().map(|v| v / sum).collect()
}

/// Random same-label digraph on `n` vertices without self-loops.
pub fn random_digraph(rng: &mut ChaCha8Rng, n: usize) -> (ClassGraph, Vec<(usize, usize)>) {
    let p: f64 = rng.gen_range(0.0..0.6);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    (ClassGraph::from_edges(vec![0; n], &edges).unwrap(), edges)
}

/// Map rows by full sort: similarity descending, index ascending, then mask
/// other-class slots.
pub fn map_all_brute(sim: &SimilarityMatrix, labels: &[usize], q: usize) -> Vec<Option<usize>> {
    let n = sim.len();
    let mut out = Vec::with_capacity(n * q);
    for i in 0..n {
        let mut js: Vec<usize> = (0..n).filter(|&j| j != i).collect();
        js.sort_by(|&a, &b| {
            sim.get(i, b)
                .partial_cmp(&sim.get(i, a))
                .unwrap()
                .then(a.cmp(&b))
        });
        out.extend(
            js[..q]
                .iter()
                .map(|&j| if labels[j] == labels[i] { Some(j) } else { None }),
        );
    }
    out
}

/// Random rows, optionally rounded to a coarse grid so that ties occur.
pub fn random_rows(rng: &mut ChaCha8Rng, n: usize, dim: usize, coarse: bool) -> Vec<Vec<f64>> {
    (0..n)
        .map(|_| {
            (0..dim)
                .map(|_| {
                    let v: f64 = rng.gen_range(-1.0..1.0);
                    if coarse {
                        (v * 2.0).round() / 2.0
                    } else {
                        v
                    }
                })
                .collect()
        })
        .collect()
}

/// Dataset with one sample per subject on an evenly spaced descending axis.
pub fn dataset(rows: Vec<Vec<f64>>, labels: Vec<String>) -> SpectrumDataset {
    let n = rows.len();
    let dim = rows[0].len();
    SpectrumDataset::new(
        (0..dim).map(|i| 1000.0 - i as f64).collect(),
        rows,
        labels,
        (0..n).map(|i| format!("subj{i}")).collect(),
        (0..n).map(|i| format!("smp{i}")).collect(),
    )
    .unwrap()
}

/// Least-squares polynomial fit evaluated at (or differentiated at) the
/// centre `x0`, solved directly with nalgebra's SVD.
pub fn lsq_poly_at(xs: &[f64], ys: &[f64], degree: usize, x0: f64, deriv: usize) -> f64 {
    let m = xs.len();
    let a = DMatrix::from_fn(m, degree + 1, |r, c| (xs[r] - x0).powi(c as i32));
    let b = DVector::from_column_slice(ys);
    let coef = a
        .svd(true, true)
        .solve(&b, 1e-14)
        .expect("least squares solve");
    match deriv {
        0 => coef[0],
        1 => coef[1],
        _ => unreachable!(),
    }
}
