//! Vertex importance: normalized undirected degree or PageRank.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::class_graph::ClassGraph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ImportanceMeasure {
    Degree,
    Pagerank,
}

impl fmt::Display for ImportanceMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ImportanceMeasure::Degree => "degree",
            ImportanceMeasure::Pagerank => "pagerank",
        })
    }
}

impl FromStr for ImportanceMeasure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "degree" => Ok(ImportanceMeasure::Degree),
            "pagerank" => Ok(ImportanceMeasure::Pagerank),
            other => Err(Error::Config(format!(
                "unknown importance measure `{other}` (expected degree or pagerank)"
            ))),
        }
    }
}

/// Importance measure plus the class-score parameters used at query time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ImportanceConfig {
    pub measure: ImportanceMeasure,
    pub pagerank_damping: f64,
    pub pagerank_tol: f64,
    pub pagerank_max_iter: usize,
    /// Exponent on the similarity weight of each query link.
    pub gamma: f64,
    /// Links formed by a query; `None` means "same as the graph's q".
    pub q_test: Option<usize>,
}

impl Default for ImportanceConfig {
    fn default() -> Self {
        ImportanceConfig {
            measure: ImportanceMeasure::Degree,
            pagerank_damping: 0.85,
            pagerank_tol: 1e-10,
            pagerank_max_iter: 1000,
            gamma: 1.0,
            q_test: None,
        }
    }
}

impl ImportanceConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.pagerank_damping > 0.0 && self.pagerank_damping < 1.0) {
            return Err(Error::Config(format!(
                "pagerank damping must be in (0, 1), got {}",
                self.pagerank_damping
            )));
        }
        if !(self.pagerank_tol > 0.0) {
            return Err(Error::Config(format!(
                "pagerank tolerance must be positive, got {}",
                self.pagerank_tol
            )));
        }
        if !(self.gamma > 0.0 && self.gamma.is_finite()) {
            return Err(Error::Config(format!(
                "gamma must be a positive real, got {}",
                self.gamma
            )));
        }
        if self.q_test == Some(0) {
            return Err(Error::Config("q_test must be positive".into()));
        }
        Ok(())
    }

    pub fn q_test_or(&self, q: usize) -> usize {
        self.q_test.unwrap_or(q)
    }
}

/// Importance under the configured measure.
pub fn compute_importance(g: &ClassGraph, cfg: &ImportanceConfig) -> Result<Vec<f64>> {
    match cfg.measure {
        ImportanceMeasure::Degree => Ok(degree_importance(g)),
        ImportanceMeasure::Pagerank => pagerank_importance(g, cfg),
    }
}

/// Undirected degree over the sum of degrees. A pair linked in both
/// directions counts once. Edgeless graphs get the uniform distribution.
pub fn degree_importance(g: &ClassGraph) -> Vec<f64> {
    let n = g.n();
    let mut degree = vec![0usize; n];
    let mut total = 0usize;
    for (i, j) in g.edges() {
        // count the reverse edge only from the lower endpoint
        if g.has_edge(j, i) && j < i {
            continue;
        }
        degree[i] += 1;
        degree[j] += 1;
        total += 2;
    }
    if total == 0 {
        return vec![1.0 / n as f64; n];
    }
    degree
        .into_iter()
        .map(|d| d as f64 / total as f64)
        .collect()
}

/// PageRank by power iteration with uniform teleport and dangling mass spread
/// uniformly. Stops once the L1 change drops below `cfg.pagerank_tol`.
pub fn pagerank_importance(g: &ClassGraph, cfg: &ImportanceConfig) -> Result<Vec<f64>> {
    let n = g.n();
    if n == 0 {
        return Ok(Vec::new());
    }
    let d = cfg.pagerank_damping;
    let nf = n as f64;
    let mut rank = vec![1.0 / nf; n];
    let mut next = vec![0.0; n];
    let mut residual = f64::INFINITY;

    for _ in 0..cfg.pagerank_max_iter {
        let dangling: f64 = (0..n)
            .filter(|&i| g.out_neighbors(i).is_empty())
            .map(|i| rank[i])
            .sum();
        let base = (1.0 - d) / nf + d * dangling / nf;
        next.iter_mut().for_each(|v| *v = base);
        for (i, &r) in rank.iter().enumerate() {
            let out = g.out_neighbors(i);
            if !out.is_empty() {
                let share = d * r / out.len() as f64;
                for &j in out {
                    next[j] += share;
                }
            }
        }
        // renormalize against rounding drift
        let sum: f64 = next.iter().sum();
        next.iter_mut().for_each(|v| *v /= sum);

        residual = rank.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
        std::mem::swap(&mut rank, &mut next);
        if residual < cfg.pagerank_tol {
            return Ok(rank);
        }
    }
    Err(Error::NoConvergence {
        iterations: cfg.pagerank_max_iter,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> ClassGraph {
        ClassGraph::from_edges(vec![0; n], edges).unwrap()
    }

    #[test]
    fn degree_triangle_path_edgeless() {
        let tri = graph(3, &[(0, 1), (1, 2), (2, 0), (1, 0)]);
        for v in degree_importance(&tri) {
            assert!((v - 1.0 / 3.0).abs() < 1e-15);
        }
        let path = graph(3, &[(0, 1), (2, 1)]);
        assert_eq!(degree_importance(&path), vec![0.25, 0.5, 0.25]);
        assert_eq!(degree_importance(&graph(4, &[])), vec![0.25; 4]);
    }

    #[test]
    fn mutual_edge_counts_once() {
        let g = graph(3, &[(0, 1), (1, 0), (1, 2)]);
        assert_eq!(degree_importance(&g), vec![0.25, 0.5, 0.25]);
    }

    #[test]
    fn pagerank_two_cycle_and_edgeless() {
        let cfg = ImportanceConfig::default();
        let pr = pagerank_importance(&graph(2, &[(0, 1), (1, 0)]), &cfg).unwrap();
        assert!(pr.iter().all(|v| (v - 0.5).abs() < 1e-12));
        let pr = pagerank_importance(&graph(5, &[]), &cfg).unwrap();
        assert!(pr.iter().all(|v| (v - 0.2).abs() < 1e-15));
    }

    #[test]
    fn pagerank_star_into_c() {
        // a -> c, b -> c, c dangling: r_a = r_b = x = (1-d)/3 + d(1-2x)/3,
        // so x = 1 / (3 + 2d).
        let d: f64 = 0.85;
        let x = 1.0 / (3.0 + 2.0 * d);
        let cfg = ImportanceConfig::default();
        let pr = pagerank_importance(&graph(3, &[(0, 2), (1, 2)]), &cfg).unwrap();
        assert!((pr[0] - x).abs() < 1e-9, "{pr:?} vs {x}");
        assert!((pr[2] - (1.0 - 2.0 * x)).abs() < 1e-9);
    }

    #[test]
    fn pagerank_reports_non_convergence() {
        let cfg = ImportanceConfig {
            measure: ImportanceMeasure::Pagerank,
            pagerank_max_iter: 1,
            pagerank_tol: 1e-300,
            ..Default::default()
        };
        let g = graph(3, &[(0, 1), (1, 2)]);
        assert!(matches!(
            pagerank_importance(&g, &cfg),
            Err(Error::NoConvergence { iterations: 1, .. })
        ));
    }

    #[test]
    fn config_validation() {
        assert!(ImportanceConfig::default().validate().is_ok());
        let bad = ImportanceConfig {
            pagerank_damping: 1.0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let bad = ImportanceConfig {
            gamma: 0.0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }
}
