use serde::{Deserialize, Serialize};

use super::map::MapMatrix;
use crate::error::{Error, Result};
use crate::evolve::Genome;

/// Directed graph decoded from a genome, with class labels per vertex and,
/// once computed, per-vertex importance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassGraph {
    labels: Vec<usize>,
    /// Sorted out-neighbour lists.
    out_edges: Vec<Vec<usize>>,
    importance: Option<Vec<f64>>,
}

impl ClassGraph {
    /// Graph from explicit edges. Edges must join equal-label vertices.
    pub fn from_edges(labels: Vec<usize>, edges: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut out_edges = vec![Vec::new(); n];
        for &(i, j) in edges {
            if i >= n || j >= n {
                return Err(Error::Invalid(format!(
                    "edge ({i}, {j}) out of range for {n} vertices"
                )));
            }
            if i == j {
                return Err(Error::Invalid(format!("self-loop on vertex {i}")));
            }
            if labels[i] != labels[j] {
                return Err(Error::Invalid(format!(
                    "edge ({i}, {j}) joins different classes"
                )));
            }
            out_edges[i].push(j);
        }
        for list in &mut out_edges {
            list.sort_unstable();
            list.dedup();
        }
        Ok(ClassGraph {
            labels,
            out_edges,
            importance: None,
        })
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn out_neighbors(&self, i: usize) -> &[usize] {
        &self.out_edges[i]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.out_edges[i].binary_search(&j).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.out_edges.iter().map(Vec::len).sum()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out_edges
            .iter()
            .enumerate()
            .flat_map(|(i, js)| js.iter().map(move |&j| (i, j)))
    }

    pub fn importance(&self) -> Option<&[f64]> {
        self.importance.as_deref()
    }

    pub fn with_importance(mut self, importance: Vec<f64>) -> Result<Self> {
        if importance.len() != self.n() {
            return Err(Error::Dimension {
                expected: self.n(),
                actual: importance.len(),
            });
        }
        self.importance = Some(importance);
        Ok(self)
    }
}

/// Turns a genome into edges: `i -> map[i][z]` exists iff bit `(i, z)` is set
/// and the slot is not empty.
pub fn decode(genome: &Genome, map: &MapMatrix, labels: &[usize]) -> Result<ClassGraph> {
    if genome.shape() != (map.n(), map.q()) {
        return Err(Error::Dimension {
            expected: map.n() * map.q(),
            actual: genome.len(),
        });
    }
    if labels.len() != map.n() {
        return Err(Error::Dimension {
            expected: map.n(),
            actual: labels.len(),
        });
    }
    let q = map.q();
    let out_edges = (0..map.n())
        .map(|i| {
            let mut js: Vec<usize> = (0..q)
                .filter(|&z| genome.get(i, z))
                .filter_map(|z| map.get(i, z))
                .collect();
            js.sort_unstable();
            js
        })
        .collect();
    Ok(ClassGraph {
        labels: labels.to_vec(),
        out_edges,
        importance: None,
    })
}
