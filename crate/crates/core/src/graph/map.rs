//! MapAll: per-vertex ranked candidate neighbours, masked to the vertex's class.

use serde::{Deserialize, Serialize};

use super::similarity::SimilarityMatrix;
use crate::error::{Error, Result};

/// `n × q` table of candidate neighbours. Slot `(i, z)` holds the `z`-th most
/// similar vertex to `i`, or `None` when that vertex belongs to another class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapMatrix {
    n: usize,
    q: usize,
    entries: Vec<Option<usize>>,
}

impl MapMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn get(&self, i: usize, z: usize) -> Option<usize> {
        self.entries[i * self.q + z]
    }

    pub fn row(&self, i: usize) -> &[Option<usize>] {
        &self.entries[i * self.q..(i + 1) * self.q]
    }

    pub fn entries(&self) -> &[Option<usize>] {
        &self.entries
    }

    /// Number of non-empty slots.
    pub fn filled(&self) -> usize {
        self.entries.iter().filter(|e| e.is_some()).count()
    }
}

/// Ranks, for every vertex, its `q` most similar other vertices (ties to the
/// lower index) and empties the slots whose vertex has a different label.
pub fn build_map_all(sim: &SimilarityMatrix, labels: &[usize], q: usize) -> Result<MapMatrix> {
    let n = sim.len();
    if labels.len() != n {
        return Err(Error::Dimension {
            expected: n,
            actual: labels.len(),
        });
    }
    if q == 0 || q >= n {
        return Err(Error::Config(format!(
            "q must satisfy 1 <= q <= n - 1 (q = {q}, n = {n})"
        )));
    }

    let mut entries = Vec::with_capacity(n * q);
    let mut top: Vec<(f64, usize)> = Vec::with_capacity(q + 1);
    for i in 0..n {
        top.clear();
        for (j, &s) in sim.row(i).iter().enumerate() {
            if j == i {
                continue;
            }
            // Insert into the bounded, descending list; equal similarity keeps
            // the earlier (lower) index in front.
            if top.len() == q {
                let (last_s, _) = top[q - 1];
                if s <= last_s {
                    continue;
                }
            }
            let pos = top.partition_point(|&(ts, _)| ts >= s);
            top.insert(pos, (s, j));
            top.truncate(q);
        }
        entries.extend(
            top.iter()
                .map(|&(_, j)| (labels[j] == labels[i]).then_some(j)),
        );
    }
    Ok(MapMatrix { n, q, entries })
}

#[cfg(test)]
mod tests {
    use super::super::Metric;
    use super::*;

    #[test]
    fn two_items_same_class() {
        let sim = SimilarityMatrix::from_rows(&[vec![0.0], vec![1.0]], Metric::Euclidean).unwrap();
        let map = build_map_all(&sim, &[0, 0], 1).unwrap();
        assert_eq!(map.row(0), &[Some(1)]);
        assert_eq!(map.row(1), &[Some(0)]);
    }

    #[test]
    fn two_items_different_class() {
        let sim = SimilarityMatrix::from_rows(&[vec![0.0], vec![1.0]], Metric::Euclidean).unwrap();
        let map = build_map_all(&sim, &[0, 1], 1).unwrap();
        assert_eq!(map.entries(), &[None, None]);
    }

    #[test]
    fn ranking_and_ties() {
        // 1-D points: 0, 1, 1, 3 (items 1 and 2 tie for item 0 and 3)
        let rows = vec![vec![0.0], vec![1.0], vec![1.0], vec![3.0]];
        let sim = SimilarityMatrix::from_rows(&rows, Metric::Euclidean).unwrap();
        let map = build_map_all(&sim, &[0, 0, 0, 0], 2).unwrap();
        assert_eq!(map.row(0), &[Some(1), Some(2)]);
        assert_eq!(map.row(3), &[Some(1), Some(2)]);
        assert_eq!(map.row(1), &[Some(2), Some(0)]);
    }

    #[test]
    fn q_bounds() {
        let sim = SimilarityMatrix::from_rows(&[vec![0.0], vec![1.0]], Metric::Euclidean).unwrap();
        assert!(matches!(build_map_all(&sim, &[0, 0], 2), Err(Error::Config(_))));
        assert!(matches!(build_map_all(&sim, &[0, 0], 0), Err(Error::Config(_))));
    }
}
