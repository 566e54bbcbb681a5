use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Binary edge-selection individual: bit `(i, z)` switches the candidate edge
/// from vertex `i` to its `z`-th MapAll neighbour.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Genome {
    rows: usize,
    cols: usize,
    #[serde(serialize_with = "bits_to_str", deserialize_with = "bits_from_str")]
    bits: Vec<bool>,
    pub fitness: Option<f64>,
}

impl Genome {
    pub fn from_bits(rows: usize, cols: usize, bits: Vec<bool>) -> Result<Self> {
        if bits.len() != rows * cols {
            return Err(Error::Dimension {
                expected: rows * cols,
                actual: bits.len(),
            });
        }
        Ok(Genome {
            rows,
            cols,
            bits,
            fitness: None,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Genome {
            rows,
            cols,
            bits: vec![false; rows * cols],
            fitness: None,
        }
    }

    pub fn ones(rows: usize, cols: usize) -> Self {
        Genome {
            rows,
            cols,
            bits: vec![true; rows * cols],
            fitness: None,
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, i: usize, z: usize) -> bool {
        self.bits[i * self.cols + z]
    }

    /// Row-major flat bit string.
    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Mutable access clears the cached fitness.
    pub fn bits_mut(&mut self) -> &mut [bool] {
        self.fitness = None;
        &mut self.bits
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|b| **b).count()
    }

    /// Bitwise OR of two equal-shape genomes.
    pub fn union(&self, other: &Genome) -> Result<Genome> {
        if self.shape() != other.shape() {
            return Err(Error::Dimension {
                expected: self.len(),
                actual: other.len(),
            });
        }
        let bits = self.bits.iter().zip(&other.bits).map(|(a, b)| *a || *b).collect();
        Genome::from_bits(self.rows, self.cols, bits)
    }

    /// Fitness for ordering; unevaluated genomes rank last.
    pub fn fitness_or_min(&self) -> f64 {
        self.fitness.unwrap_or(f64::NEG_INFINITY)
    }
}

impl std::fmt::Display for Genome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for b in &self.bits {
            f.write_str(if *b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

fn bits_to_str<S: Serializer>(bits: &[bool], s: S) -> std::result::Result<S::Ok, S::Error> {
    let text: String = bits.iter().map(|b| if *b { '1' } else { '0' }).collect();
    s.serialize_str(&text)
}

fn bits_from_str<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<bool>, D::Error> {
    let text = String::deserialize(d)?;
    text.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(serde::de::Error::custom(format!(
                "genome bit must be 0 or 1, found {other:?}"
            ))),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn serde_round_trip_uses_bit_string() {
        let mut g = Genome::from_bits(2, 2, vec![true, false, false, true]).unwrap();
        g.fitness = Some(0.75);
        let json = serde_json::to_string(&g).unwrap();
        assert!(json.contains("\"1001\""));
        let back: Genome = serde_json::from_str(&json).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<Genome>(&json.replace("1001", "1021")).is_err());
    }

    #[test]
    fn shape_checks() {
        assert!(Genome::from_bits(2, 3, vec![true; 5]).is_err());
        let a = Genome::zeros(2, 2);
        assert!(a.union(&Genome::zeros(1, 2)).is_err());
        assert_eq!(a.union(&Genome::ones(2, 2)).unwrap().count_ones(), 4);
    }

    #[test]
    fn mutating_bits_clears_fitness() {
        let mut g = Genome::ones(1, 3);
        g.fitness = Some(1.0);
        g.bits_mut()[0] = false;
        assert_eq!(g.fitness, None);
        assert_eq!(g.to_string(), "011");
    }
}
