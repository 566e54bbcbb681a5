//! Train/validation/test partition at the subject level.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::SpectrumDataset;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitSpec {
    pub train_fraction: f64,
    pub validation_fraction: f64,
    pub test_fraction: f64,
    pub seed: u64,
}

impl Default for SplitSpec {
    /// 93/33/33 out of 159.
    fn default() -> Self {
        SplitSpec {
            train_fraction: 93.0 / 159.0,
            validation_fraction: 33.0 / 159.0,
            test_fraction: 33.0 / 159.0,
            seed: 0,
        }
    }
}

impl SplitSpec {
    pub fn new(train: f64, validation: f64, test: f64, seed: u64) -> Result<Self> {
        let spec = SplitSpec {
            train_fraction: train,
            validation_fraction: validation,
            test_fraction: test,
            seed,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn fractions(&self) -> [f64; 3] {
        [
            self.train_fraction,
            self.validation_fraction,
            self.test_fraction,
        ]
    }

    pub fn validate(&self) -> Result<()> {
        let f = self.fractions();
        if f.iter().any(|&x| !(x > 0.0 && x < 1.0)) {
            return Err(Error::Config(format!(
                "split fractions must lie in (0, 1), got {f:?}"
            )));
        }
        let sum: f64 = f.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::Config(format!(
                "split fractions must sum to 1, got {sum}"
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DatasetSplit {
    pub train: SpectrumDataset,
    pub validation: SpectrumDataset,
    pub test: SpectrumDataset,
}

impl DatasetSplit {
    pub fn sizes(&self) -> [usize; 3] {
        [
            self.train.n_samples(),
            self.validation.n_samples(),
            self.test.n_samples(),
        ]
    }

    /// Fails unless every split carries the same label set.
    pub fn check_label_sets(&self) -> Result<()> {
        let train = self.train.label_set();
        for (name, part) in [("validation", &self.validation), ("test", &self.test)] {
            let labels = part.label_set();
            if labels != train {
                return Err(Error::Split(format!(
                    "label set of the {name} split {labels:?} differs from the training split {train:?}"
                )));
            }
        }
        Ok(())
    }
}

struct Subject {
    samples: Vec<usize>,
    label: usize,
}

/// Partitions whole subjects into three splits.
///
/// Split sizes follow the fractions (largest-remainder rounding of the sample
/// count), subjects are interleaved across labels so every split gets a
/// proportional share of each class, and all randomness comes from
/// `spec.seed`.
pub fn split_by_subject(ds: &SpectrumDataset, spec: &SplitSpec) -> Result<DatasetSplit> {
    spec.validate()?;
    let labels = ds.label_set();

    // subject id -> (label index, sample indices); BTreeMap keeps order stable.
    let mut by_subject: BTreeMap<&str, Subject> = BTreeMap::new();
    for (i, (subject, label)) in ds.subject_ids().iter().zip(ds.labels()).enumerate() {
        let label = labels.binary_search(label).expect("label from label_set");
        let entry = by_subject.entry(subject.as_str()).or_insert(Subject {
            samples: Vec::new(),
            label,
        });
        if entry.label != label {
            return Err(Error::Split(format!(
                "subject `{subject}` has samples with different labels"
            )));
        }
        entry.samples.push(i);
    }
    if by_subject.len() < 3 {
        return Err(Error::Split(format!(
            "need at least 3 distinct subjects, found {}",
            by_subject.len()
        )));
    }

    let mut per_label: Vec<Vec<&Subject>> = vec![Vec::new(); labels.len()];
    for subject in by_subject.values() {
        per_label[subject.label].push(subject);
    }
    for (label, subjects) in labels.iter().zip(&per_label) {
        if subjects.len() < 3 {
            return Err(Error::Split(format!(
                "label `{label}` is present in only {} subject(s); at least 3 are needed",
                subjects.len()
            )));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for subjects in &mut per_label {
        subjects.shuffle(&mut rng);
    }

    // Round-robin across labels, then larger subjects first.
    let mut order: Vec<&Subject> = Vec::with_capacity(by_subject.len());
    let longest = per_label.iter().map(Vec::len).max().unwrap_or(0);
    for k in 0..longest {
        for subjects in &per_label {
            if let Some(s) = subjects.get(k) {
                order.push(s);
            }
        }
    }
    order.sort_by(|a, b| b.samples.len().cmp(&a.samples.len()));

    let fractions = spec.fractions();
    let targets = apportion(ds.n_samples(), &fractions);
    let label_targets: Vec<[f64; 3]> = per_label
        .iter()
        .map(|subjects| {
            let n: usize = subjects.iter().map(|s| s.samples.len()).sum();
            fractions.map(|f| f * n as f64)
        })
        .collect();

    let mut filled = [0usize; 3];
    let mut label_filled = vec![[0usize; 3]; labels.len()];
    let mut assigned: [Vec<usize>; 3] = Default::default();

    for subject in order {
        let c = subject.samples.len();
        let fits: Vec<usize> = (0..3).filter(|&s| filled[s] + c <= targets[s]).collect();
        let candidates: Vec<usize> = if fits.is_empty() { vec![0, 1, 2] } else { fits };
        let label_deficit = |s: usize| {
            label_targets[subject.label][s] - label_filled[subject.label][s] as f64
        };
        let global_deficit = |s: usize| targets[s] as f64 - filled[s] as f64;
        let best = candidates
            .into_iter()
            .reduce(|best, s| {
                let key_s = (label_deficit(s), global_deficit(s));
                let key_b = (label_deficit(best), global_deficit(best));
                if key_s.0 > key_b.0 || (key_s.0 == key_b.0 && key_s.1 > key_b.1) {
                    s
                } else {
                    best
                }
            })
            .expect("three candidate splits");
        filled[best] += c;
        label_filled[subject.label][best] += c;
        assigned[best].extend(&subject.samples);
    }

    if let Some(empty) = assigned.iter().position(Vec::is_empty) {
        return Err(Error::Split(format!(
            "split {} received no subjects",
            ["train", "validation", "test"][empty]
        )));
    }
    for part in &mut assigned {
        part.sort_unstable();
    }
    let [train, validation, test] = assigned;
    Ok(DatasetSplit {
        train: ds.subset(&train),
        validation: ds.subset(&validation),
        test: ds.subset(&test),
    })
}

/// Largest-remainder rounding of `total * fractions`.
fn apportion(total: usize, fractions: &[f64; 3]) -> [usize; 3] {
    let raw = fractions.map(|f| f * total as f64);
    let mut counts = raw.map(|r| r.floor() as usize);
    let mut remaining = total.saturating_sub(counts.iter().sum());
    let mut order = [0usize, 1, 2];
    order.sort_by(|&a, &b| {
        let ra = raw[a] - raw[a].floor();
        let rb = raw[b] - raw[b].floor();
        rb.total_cmp(&ra).then(a.cmp(&b))
    });
    for &i in order.iter().cycle() {
        if remaining == 0 {
            break;
        }
        counts[i] += 1;
        remaining -= 1;
    }
    counts
}
