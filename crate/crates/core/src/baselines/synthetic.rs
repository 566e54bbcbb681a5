//! Subject-grouped two-class synthetic spectra on a 900–1800 cm⁻¹ grid.
//!
//! Every spectrum is a sum of Gaussian bands on a small baseline. The second
//! class shifts a few designated band heights by `class_separation`; each
//! subject perturbs band heights and baseline, and each replicate adds
//! pointwise noise. Subject offsets and replicate noise both have standard
//! deviation `noise_sd`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectra::SpectrumDataset;

pub const POSITIVE_LABEL: &str = "ASD";
pub const NEGATIVE_LABEL: &str = "TD";

/// (centre cm⁻¹, height, width sd cm⁻¹)
const BANDS: [(f64, f64, f64); 8] = [
    (1650.0, 1.00, 14.0),
    (1545.0, 0.60, 16.0),
    (1450.0, 0.25, 12.0),
    (1400.0, 0.30, 14.0),
    (1240.0, 0.35, 20.0),
    (1160.0, 0.15, 12.0),
    (1080.0, 0.45, 20.0),
    (1030.0, 0.30, 16.0),
];

/// (band index, sign) of the class-dependent bands.
const CLASS_BANDS: [(usize, f64); 4] = [(3, 1.0), (4, 1.0), (6, -1.0), (7, 1.0)];

const BASELINE: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SyntheticSpec {
    pub n_subjects: usize,
    pub replicates_per_subject: usize,
    pub n_wavenumbers: usize,
    pub class_separation: f64,
    pub noise_sd: f64,
    pub seed: u64,
}

impl Default for SyntheticSpec {
    fn default() -> Self {
        SyntheticSpec {
            n_subjects: 53,
            replicates_per_subject: 3,
            n_wavenumbers: 451,
            class_separation: 0.05,
            noise_sd: 0.02,
            seed: 0,
        }
    }
}

impl SyntheticSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n_subjects == 0 || self.replicates_per_subject == 0 || self.n_wavenumbers < 2 {
            return Err(Error::Config(
                "synthetic spec needs positive subject and replicate counts and at least 2 wavenumbers"
                    .into(),
            ));
        }
        if !(self.class_separation >= 0.0) || !(self.noise_sd > 0.0) {
            return Err(Error::Config(
                "class_separation must be >= 0 and noise_sd > 0".into(),
            ));
        }
        Ok(())
    }
}

/// Even-indexed subjects are negative (`TD`), odd-indexed positive (`ASD`).
pub fn generate_synthetic(spec: &SyntheticSpec) -> Result<SpectrumDataset> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let noise = Normal::new(0.0, spec.noise_sd).expect("positive sd");

    let k = spec.n_wavenumbers;
    let step = 900.0 / (k - 1) as f64;
    let wavenumbers: Vec<f64> = (0..k).map(|i| 1800.0 - step * i as f64).collect();

    let mut samples = Vec::new();
    let mut labels = Vec::new();
    let mut subject_ids = Vec::new();
    let mut sample_ids = Vec::new();

    for s in 0..spec.n_subjects {
        let positive = s % 2 == 1;
        let mut heights: Vec<f64> = BANDS.iter().map(|b| b.1).collect();
        if positive {
            for &(band, sign) in &CLASS_BANDS {
                heights[band] += sign * spec.class_separation;
            }
        }
        // amide I stays the reference band; other bands vary by subject
        for h in heights.iter_mut().skip(1) {
            *h += noise.sample(&mut rng);
        }
        let baseline = BASELINE + noise.sample(&mut rng).abs();
        let tilt: f64 = rng.gen_range(-0.5..0.5) * spec.noise_sd;

        let mean: Vec<f64> = wavenumbers
            .iter()
            .map(|&w| {
                let bands: f64 = BANDS
                    .iter()
                    .zip(&heights)
                    .map(|(&(c, _, width), &h)| h * (-(w - c) * (w - c) / (2.0 * width * width)).exp())
                    .sum();
                bands + baseline + tilt * (w - 1350.0) / 450.0
            })
            .collect();

        let subject = format!("S{:03}", s + 1);
        for r in 0..spec.replicates_per_subject {
            samples.push(mean.iter().map(|m| m + noise.sample(&mut rng)).collect());
            labels.push(if positive { POSITIVE_LABEL } else { NEGATIVE_LABEL }.to_string());
            sample_ids.push(format!("{subject}_R{}", r + 1));
            subject_ids.push(subject.clone());
        }
    }
    SpectrumDataset::new(wavenumbers, samples, labels, subject_ids, sample_ids)
}
