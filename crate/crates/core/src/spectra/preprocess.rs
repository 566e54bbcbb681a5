//! Per-sample spectral transforms: amide-I peak normalization, Savitzky–Golay
//! smoothing/differentiation and wavenumber truncation.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::savgol::SavitzkyGolay;
use super::SpectrumDataset;
use crate::error::{Error, Result};

/// Closed wavenumber interval in cm⁻¹.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WavenumberRange {
    pub lower: f64,
    pub upper: f64,
}

impl WavenumberRange {
    pub fn new(lower: f64, upper: f64) -> Self {
        WavenumberRange { lower, upper }
    }

    pub fn contains(&self, wn: f64) -> bool {
        self.lower <= wn && wn <= self.upper
    }
}

impl fmt::Display for WavenumberRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.lower, self.upper)
    }
}

impl FromStr for WavenumberRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let parse = |p: &str| {
            p.parse::<f64>()
                .map_err(|_| Error::Config(format!("bad wavenumber range `{s}`")))
        };
        match parts.as_slice() {
            [a, b] => {
                let (a, b) = (parse(a)?, parse(b)?);
                Ok(WavenumberRange::new(a.min(b), a.max(b)))
            }
            _ => Err(Error::Config(format!(
                "wavenumber range must be `lower,upper`, got `{s}`"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PreprocessStep {
    /// Savitzky–Golay smoothing (derivative order 0).
    Smooth,
    /// Savitzky–Golay filter at `derivative_order`.
    Differentiate,
    /// Division by the per-sample maximum inside the amide window.
    Normalize,
    Truncate,
}

impl fmt::Display for PreprocessStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PreprocessStep::Smooth => "smooth",
            PreprocessStep::Differentiate => "differentiate",
            PreprocessStep::Normalize => "normalize",
            PreprocessStep::Truncate => "truncate",
        })
    }
}

impl FromStr for PreprocessStep {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "smooth" => Ok(PreprocessStep::Smooth),
            "differentiate" | "diff" => Ok(PreprocessStep::Differentiate),
            "normalize" | "norm" => Ok(PreprocessStep::Normalize),
            "truncate" => Ok(PreprocessStep::Truncate),
            other => Err(Error::Config(format!("unknown preprocessing step `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PreprocessConfig {
    pub amide_window: WavenumberRange,
    pub savgol_window: usize,
    pub savgol_degree: usize,
    pub derivative_order: usize,
    pub truncate_range: WavenumberRange,
    pub step_order: Vec<PreprocessStep>,
}

impl Default for PreprocessConfig {
    /// Smooth, differentiate, normalize, truncate.
    fn default() -> Self {
        PreprocessConfig {
            amide_window: WavenumberRange::new(1630.0, 1660.0),
            savgol_window: 9,
            savgol_degree: 2,
            derivative_order: 1,
            truncate_range: WavenumberRange::new(900.0, 1800.0),
            step_order: vec![
                PreprocessStep::Smooth,
                PreprocessStep::Differentiate,
                PreprocessStep::Normalize,
                PreprocessStep::Truncate,
            ],
        }
    }
}

impl PreprocessConfig {
    pub const PRESETS: [&'static str; 3] = ["amide-i", "smoot-diff-norm", "none"];

    /// Amide-I normalization followed by truncation.
    pub fn amide_i() -> Self {
        PreprocessConfig {
            step_order: vec![PreprocessStep::Normalize, PreprocessStep::Truncate],
            ..Default::default()
        }
    }

    pub fn smoot_diff_norm() -> Self {
        PreprocessConfig::default()
    }

    pub fn identity() -> Self {
        PreprocessConfig {
            step_order: Vec::new(),
            ..Default::default()
        }
    }

    pub fn preset(name: &str) -> Result<Self> {
        match name.trim().to_ascii_lowercase().as_str() {
            "amide-i" | "amide_i" | "amide1" => Ok(Self::amide_i()),
            "smoot-diff-norm" | "smooth-diff-norm" => Ok(Self::smoot_diff_norm()),
            "none" | "identity" => Ok(Self::identity()),
            other => Err(Error::Config(format!(
                "unknown preprocessing preset `{other}` (expected one of {})",
                Self::PRESETS.join(", ")
            ))),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.savgol_window.is_multiple_of(2) || self.savgol_window <= self.savgol_degree {
            return Err(Error::Config(format!(
                "savgol_window must be odd and greater than savgol_degree (window {}, degree {})",
                self.savgol_window, self.savgol_degree
            )));
        }
        if self.derivative_order > 1 {
            return Err(Error::Config(format!(
                "derivative_order must be 0 or 1, got {}",
                self.derivative_order
            )));
        }
        if self.truncate_range.lower >= self.truncate_range.upper {
            return Err(Error::Config(format!(
                "truncate_range lower bound must be below the upper bound ({})",
                self.truncate_range
            )));
        }
        if self.amide_window.lower > self.amide_window.upper {
            return Err(Error::Config(format!(
                "amide_window is empty ({})",
                self.amide_window
            )));
        }
        Ok(())
    }
}

/// Runs `cfg.step_order` over the dataset.
pub fn preprocess(ds: &SpectrumDataset, cfg: &PreprocessConfig) -> Result<SpectrumDataset> {
    preprocess_traced(ds, cfg).map(|(out, _)| out)
}

/// Like [`preprocess`], also returning the column count after each step.
pub fn preprocess_traced(
    ds: &SpectrumDataset,
    cfg: &PreprocessConfig,
) -> Result<(SpectrumDataset, Vec<(PreprocessStep, usize)>)> {
    cfg.validate()?;
    let mut current = ds.clone();
    let mut trace = Vec::with_capacity(cfg.step_order.len());
    for &step in &cfg.step_order {
        current = match step {
            PreprocessStep::Smooth => {
                savgol_smooth(&current, cfg.savgol_window, cfg.savgol_degree, 0)?
            }
            PreprocessStep::Differentiate => savgol_smooth(
                &current,
                cfg.savgol_window,
                cfg.savgol_degree,
                cfg.derivative_order,
            )?,
            PreprocessStep::Normalize => normalize_amide(&current, cfg.amide_window)?,
            PreprocessStep::Truncate => truncate(&current, cfg.truncate_range)?,
        };
        trace.push((step, current.n_wavenumbers()));
    }
    Ok((current, trace))
}

/// Divides each spectrum by its own maximum inside `window`.
pub fn normalize_amide(ds: &SpectrumDataset, window: WavenumberRange) -> Result<SpectrumDataset> {
    let cols: Vec<usize> = ds
        .wavenumbers()
        .iter()
        .enumerate()
        .filter(|(_, &w)| window.contains(w))
        .map(|(i, _)| i)
        .collect();
    if cols.is_empty() {
        return Err(Error::Config(format!(
            "amide window [{}] contains no wavenumber column",
            window
        )));
    }

    let mut bad = Vec::new();
    let mut out = Vec::with_capacity(ds.n_samples());
    for (row, id) in ds.samples().iter().zip(ds.sample_ids()) {
        let peak = cols
            .iter()
            .map(|&c| row[c])
            .fold(f64::NEG_INFINITY, f64::max);
        if !(peak > 0.0) || !peak.is_finite() {
            bad.push(id.clone());
            continue;
        }
        out.push(row.iter().map(|v| v / peak).collect());
    }
    if !bad.is_empty() {
        return Err(Error::Samples {
            sample_ids: bad,
            message: "maximum inside the amide window is not positive".into(),
        });
    }
    Ok(ds.with_values(ds.wavenumbers().to_vec(), out))
}

/// Savitzky–Golay filter along each spectrum; `deriv = 1` differentiates with
/// respect to the column index and requires a uniform wavenumber grid.
pub fn savgol_smooth(
    ds: &SpectrumDataset,
    window: usize,
    degree: usize,
    deriv: usize,
) -> Result<SpectrumDataset> {
    let filter = SavitzkyGolay::new(window, degree, deriv)?;
    if window > ds.n_wavenumbers() {
        return Err(Error::Config(format!(
            "savgol window {window} is larger than the spectrum ({} points)",
            ds.n_wavenumbers()
        )));
    }
    if deriv == 1 && !is_uniform_grid(ds.wavenumbers()) {
        return Err(Error::Config(
            "differentiation needs a uniformly spaced wavenumber grid".into(),
        ));
    }
    let samples = ds
        .samples()
        .iter()
        .map(|row| filter.apply(row))
        .collect::<Result<Vec<_>>>()?;
    Ok(ds.with_values(ds.wavenumbers().to_vec(), samples))
}

/// Keeps the columns whose wavenumber lies in `range` (inclusive).
pub fn truncate(ds: &SpectrumDataset, range: WavenumberRange) -> Result<SpectrumDataset> {
    let keep: Vec<usize> = ds
        .wavenumbers()
        .iter()
        .enumerate()
        .filter(|(_, &w)| range.contains(w))
        .map(|(i, _)| i)
        .collect();
    if keep.is_empty() {
        return Err(Error::Config(format!(
            "truncation range [{range}] keeps no columns"
        )));
    }
    let wavenumbers = keep.iter().map(|&i| ds.wavenumbers()[i]).collect();
    let samples = ds
        .samples()
        .iter()
        .map(|row| keep.iter().map(|&i| row[i]).collect())
        .collect();
    Ok(ds.with_values(wavenumbers, samples))
}

fn is_uniform_grid(wn: &[f64]) -> bool {
    if wn.len() < 3 {
        return true;
    }
    let step = (wn[wn.len() - 1] - wn[0]) / (wn.len() - 1) as f64;
    wn.windows(2)
        .all(|w| ((w[1] - w[0]) - step).abs() <= 1e-6 * step.abs())
}
