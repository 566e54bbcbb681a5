use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ImportanceConfig, Metric};
use crate::spectra::PreprocessConfig;

macro_rules! keyword_enum {
    ($name:ident { $($variant:ident => $text:literal),+ $(,)? }) => {
        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(match self { $($name::$variant => $text),+ })
            }
        }

        impl FromStr for $name {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                let s = s.trim().to_ascii_lowercase().replace('_', "-");
                $(if s == $text { return Ok($name::$variant); })+
                Err(Error::Config(format!(
                    concat!("unknown ", stringify!($name), " `{}` (expected one of: {})"),
                    s,
                    [$($text),+].join(", ")
                )))
            }
        }
    };
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Selection {
    Tournament,
    Roulette,
}
keyword_enum!(Selection { Tournament => "tournament", Roulette => "roulette" });

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Crossover {
    TwoPoint,
    Uniform,
}
keyword_enum!(Crossover { TwoPoint => "two-point", Uniform => "uniform" });

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reinsertion {
    /// Offspring replace the parents.
    Pure,
    /// Best `population_size` of parents and offspring survive.
    Ordered,
}
keyword_enum!(Reinsertion { Pure => "pure", Ordered => "ordered" });

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Preset {
    GanetC,
    GanetE,
    GanetG,
    GanetK,
}
keyword_enum!(Preset {
    GanetC => "ganet-c",
    GanetE => "ganet-e",
    GanetG => "ganet-g",
    GanetK => "ganet-k",
});

impl Preset {
    pub const ALL: [Preset; 4] = [Preset::GanetC, Preset::GanetE, Preset::GanetG, Preset::GanetK];

    /// `(gamma, q, reinsertion)`.
    pub fn parameters(self) -> (f64, usize, Reinsertion) {
        match self {
            Preset::GanetC => (1.0, 3, Reinsertion::Pure),
            Preset::GanetE => (1.0, 5, Reinsertion::Ordered),
            Preset::GanetG => (1.0, 5, Reinsertion::Pure),
            Preset::GanetK => (2.0, 3, Reinsertion::Pure),
        }
    }

    /// Writes the preset's parameters into `cfg`. All presets use tournament
    /// selection and two-point crossover.
    pub fn apply(self, cfg: &mut GanetConfig) {
        let (gamma, q, reinsertion) = self.parameters();
        cfg.importance.gamma = gamma;
        cfg.ga.q = q;
        cfg.ga.reinsertion = reinsertion;
        cfg.ga.selection = Selection::Tournament;
        cfg.ga.crossover = Crossover::TwoPoint;
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaConfig {
    pub population_size: usize,
    pub generations: usize,
    pub q: usize,
    pub selection: Selection,
    pub tournament_size: usize,
    pub crossover: Crossover,
    pub crossover_rate: f64,
    /// Per-bit flip probability; `None` resolves to `1 / (n * q)`.
    pub mutation_rate: Option<f64>,
    pub reinsertion: Reinsertion,
    pub seed: u64,
}

impl Default for GaConfig {
    fn default() -> Self {
        GaConfig {
            population_size: 100,
            generations: 100,
            q: 3,
            selection: Selection::Tournament,
            tournament_size: 2,
            crossover: Crossover::TwoPoint,
            crossover_rate: 0.9,
            mutation_rate: None,
            reinsertion: Reinsertion::Pure,
            seed: 0,
        }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Result<()> {
        if self.population_size < 2 || !self.population_size.is_multiple_of(2) {
            return Err(Error::Config(format!(
                "population_size must be even and at least 2, got {}",
                self.population_size
            )));
        }
        if self.q == 0 {
            return Err(Error::Config("q must be positive".into()));
        }
        if self.tournament_size == 0 {
            return Err(Error::Config("tournament_size must be at least 1".into()));
        }
        if !(0.0..=1.0).contains(&self.crossover_rate) {
            return Err(Error::Config(format!(
                "crossover_rate must be in [0, 1], got {}",
                self.crossover_rate
            )));
        }
        if let Some(rate) = self.mutation_rate {
            if !(0.0..=1.0).contains(&rate) {
                return Err(Error::Config(format!(
                    "mutation_rate must be in [0, 1], got {rate}"
                )));
            }
        }
        Ok(())
    }

    pub fn mutation_rate_for(&self, n: usize) -> f64 {
        self.mutation_rate
            .unwrap_or_else(|| 1.0 / (n.max(1) * self.q) as f64)
    }
}

/// Everything that determines a trained model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GanetConfig {
    pub metric: Metric,
    pub ga: GaConfig,
    pub importance: ImportanceConfig,
    /// Transforms applied to spectra before they reach the model.
    pub preprocess: PreprocessConfig,
}

impl Default for GanetConfig {
    fn default() -> Self {
        GanetConfig {
            metric: Metric::Euclidean,
            ga: GaConfig::default(),
            importance: ImportanceConfig::default(),
            preprocess: PreprocessConfig::default(),
        }
    }
}

impl GanetConfig {
    pub fn from_preset(preset: Preset) -> Self {
        let mut cfg = GanetConfig::default();
        preset.apply(&mut cfg);
        cfg
    }

    pub fn validate(&self) -> Result<()> {
        self.ga.validate()?;
        self.importance.validate()?;
        self.preprocess.validate()
    }

    pub fn q_test(&self) -> usize {
        self.importance.q_test_or(self.ga.q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_expand_to_table_rows() {
        let expect = [
            (Preset::GanetC, 1.0, 3, Reinsertion::Pure),
            (Preset::GanetE, 1.0, 5, Reinsertion::Ordered),
            (Preset::GanetG, 1.0, 5, Reinsertion::Pure),
            (Preset::GanetK, 2.0, 3, Reinsertion::Pure),
        ];
        for (preset, gamma, q, reinsertion) in expect {
            let cfg = GanetConfig::from_preset(preset);
            assert_eq!(cfg.importance.gamma, gamma);
            assert_eq!(cfg.ga.q, q);
            assert_eq!(cfg.ga.reinsertion, reinsertion);
            assert_eq!(cfg.ga.selection, Selection::Tournament);
            assert_eq!(cfg.ga.crossover, Crossover::TwoPoint);
        }
    }

    #[test]
    fn keyword_parsing() {
        assert_eq!("ganet-e".parse::<Preset>().unwrap(), Preset::GanetE);
        assert_eq!("GANET_K".parse::<Preset>().unwrap(), Preset::GanetK);
        assert_eq!("two_point".parse::<Crossover>().unwrap(), Crossover::TwoPoint);
        assert_eq!(Reinsertion::Ordered.to_string(), "ordered");
        assert!("elitist".parse::<Reinsertion>().is_err());
    }

    #[test]
    fn validation() {
        let mut cfg = GaConfig::default();
        assert!(cfg.validate().is_ok());
        cfg.population_size = 7;
        assert!(cfg.validate().is_err());
        cfg.population_size = 10;
        cfg.crossover_rate = 1.5;
        assert!(cfg.validate().is_err());
        cfg.crossover_rate = 0.9;
        cfg.mutation_rate = Some(-0.1);
        assert!(cfg.validate().is_err());
        cfg.mutation_rate = None;
        assert_eq!(cfg.mutation_rate_for(93), 1.0 / 279.0);
    }
}
