//! Run configuration and its `key = value` text format.
//!
//! Values are resolved in layers: defaults, then a named preset, then the
//! config file, then command-line settings. Within a layer the `preprocess`
//! key is applied before the individual preprocessing keys it expands to.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evolve::{GanetConfig, Preset};
use crate::spectra::{PreprocessConfig, PreprocessStep, SplitSpec};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub preset: Option<Preset>,
    pub model: GanetConfig,
    pub split: SplitSpec,
    /// Master seed; split, GA and data-generation seeds derive from it unless
    /// set explicitly.
    pub seed: u64,
    pub positive_label: String,
    pub k_list: Vec<usize>,
    pub dataset: Option<PathBuf>,
    pub output_dir: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let mut cfg = RunConfig {
            preset: None,
            model: GanetConfig::default(),
            split: SplitSpec::default(),
            seed: 0,
            positive_label: "ASD".into(),
            k_list: vec![1, 3, 5],
            dataset: None,
            output_dir: None,
        };
        cfg.derive_seeds(false, false);
        cfg
    }
}

/// Named sub-stream of the master seed (FNV-1a of the name, then splitmix64).
pub fn derive_seed(seed: u64, stream: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in stream.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    let mut z = seed ^ h;
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// One `key = value` setting with where it came from, for error messages.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Setting {
    pub key: String,
    pub value: String,
    pub origin: String,
}

impl Setting {
    pub fn new(key: &str, value: &str, origin: &str) -> Self {
        Setting {
            key: normalize_key(key),
            value: value.trim().to_string(),
            origin: origin.to_string(),
        }
    }

    /// Parses `key=value`.
    pub fn parse(text: &str, origin: &str) -> Result<Self> {
        let (k, v) = text.split_once('=').ok_or_else(|| {
            Error::Config(format!("{origin}: expected `key = value`, got `{text}`"))
        })?;
        if k.trim().is_empty() {
            return Err(Error::Config(format!("{origin}: empty key in `{text}`")));
        }
        Ok(Setting::new(k, v, origin))
    }
}

fn normalize_key(key: &str) -> String {
    key.trim().to_ascii_lowercase().replace('-', "_")
}

/// Reads a config file: one `key = value` per line, `#` starts a comment.
pub fn parse_config_text(text: &str, origin: &str) -> Result<Vec<Setting>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, line)| {
            let line = line.split('#').next().unwrap_or("").trim();
            (!line.is_empty()).then(|| Setting::parse(line, &format!("{origin}:{}", i + 1)))
        })
        .collect()
}

pub fn read_config_file(path: &Path) -> Result<Vec<Setting>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_config_text(&text, &path.display().to_string())
}

impl RunConfig {
    /// Resolves `file` and `flags` on top of the defaults.
    pub fn resolve(file: &[Setting], flags: &[Setting]) -> Result<RunConfig> {
        let mut cfg = RunConfig::default();

        let preset = flags
            .iter()
            .chain(file)
            .find(|s| s.key == "preset")
            .map(|s| s.value.parse::<Preset>())
            .transpose()?;
        if let Some(p) = preset {
            p.apply(&mut cfg.model);
            cfg.preset = Some(p);
        }

        let mut explicit_split_seed = false;
        let mut explicit_ga_seed = false;
        for layer in [file, flags] {
            let (first, rest): (Vec<&Setting>, Vec<&Setting>) =
                layer.iter().partition(|s| s.key == "preprocess");
            for s in first.into_iter().chain(rest) {
                match s.key.as_str() {
                    "split_seed" => explicit_split_seed = true,
                    "ga_seed" => explicit_ga_seed = true,
                    _ => {}
                }
                cfg.set(s)?;
            }
        }
        cfg.derive_seeds(explicit_split_seed, explicit_ga_seed);
        cfg.validate()?;
        Ok(cfg)
    }

    fn derive_seeds(&mut self, keep_split: bool, keep_ga: bool) {
        if !keep_split {
            self.split.seed = derive_seed(self.seed, "split");
        }
        if !keep_ga {
            self.model.ga.seed = derive_seed(self.seed, "ga");
        }
    }

    pub fn datagen_seed(&self) -> u64 {
        derive_seed(self.seed, "datagen")
    }

    pub fn validate(&self) -> Result<()> {
        self.model.validate()?;
        self.split.validate()?;
        if self.k_list.contains(&0) {
            return Err(Error::Config("k_list entries must be positive".into()));
        }
        Ok(())
    }

    /// Applies one setting.
    pub fn set(&mut self, s: &Setting) -> Result<()> {
        let v = s.value.as_str();
        let bad = |what: &str| Error::Config(format!("{}: invalid {what} `{v}` for `{}`", s.origin, s.key));
        let uint = || v.parse::<usize>().map_err(|_| bad("integer"));
        let real = || v.parse::<f64>().map_err(|_| bad("number"));
        let ga = &mut self.model.ga;
        let imp = &mut self.model.importance;
        let pre = &mut self.model.preprocess;

        match s.key.as_str() {
            "preset" => {
                // the preset itself is applied before any layer
                let p: Preset = v.parse()?;
                if self.preset.is_none() {
                    self.preset = Some(p);
                }
            }
            "metric" => self.model.metric = v.parse()?,
            "importance" | "measure" => imp.measure = v.parse()?,
            "gamma" => imp.gamma = real()?,
            "q_test" => imp.q_test = Some(uint()?),
            "damping" | "pagerank_damping" => imp.pagerank_damping = real()?,
            "pagerank_tol" => imp.pagerank_tol = real()?,
            "pagerank_max_iter" => imp.pagerank_max_iter = uint()?,
            "q" => ga.q = uint()?,
            "population_size" | "population" => ga.population_size = uint()?,
            "generations" => ga.generations = uint()?,
            "selection" => ga.selection = v.parse()?,
            "tournament_size" => ga.tournament_size = uint()?,
            "crossover" => ga.crossover = v.parse()?,
            "crossover_rate" => ga.crossover_rate = real()?,
            "mutation_rate" => {
                ga.mutation_rate = match v {
                    "auto" | "" => None,
                    _ => Some(real()?),
                }
            }
            "reinsertion" => ga.reinsertion = v.parse()?,
            "ga_seed" => ga.seed = v.parse().map_err(|_| bad("seed"))?,
            "preprocess" => *pre = PreprocessConfig::preset(v)?,
            "steps" | "step_order" => {
                pre.step_order = v
                    .split(',')
                    .map(str::trim)
                    .filter(|t| !t.is_empty() && *t != "none")
                    .map(str::parse::<PreprocessStep>)
                    .collect::<Result<Vec<_>>>()?
            }
            "amide_window" => pre.amide_window = v.parse()?,
            "savgol_window" => pre.savgol_window = uint()?,
            "savgol_degree" => pre.savgol_degree = uint()?,
            "derivative_order" => pre.derivative_order = uint()?,
            "truncate_range" => pre.truncate_range = v.parse()?,
            "train_fraction" => self.split.train_fraction = real()?,
            "validation_fraction" => self.split.validation_fraction = real()?,
            "test_fraction" => self.split.test_fraction = real()?,
            "split_seed" => self.split.seed = v.parse().map_err(|_| bad("seed"))?,
            "seed" => self.seed = v.parse().map_err(|_| bad("seed"))?,
            "positive_label" => self.positive_label = v.to_string(),
            "k_list" | "k" => {
                self.k_list = v
                    .split(',')
                    .map(|t| t.trim().parse::<usize>().map_err(|_| bad("k list")))
                    .collect::<Result<Vec<_>>>()?
            }
            "dataset" => self.dataset = Some(PathBuf::from(v)),
            "output_dir" | "out" => self.output_dir = Some(PathBuf::from(v)),
            other => {
                return Err(Error::Config(format!(
                    "{}: unknown config key `{other}`",
                    s.origin
                )))
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evolve::Reinsertion;
    use crate::graph::Metric;

    fn flags(pairs: &[&str]) -> Vec<Setting> {
        pairs.iter().map(|p| Setting::parse(p, "flag").unwrap()).collect()
    }

    #[test]
    fn precedence_flag_over_file_over_preset() {
        let file = parse_config_text(
            "# comment\npreset = ganet-c\nq = 7\nmetric = cosine\n",
            "cfg",
        )
        .unwrap();
        let cfg = RunConfig::resolve(&file, &flags(&["q=4"])).unwrap();
        assert_eq!(cfg.preset, Some(Preset::GanetC));
        assert_eq!(cfg.model.ga.q, 4);
        assert_eq!(cfg.model.metric, Metric::Cosine);
        assert_eq!(cfg.model.importance.gamma, 1.0);

        let cfg = RunConfig::resolve(&file, &flags(&["preset=ganet-e"])).unwrap();
        assert_eq!(cfg.preset, Some(Preset::GanetE));
        assert_eq!(cfg.model.ga.reinsertion, Reinsertion::Ordered);
        // file still overrides the preset's q
        assert_eq!(cfg.model.ga.q, 7);
    }

    #[test]
    fn preprocess_preset_then_individual_keys() {
        let cfg = RunConfig::resolve(
            &[],
            &flags(&["savgol_window=11", "preprocess=amide-i"]),
        )
        .unwrap();
        assert_eq!(
            cfg.model.preprocess.step_order,
            vec![PreprocessStep::Normalize, PreprocessStep::Truncate]
        );
        assert_eq!(cfg.model.preprocess.savgol_window, 11);
    }

    #[test]
    fn seeds_fan_out() {
        let a = RunConfig::resolve(&[], &flags(&["seed=3"])).unwrap();
        let b = RunConfig::resolve(&[], &flags(&["seed=3"])).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.split.seed, a.model.ga.seed);
        assert_ne!(a.split.seed, RunConfig::default().split.seed);
        let c = RunConfig::resolve(&[], &flags(&["seed=3", "ga_seed=42"])).unwrap();
        assert_eq!(c.model.ga.seed, 42);
        assert_eq!(c.split.seed, a.split.seed);
    }

    #[test]
    fn errors_name_the_key() {
        let err = RunConfig::resolve(&[], &flags(&["bogus=1"])).unwrap_err();
        assert!(err.to_string().contains("bogus"));
        assert!(RunConfig::resolve(&[], &flags(&["q=abc"])).is_err());
        assert!(RunConfig::resolve(&[], &flags(&["population_size=3"])).is_err());
        assert!(parse_config_text("novalue\n", "cfg").is_err());
    }

    #[test]
    fn k_list_and_steps_parse() {
        let cfg = RunConfig::resolve(&[], &flags(&["k_list=1, 3,5", "steps=none"])).unwrap();
        assert_eq!(cfg.k_list, vec![1, 3, 5]);
        assert!(cfg.model.preprocess.step_order.is_empty());
    }
}
