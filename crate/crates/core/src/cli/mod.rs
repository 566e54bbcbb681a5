//! Command-line front end: `preprocess | train | evaluate | compare | datagen`.
//!
//! Exit status: 0 success, 2 input error, 3 config error, 4 runtime error.

mod commands;
mod config;
mod report;

pub use commands::{
    cmd_compare, cmd_datagen, cmd_evaluate, cmd_preprocess, cmd_train, PreprocessSummary,
    TrainOutcome,
};
pub use config::{derive_seed, parse_config_text, read_config_file, RunConfig, Setting};
pub use report::{
    from_json, history_csv, metrics_csv, to_json, Artifacts, CompareReport, EvaluationReport,
    MethodResult, RunReport, SamplePrediction, SplitSizes, REPORT_VERSION,
};

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::baselines::SyntheticSpec;
use crate::error::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "ganet", version, about = "GA-optimized similarity graphs for spectra classification")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Apply the preprocessing pipeline to a spectra CSV.
    Preprocess {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        #[command(flatten)]
        settings: SettingArgs,
    },
    /// Split, evolve a graph, score the test split and save model + report.
    Train {
        #[command(flatten)]
        settings: SettingArgs,
    },
    /// Score a dataset with a saved model.
    Evaluate {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        dataset: PathBuf,
        #[arg(long, default_value = "ASD")]
        positive_label: String,
        /// Write the evaluation report here (JSON).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run GANet and the kNN-graph baseline on the same split.
    Compare {
        #[command(flatten)]
        settings: SettingArgs,
    },
    /// Write a synthetic two-class dataset.
    Datagen {
        #[arg(long)]
        output: PathBuf,
        #[arg(long, default_value_t = 53)]
        subjects: usize,
        #[arg(long, default_value_t = 3)]
        replicates: usize,
        #[arg(long, default_value_t = 451)]
        wavenumbers: usize,
        #[arg(long, default_value_t = 0.05)]
        separation: f64,
        #[arg(long, default_value_t = 0.02)]
        noise: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Flags shared by the config-driven commands. Each maps onto a config key.
#[derive(Debug, Args, Default)]
pub struct SettingArgs {
    /// Config file of `key = value` lines.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub dataset: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// ganet-c, ganet-e, ganet-g or ganet-k.
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(long)]
    pub metric: Option<String>,
    /// amide-i, smoot-diff-norm or none.
    #[arg(long)]
    pub preprocess: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub generations: Option<usize>,
    #[arg(long)]
    pub population: Option<usize>,
    /// Comma-separated k values for `compare`.
    #[arg(long)]
    pub k: Option<String>,
    /// Any other config key, as `key=value`. Repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub set: Vec<String>,
}

impl SettingArgs {
    pub fn resolve(&self) -> Result<RunConfig> {
        let file = match &self.config {
            Some(path) => read_config_file(path)?,
            None => Vec::new(),
        };
        let mut flags = Vec::new();
        let mut push = |key: &str, value: Option<String>| {
            if let Some(v) = value {
                flags.push(Setting::new(key, &v, &format!("--{}", key.replace('_', "-"))));
            }
        };
        push("dataset", self.dataset.as_ref().map(|p| p.display().to_string()));
        push("output_dir", self.out.as_ref().map(|p| p.display().to_string()));
        push("preset", self.preset.clone());
        push("metric", self.metric.clone());
        push("preprocess", self.preprocess.clone());
        push("seed", self.seed.map(|v| v.to_string()));
        push("generations", self.generations.map(|v| v.to_string()));
        push("population_size", self.population.map(|v| v.to_string()));
        push("k_list", self.k.clone());
        for s in &self.set {
            flags.push(Setting::parse(s, "--set")?);
        }
        RunConfig::resolve(&file, &flags)
    }
}

/// Runs one command; returns the lines to print on success.
pub fn execute(cli: &Cli) -> Result<Vec<String>> {
    match &cli.command {
        Command::Preprocess {
            input,
            output,
            settings,
        } => {
            let cfg = settings.resolve()?;
            let summary = cmd_preprocess(input, &cfg, output)?;
            let mut lines = vec![format!("input: {} columns", summary.input_columns)];
            lines.extend(
                summary
                    .steps
                    .iter()
                    .map(|(step, cols)| format!("{step}: {cols} columns")),
            );
            lines.push(format!("wrote {} samples to {}", summary.n_samples, output.display()));
            Ok(lines)
        }
        Command::Train { settings } => {
            let cfg = settings.resolve()?;
            let out = cmd_train(&cfg)?;
            let m = out.report.metrics;
            Ok(vec![
                format!(
                    "split sizes: train {} / validation {} / test {}",
                    out.report.split_sizes.train,
                    out.report.split_sizes.validation,
                    out.report.split_sizes.test
                ),
                format!("best validation fitness: {:.4}", out.report.best_validation_fitness),
                format!(
                    "test: accuracy {:.4} sensitivity {:.4} specificity {:.4} h-mean {:.4}",
                    m.accuracy, m.sensitivity, m.specificity, m.h_mean
                ),
                format!("model: {}", out.model_path.display()),
                format!("report: {}", out.report_path.display()),
            ])
        }
        Command::Evaluate {
            model,
            dataset,
            positive_label,
            out,
        } => {
            let report = cmd_evaluate(model, dataset, positive_label, out.as_deref())?;
            let m = report.metrics;
            let c = &report.counts;
            Ok(vec![
                format!(
                    "{} samples: tp {} fp {} tn {} fn {}",
                    report.n_samples, c.tp, c.fp, c.tn, c.fn_
                ),
                format!(
                    "accuracy {:.4} sensitivity {:.4} specificity {:.4} h-mean {:.4}",
                    m.accuracy, m.sensitivity, m.specificity, m.h_mean
                ),
            ])
        }
        Command::Compare { settings } => {
            let cfg = settings.resolve()?;
            let report = cmd_compare(&cfg)?;
            let mut lines = vec!["method  n   acc    sens   spec   h-mean".to_string()];
            lines.extend(report.results.iter().map(|r| {
                format!(
                    "{:<6} {:>2}  {:.3}  {:.3}  {:.3}  {:.3}",
                    r.method,
                    r.neighbors,
                    r.metrics.accuracy,
                    r.metrics.sensitivity,
                    r.metrics.specificity,
                    r.metrics.h_mean
                )
            }));
            Ok(lines)
        }
        Command::Datagen {
            output,
            subjects,
            replicates,
            wavenumbers,
            separation,
            noise,
            seed,
        } => {
            let spec = SyntheticSpec {
                n_subjects: *subjects,
                replicates_per_subject: *replicates,
                n_wavenumbers: *wavenumbers,
                class_separation: *separation,
                noise_sd: *noise,
                seed: derive_seed(*seed, "datagen"),
            };
            let ds = cmd_datagen(&spec, output)?;
            Ok(vec![format!(
                "wrote {} spectra ({} subjects, {} wavenumbers) to {}",
                ds.n_samples(),
                subjects,
                ds.n_wavenumbers(),
                output.display()
            )])
        }
    }
}

/// Parses arguments, runs the command, prints output, returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 3 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(lines) => {
            for l in lines {
                println!("{l}");
            }
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    e.exit_code()
}
