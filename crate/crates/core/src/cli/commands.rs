use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use super::config::RunConfig;
use super::report::{
    history_csv, metrics_csv, to_json, Artifacts, CompareReport, EvaluationReport, MethodResult,
    RunReport, SamplePrediction, REPORT_VERSION,
};
use crate::baselines::{
    generate_synthetic, knng_classify, metrics, ConfusionCounts, SyntheticSpec,
};
use crate::error::{Error, Result};
use crate::evolve::{run_ganet, GanetModel};
use crate::io::write_atomic;
use crate::spectra::{
    load_csv, preprocess, preprocess_traced, split_by_subject, write_csv, DatasetSplit,
    PreprocessStep, SpectrumDataset,
};

/// Column counts of a preprocessing run: the input, then after each step.
#[derive(Debug, Clone, PartialEq)]
pub struct PreprocessSummary {
    pub input_columns: usize,
    pub steps: Vec<(PreprocessStep, usize)>,
    pub n_samples: usize,
}

pub fn cmd_preprocess(input: &Path, cfg: &RunConfig, output: &Path) -> Result<PreprocessSummary> {
    let raw = load_csv(input)?;
    let (out, steps) = preprocess_traced(&raw, &cfg.model.preprocess)?;
    let mut buf = Vec::new();
    write_csv(&out, &mut buf)?;
    write_atomic(output, &buf)?;
    Ok(PreprocessSummary {
        input_columns: raw.n_wavenumbers(),
        steps,
        n_samples: out.n_samples(),
    })
}

pub fn cmd_datagen(spec: &SyntheticSpec, output: &Path) -> Result<SpectrumDataset> {
    let ds = generate_synthetic(spec)?;
    let mut buf = Vec::new();
    write_csv(&ds, &mut buf)?;
    write_atomic(output, &buf)?;
    Ok(ds)
}

struct Prepared {
    raw: DatasetSplit,
    train: SpectrumDataset,
    validation: SpectrumDataset,
    test: SpectrumDataset,
}

fn dataset_path(cfg: &RunConfig) -> Result<&Path> {
    cfg.dataset
        .as_deref()
        .ok_or_else(|| Error::Config("no dataset given (set `dataset` or pass --dataset)".into()))
}

fn output_dir(cfg: &RunConfig) -> Result<&Path> {
    cfg.output_dir
        .as_deref()
        .ok_or_else(|| Error::Config("no output directory given (set `output_dir` or pass --out)".into()))
}

fn prepare(cfg: &RunConfig) -> Result<Prepared> {
    cfg.validate()?;
    let data = load_csv(dataset_path(cfg)?)?;
    if !data.labels().contains(&cfg.positive_label) {
        return Err(Error::Config(format!(
            "positive label `{}` does not occur in the dataset (labels: {:?})",
            cfg.positive_label,
            data.label_set()
        )));
    }
    let raw = split_by_subject(&data, &cfg.split)?;
    raw.check_label_sets()?;
    let pre = &cfg.model.preprocess;
    Ok(Prepared {
        train: preprocess(&raw.train, pre)?,
        validation: preprocess(&raw.validation, pre)?,
        test: preprocess(&raw.test, pre)?,
        raw,
    })
}

fn csv_bytes(ds: &SpectrumDataset) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    write_csv(ds, &mut buf)?;
    Ok(buf)
}

/// Writes every `(name, bytes)` into `dir`. Each file is written atomically,
/// and nothing is written until all contents are ready.
fn write_outputs(dir: &Path, files: &[(&str, Vec<u8>)]) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    files
        .iter()
        .map(|(name, bytes)| {
            let path = dir.join(name);
            write_atomic(&path, bytes).map(|_| path)
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct TrainOutcome {
    pub report: RunReport,
    pub model: GanetModel,
    pub report_path: PathBuf,
    pub model_path: PathBuf,
}

/// Split, preprocess, evolve, score the test split, persist model and report.
pub fn cmd_train(cfg: &RunConfig) -> Result<TrainOutcome> {
    let started = Instant::now();
    let dir = output_dir(cfg)?.to_path_buf();
    let data = prepare(cfg)?;

    let model = run_ganet(&data.train, &data.validation, &cfg.model)?;
    let predicted = model.predict(&data.test)?;
    let counts =
        ConfusionCounts::from_predictions(data.test.labels(), &predicted, &cfg.positive_label)?;
    let quad = metrics(&counts)?;

    let artifacts = Artifacts::default();
    let report = RunReport {
        format: "ganet-run-report".into(),
        version: REPORT_VERSION,
        seed: cfg.seed,
        config: cfg.clone(),
        split_sizes: data.raw.sizes().into(),
        history: model.history.clone(),
        best_validation_fitness: model.best_fitness().unwrap_or(0.0),
        test_counts: counts.clone(),
        metrics: quad,
        wall_clock_seconds: started.elapsed().as_secs_f64(),
        artifacts: artifacts.clone(),
    };
    let row = MethodResult {
        method: "ganet".into(),
        neighbors: cfg.model.ga.q,
        counts,
        metrics: quad,
    };

    let files = [
        (artifacts.model.as_str(), model.to_json()?.into_bytes()),
        (artifacts.history_csv.as_str(), history_csv(&model.history).into_bytes()),
        (artifacts.metrics_csv.as_str(), metrics_csv(&[row]).into_bytes()),
        (artifacts.train_csv.as_str(), csv_bytes(&data.raw.train)?),
        (artifacts.validation_csv.as_str(), csv_bytes(&data.raw.validation)?),
        (artifacts.test_csv.as_str(), csv_bytes(&data.raw.test)?),
        ("report.json", to_json(&report)?.into_bytes()),
    ];
    write_outputs(&dir, &files)?;

    Ok(TrainOutcome {
        report,
        model,
        report_path: dir.join("report.json"),
        model_path: dir.join(&artifacts.model),
    })
}

/// Applies the model's stored preprocessing to `dataset` and scores every row.
pub fn cmd_evaluate(
    model_path: &Path,
    dataset: &Path,
    positive_label: &str,
    output: Option<&Path>,
) -> Result<EvaluationReport> {
    let model = GanetModel::load(model_path)?;
    let raw = load_csv(dataset)?;
    model.labels.encode(raw.labels())?;

    let predicted = model.predict_raw(&raw)?;
    let counts = ConfusionCounts::from_predictions(raw.labels(), &predicted, positive_label)?;
    let report = EvaluationReport {
        format: "ganet-evaluation-report".into(),
        version: REPORT_VERSION,
        n_samples: raw.n_samples(),
        metrics: metrics(&counts)?,
        counts,
        predictions: raw
            .sample_ids()
            .iter()
            .zip(raw.labels())
            .zip(predicted)
            .map(|((id, label), predicted)| SamplePrediction {
                sample_id: id.clone(),
                label: label.clone(),
                predicted,
            })
            .collect(),
    };
    if let Some(path) = output {
        write_atomic(path, to_json(&report)?.as_bytes())?;
    }
    Ok(report)
}

/// GANet and kNNG (one row per `k`) on the same split.
pub fn cmd_compare(cfg: &RunConfig) -> Result<CompareReport> {
    let started = Instant::now();
    let dir = output_dir(cfg)?.to_path_buf();
    if cfg.k_list.is_empty() {
        return Err(Error::Config("k_list is empty".into()));
    }
    let data = prepare(cfg)?;

    let score = |method: &str, neighbors: usize, predicted: Vec<String>| -> Result<MethodResult> {
        let counts =
            ConfusionCounts::from_predictions(data.test.labels(), &predicted, &cfg.positive_label)?;
        Ok(MethodResult {
            method: method.into(),
            neighbors,
            metrics: metrics(&counts)?,
            counts,
        })
    };

    let model = run_ganet(&data.train, &data.validation, &cfg.model)?;
    let mut results = vec![score("ganet", cfg.model.ga.q, model.predict(&data.test)?)?];
    for &k in &cfg.k_list {
        let predicted = knng_classify(
            &data.train,
            &data.test,
            k,
            cfg.model.metric,
            &cfg.model.importance,
        )?;
        results.push(score("knng", k, predicted)?);
    }

    let report = CompareReport {
        format: "ganet-compare-report".into(),
        version: REPORT_VERSION,
        seed: cfg.seed,
        config: cfg.clone(),
        split_sizes: data.raw.sizes().into(),
        results,
        wall_clock_seconds: started.elapsed().as_secs_f64(),
    };
    write_outputs(
        &dir,
        &[
            ("compare.csv", metrics_csv(&report.results).into_bytes()),
            ("compare.json", to_json(&report)?.into_bytes()),
        ],
    )?;
    Ok(report)
}
