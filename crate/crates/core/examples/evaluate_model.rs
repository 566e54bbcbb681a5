//! Trains a small model, saves it, reloads it and scores raw spectra with
//! the stored preprocessing.
//!
//! ```text
//! cargo run --example evaluate_model -- [model.json]
//! ```

use ganet::baselines::{generate_synthetic, metrics, ConfusionCounts, SyntheticSpec};
use ganet::evolve::{run_ganet, GanetConfig, GanetModel, Preset};
use ganet::spectra::{preprocess, split_by_subject, PreprocessConfig, SplitSpec};

fn main() -> ganet::Result<()> {
    let path = std::env::args().nth(1).unwrap_or_else(|| "model.json".into());

    let data = generate_synthetic(&SyntheticSpec { seed: 4, ..SyntheticSpec::default() })?;
    let split = split_by_subject(&data, &SplitSpec::default())?;
    let mut cfg = GanetConfig::from_preset(Preset::GanetK);
    cfg.preprocess = PreprocessConfig::amide_i();
    cfg.ga.generations = 20;
    let model = run_ganet(
        &preprocess(&split.train, &cfg.preprocess)?,
        &preprocess(&split.validation, &cfg.preprocess)?,
        &cfg,
    )?;
    model.save(&path)?;

    let loaded = GanetModel::load(&path)?;
    // raw test spectra; the model applies its own preprocessing
    let predicted = loaded.predict_raw(&split.test)?;
    let counts = ConfusionCounts::from_predictions(split.test.labels(), &predicted, "ASD")?;
    let m = metrics(&counts)?;
    println!("model written to {path}");
    println!(
        "tp {} fp {} tn {} fn {}: acc {:.3} sens {:.3} spec {:.3} h-mean {:.3}",
        counts.tp, counts.fp, counts.tn, counts.fn_, m.accuracy, m.sensitivity, m.specificity, m.h_mean
    );
    Ok(())
}
