//! Evolves a graph on a synthetic split and prints the fitness history.
//!
//! ```text
//! cargo run --release --example train_ganet -- [preset] [generations]
//! ```

use ganet::baselines::{generate_synthetic, metrics, ConfusionCounts, SyntheticSpec};
use ganet::evolve::{run_ganet, GanetConfig, Preset};
use ganet::spectra::{preprocess, split_by_subject, PreprocessConfig, SplitSpec};

fn main() -> ganet::Result<()> {
    let mut args = std::env::args().skip(1);
    let preset: Preset = args.next().as_deref().unwrap_or("ganet-e").parse()?;
    let generations = args.next().and_then(|g| g.parse().ok()).unwrap_or(50);

    // a harder set than the default so the search has something to do
    let data = generate_synthetic(&SyntheticSpec {
        class_separation: 0.03,
        noise_sd: 0.03,
        ..SyntheticSpec::default()
    })?;
    let split = split_by_subject(&data, &SplitSpec::default())?;

    let mut cfg = GanetConfig::from_preset(preset);
    cfg.preprocess = PreprocessConfig::amide_i();
    cfg.ga.generations = generations;
    let train = preprocess(&split.train, &cfg.preprocess)?;
    let validation = preprocess(&split.validation, &cfg.preprocess)?;
    let test = preprocess(&split.test, &cfg.preprocess)?;

    let model = run_ganet(&train, &validation, &cfg)?;
    for h in model.history.iter().step_by((generations / 10).max(1)) {
        println!(
            "gen {:>4}  best {:.3}  mean {:.3}  best-ever {:.3}",
            h.generation, h.best, h.mean, h.best_ever
        );
    }
    println!(
        "edges kept: {} of {} candidates",
        model.train_graph.edge_count(),
        model.map.filled()
    );

    let predicted = model.predict(&test)?;
    let m = metrics(&ConfusionCounts::from_predictions(test.labels(), &predicted, "ASD")?)?;
    println!(
        "{preset} test: acc {:.3} sens {:.3} spec {:.3} h-mean {:.3}",
        m.accuracy, m.sensitivity, m.specificity, m.h_mean
    );
    Ok(())
}
