//! GANet against the kNN-graph baseline on a few synthetic datasets.
//!
//! ```text
//! cargo run --release --example compare_on_synthetic -- [separation] [noise_sd]
//! ```

use ganet::baselines::{generate_synthetic, knng_classify, SyntheticSpec};
use ganet::evolve::{run_ganet, GanetConfig, Preset};
use ganet::spectra::{preprocess, split_by_subject, PreprocessConfig, SplitSpec};

fn accuracy(truth: &[String], pred: &[String]) -> f64 {
    truth.iter().zip(pred).filter(|(a, b)| a == b).count() as f64 / truth.len() as f64
}

fn main() -> ganet::Result<()> {
    let args: Vec<f64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let separation = args.first().copied().unwrap_or(0.04);
    let noise_sd = args.get(1).copied().unwrap_or(0.03);

    let mut cfg = GanetConfig::from_preset(Preset::GanetE);
    cfg.preprocess = PreprocessConfig::amide_i();

    println!("seed  ganet  knng");
    for seed in 0..5u64 {
        let data = generate_synthetic(&SyntheticSpec {
            n_subjects: 50,
            replicates_per_subject: 3,
            n_wavenumbers: 200,
            class_separation: separation,
            noise_sd,
            seed,
        })?;
        let split = split_by_subject(&data, &SplitSpec { seed, ..SplitSpec::default() })?;
        let train = preprocess(&split.train, &cfg.preprocess)?;
        let validation = preprocess(&split.validation, &cfg.preprocess)?;
        let test = preprocess(&split.test, &cfg.preprocess)?;

        cfg.ga.seed = seed;
        let model = run_ganet(&train, &validation, &cfg)?;
        let ganet_acc = accuracy(test.labels(), &model.predict(&test)?);
        let knng_pred = knng_classify(&train, &test, cfg.ga.q, cfg.metric, &cfg.importance)?;
        let knng_acc = accuracy(test.labels(), &knng_pred);
        println!("{seed:>4}  {ganet_acc:.3}  {knng_acc:.3}");
    }
    Ok(())
}
