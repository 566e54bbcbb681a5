//! Runs each preprocessing pipeline over a dataset and reports the shape
//! after every step.
//!
//! ```text
//! cargo run --example preprocess_spectra -- [input.csv]
//! ```

use ganet::baselines::{generate_synthetic, SyntheticSpec};
use ganet::spectra::{load_csv, preprocess_traced, PreprocessConfig};

fn main() -> ganet::Result<()> {
    let ds = match std::env::args().nth(1) {
        Some(path) => load_csv(path)?,
        None => generate_synthetic(&SyntheticSpec::default())?,
    };
    println!("input: {} x {}", ds.n_samples(), ds.n_wavenumbers());

    for name in ["amide-i", "smoot-diff-norm", "none"] {
        let cfg = PreprocessConfig::preset(name)?;
        let (out, trace) = preprocess_traced(&ds, &cfg)?;
        let steps: Vec<String> = trace.iter().map(|(s, n)| format!("{s} ({n})")).collect();
        let row = &out.samples()[0];
        let peak = row.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        println!("{name:>16}: {}", if steps.is_empty() { "-".into() } else { steps.join(" -> ") });
        println!("{:>16}  first spectrum max {peak:.4}", "");
    }
    Ok(())
}
