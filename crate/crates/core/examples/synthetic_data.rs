//! Generates a synthetic two-class spectra set and writes it as CSV.
//!
//! ```text
//! cargo run --example synthetic_data -- out.csv [seed]
//! ```

use ganet::baselines::{generate_synthetic, SyntheticSpec};
use ganet::spectra::save_csv;

fn main() -> ganet::Result<()> {
    let mut args = std::env::args().skip(1);
    let path = args.next().unwrap_or_else(|| "synthetic.csv".into());
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(0);

    let spec = SyntheticSpec { seed, ..SyntheticSpec::default() };
    let ds = generate_synthetic(&spec)?;
    save_csv(&ds, &path)?;

    let asd = ds.labels().iter().filter(|l| *l == "ASD").count();
    println!(
        "{} spectra from {} subjects ({} ASD / {} TD), {} wavenumbers {}..{} -> {path}",
        ds.n_samples(),
        ds.subjects().len(),
        asd,
        ds.n_samples() - asd,
        ds.n_wavenumbers(),
        ds.wavenumbers()[0],
        ds.wavenumbers()[ds.n_wavenumbers() - 1],
    );
    Ok(())
}
