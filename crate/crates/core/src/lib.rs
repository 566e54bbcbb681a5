//! Genetic-algorithm optimized similarity graphs for importance-based
//! classification of spectra.
//!
//! The pieces, bottom-up:
//!
//! - [`spectra`]: labeled spectra, CSV I/O, preprocessing, subject-grouped splits
//! - [`graph`]: similarity, MapAll candidates, genome decoding, vertex
//!   importance and the importance classifier
//! - [`evolve`]: the genetic search and the persisted [`evolve::GanetModel`]
//! - [`baselines`]: kNN-graph baseline, metrics, synthetic data
//! - [`cli`]: the commands behind the `ganet` binary

pub mod baselines;
pub mod cli;
pub mod error;
pub mod evolve;
pub mod graph;
pub mod io;
pub mod labels;
pub mod spectra;

pub use error::{Error, Result};
