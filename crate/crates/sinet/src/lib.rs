//! Std companion to `sinet-core`: a rayon-backed replica runner, edge-list,
//! CSV and JSON formats, experiment manifests, and the `sinet` command line.

pub mod cli;
pub mod edgelist;
pub mod error;
pub mod experiment;
pub mod grid;
pub mod manifest;
pub mod output;
pub mod plotdata;
pub mod runner;

pub use error::{CliError, Result};
pub use experiment::Experiment;
pub use manifest::ExperimentManifest;
pub use runner::Parallel;
