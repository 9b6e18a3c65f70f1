use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};
use crate::experiment::Experiment;

pub const MANIFEST_FILE: &str = "manifest.json";

/// Record of one invocation. `params` alone determines every CSV the run
/// wrote; the remaining fields are provenance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentManifest {
    pub tool: String,
    pub version: String,
    pub subcommand: String,
    pub master_seed: Option<u64>,
    pub params: Experiment,
    pub replica_seeds: Vec<u64>,
    /// Files written, relative to the manifest's directory.
    pub outputs: Vec<String>,
    pub threads: usize,
    /// Start time, seconds since the Unix epoch.
    pub started_unix: f64,
    pub wall_seconds: f64,
}

impl ExperimentManifest {
    pub fn write(&self, dir: &Path) -> Result<()> {
        let path = dir.join(MANIFEST_FILE);
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        std::fs::write(&path, text).map_err(|e| CliError::io(&path, e))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Ok(serde_json::from_str(&text)?)
    }
}
