use std::fs;
use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{ceil_log2, AlgoError, AlgoParams};
use crate::coloring::{ColoringError, ColoringSequence, Thresholds};
use crate::hypergraph::{Hypergraph, HypergraphError};

#[derive(Debug, Error)]
pub enum RunConfigError {
    #[error("io error on {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed run config: {0}")]
    Json(#[from] serde_json::Error),
    #[error("run config needs either a colorings path or a seed")]
    NoColorings,
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Algo(#[from] AlgoError),
}

/// `{instance, colorings | seed, alpha, u, beta, num_epochs}`. Relative
/// paths resolve against the config file's directory.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub instance: PathBuf,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colorings: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub alpha: f64,
    #[serde(default = "default_u")]
    pub u: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub num_epochs: Option<usize>,
}

fn default_u() -> usize {
    3
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, RunConfigError> {
        let text = fs::read_to_string(path)
            .map_err(|source| RunConfigError::Io { path: path.display().to_string(), source })?;
        let mut config: RunConfig = serde_json::from_str(&text)?;
        let base = path.parent().unwrap_or(Path::new("."));
        config.instance = base.join(&config.instance);
        config.colorings = config.colorings.map(|c| base.join(c));
        Ok(config)
    }

    /// Loads the instance and builds parameters. Without a colorings file,
    /// `beta * num_epochs` uniform colorings are drawn from `seed`.
    pub fn resolve(&self) -> Result<(Hypergraph, AlgoParams), RunConfigError> {
        let h = Hypergraph::load(&self.instance)?;
        let n = h.n_vertices().max(h.n_edges());
        let beta = self.beta.unwrap_or_else(|| ceil_log2(n));
        let num_epochs = self.num_epochs.unwrap_or_else(|| ceil_log2(n));
        let colorings = match (&self.colorings, self.seed) {
            (Some(path), _) => ColoringSequence::load(path)?,
            (None, Some(seed)) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                ColoringSequence::random(h.n_vertices(), beta * num_epochs, &mut rng)
            }
            (None, None) => return Err(RunConfigError::NoColorings),
        };
        let params =
            AlgoParams::with_schedule(&h, Thresholds::uniform(self.alpha), self.u, beta, num_epochs, colorings)?;
        Ok((h, params))
    }
}
