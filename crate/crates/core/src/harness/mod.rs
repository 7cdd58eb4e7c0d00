//! Instance generators, the brute-force existence oracle, the experiments
//! and the toy coloring-sequence search.

mod experiments;
mod generate;
mod oracle;
mod report;
mod search;

pub use experiments::{
    experiment_claim_failure_prob, experiment_epoch_shrinkage, experiment_success_rate, fitted_ratio, trial_rng,
    unsuccessful_through, ExperimentParams, InstanceSource, SuccessCriteria,
};
pub use generate::{generate, Family, GeneratorSpec};
pub use oracle::{brute_force_bichromatic, BruteForce, BRUTE_FORCE_MAX_VERTICES};
pub use report::{
    wilson_interval, ExperimentReport, Interval, OutputFormat, TrialOutcome, TrialRecord, REPORT_SCHEMA_VERSION,
};
pub use search::{lexicographic_sequence, search_colorings, succeeds_on_all, SearchConfig, SearchOutcome, SearchStage};

use thiserror::Error;

use crate::hypergraph::HypergraphError;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("bad specification: {0}")]
    BadSpec(String),
    #[error("placed {placed} of {wanted} edges before the degree cap {cap} became unsatisfiable")]
    GenerationFailed { placed: usize, wanted: usize, cap: usize },
    #[error("{n_vertices} vertices exceed the brute-force cap of {cap}")]
    TooLarge { n_vertices: usize, cap: usize },
    #[error("no sequence found after examining {examined}")]
    NotFound { examined: u64 },
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
    #[error("malformed report json: {0}")]
    Json(#[from] serde_json::Error),
}
