//! The phase/epoch orchestrator: temporary colorings, gossip, per-vertex
//! decisions, piece recoloring, idle transitions and the invariant audit.

mod config;
mod local;
mod phase;
mod series;

pub use config::{RunConfig, RunConfigError};
pub use phase::{phase, ComponentRecord, FixReason, PhaseTrace, PieceRecord};
pub use series::epoch_skeleton_series;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::blackbox::{BlackboxConfig, BlackboxError};
use crate::coloring::{
    is_bichromatic, Color, ColoringError, ColoringSequence, InvariantViolation, PartialColoringState, Thresholds,
};
use crate::hypergraph::Hypergraph;

#[derive(Debug, Error)]
pub enum AlgoError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error("invariant violated after phase {phase}: {violations:?}")]
    InvariantViolation { phase: usize, violations: Vec<InvariantViolation>, trace: Box<PhaseTrace> },
    #[error("phase {phase}: piece with core {core:?} could not be recolored: {source}")]
    BlackboxInfeasible { phase: usize, core: Vec<usize>, source: BlackboxError },
    #[error("phase {phase}: non-dangerous edge {edge} did not become idle")]
    ObservationViolated { phase: usize, edge: usize },
    #[error("phase {phase}: dangerous edge {edge} touches more than one biased component")]
    CrossComponentDanger { phase: usize, edge: usize },
    #[error("phase {phase}: vertex {vertex} belongs to two different pieces")]
    InconsistentPieces { phase: usize, vertex: usize },
    #[error("phase {phase}: vertex {vertex} needed facts outside its view")]
    LocalityViolation { phase: usize, vertex: usize },
    #[error("success claimed but edges {0:?} are monochromatic")]
    UnsoundSuccess(Vec<usize>),
}

/// How per-vertex decisions are evaluated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecisionMode {
    /// Every vertex decides from its own gossip view.
    #[default]
    Local,
    /// Components are computed once over the whole residual hypergraph.
    Global,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgoParams {
    pub n: usize,
    pub delta: usize,
    pub thresholds: Thresholds,
    pub u: usize,
    pub y: usize,
    pub beta: usize,
    pub num_epochs: usize,
    pub colorings: ColoringSequence,
    pub blackbox: BlackboxConfig,
    pub mode: DecisionMode,
}

/// `max(1, ceil(log2 n))`.
pub fn ceil_log2(n: usize) -> usize {
    if n <= 2 {
        1
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

impl AlgoParams {
    /// Default schedule for `h`: `beta = num_epochs = ceil(log2 n)` with
    /// `n = max(#vertices, #edges)`, and `y = 6u + 2`.
    pub fn new(h: &Hypergraph, alpha: f64, u: usize, colorings: ColoringSequence) -> Result<Self, AlgoError> {
        let n = h.n_vertices().max(h.n_edges());
        let beta = ceil_log2(n);
        Self::with_schedule(h, Thresholds::uniform(alpha), u, beta, beta, colorings)
    }

    pub fn with_schedule(
        h: &Hypergraph,
        thresholds: Thresholds,
        u: usize,
        beta: usize,
        num_epochs: usize,
        colorings: ColoringSequence,
    ) -> Result<Self, AlgoError> {
        let params = Self {
            n: h.n_vertices().max(h.n_edges()),
            delta: h.delta(),
            thresholds,
            u,
            y: 6 * u + 2,
            beta,
            num_epochs,
            colorings,
            blackbox: BlackboxConfig::default(),
            mode: DecisionMode::Local,
        };
        params.validate(h)?;
        Ok(params)
    }

    pub fn with_mode(mut self, mode: DecisionMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn x(&self) -> usize {
        self.colorings.x()
    }

    pub fn alpha(&self) -> f64 {
        self.thresholds.biased_frac
    }

    /// Components whose induced diameter is at most this are settled in the
    /// phase that finds them. With `y = 6u + 2` a vertex sees every edge
    /// within distance `3u + 1` and every temporary color within `3u`, which
    /// certifies diameters up to `3u - 2`.
    pub fn small_diameter_limit(&self) -> usize {
        3 * self.u - 2
    }

    pub fn validate(&self, h: &Hypergraph) -> Result<(), AlgoError> {
        let bad = |msg: String| Err(AlgoError::InvalidParams(msg));
        if self.u <= 2 {
            return bad(format!("u = {} must exceed 2", self.u));
        }
        if self.y != 6 * self.u + 2 {
            return bad(format!("y = {} must equal 6u + 2 = {}", self.y, 6 * self.u + 2));
        }
        if self.delta != h.delta() {
            return bad(format!("delta = {} but the instance has {}", self.delta, h.delta()));
        }
        if self.beta == 0 || self.num_epochs == 0 {
            return bad("beta and num_epochs must be positive".into());
        }
        if self.x() != self.beta * self.num_epochs {
            return bad(format!(
                "{} colorings for beta * num_epochs = {} phases",
                self.x(),
                self.beta * self.num_epochs
            ));
        }
        self.thresholds.validate()?;
        self.colorings.validate(h.n_vertices())?;
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    Success { coloring: Vec<Color> },
    Exhausted { state: PartialColoringState, active_edges: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub outcome: Outcome,
    pub traces: Vec<PhaseTrace>,
    pub phases_executed: usize,
    pub total_rounds: usize,
    pub total_messages: u64,
}

impl RunResult {
    pub fn is_success(&self) -> bool {
        matches!(self.outcome, Outcome::Success { .. })
    }

    pub fn coloring(&self) -> Option<&[Color]> {
        match &self.outcome {
            Outcome::Success { coloring } => Some(coloring),
            Outcome::Exhausted { .. } => None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("run result serializes")
    }
}

/// Runs phases `1..=x` until no active edge remains.
pub fn run(h: &Hypergraph, params: &AlgoParams) -> Result<RunResult, AlgoError> {
    params.validate(h)?;
    let mut state = PartialColoringState::initial(h.n_vertices(), h.n_edges());
    let mut traces = Vec::new();
    for i in 0..params.x() {
        if state.active_edges().next().is_none() {
            break;
        }
        let (next, trace) = phase(h, &state, params.colorings.get(i), params)?;
        state = next;
        traces.push(trace);
    }
    let total_rounds = traces.iter().map(|t| t.rounds).sum();
    let total_messages = traces.iter().map(|t| t.messages).sum();
    let active_edges: Vec<usize> = state.active_edges().collect();
    let outcome = if active_edges.is_empty() {
        // only vertices of an edgeless instance can still be undecided here
        let fallback = params.colorings.colorings().first();
        let coloring: Vec<Color> = (0..h.n_vertices())
            .map(|v| state.vertex(v).fixed().or(fallback.map(|c| c[v])).unwrap_or(Color::Red))
            .collect();
        let report = is_bichromatic(h, &coloring);
        if !report.is_bichromatic() {
            return Err(AlgoError::UnsoundSuccess(report.monochromatic));
        }
        Outcome::Success { coloring }
    } else {
        Outcome::Exhausted { state, active_edges }
    };
    Ok(RunResult { outcome, phases_executed: traces.len(), traces, total_rounds, total_messages })
}
