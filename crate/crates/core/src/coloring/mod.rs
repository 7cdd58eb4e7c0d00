//! Colors, partial colorings, the biased/dangerous classification and the
//! probability bounds attached to it.

mod bounds;
mod classify;

pub use bounds::{
    bias_probability_bound, binary_entropy, blackbox_feasible, exact_bias_probability, lll_feasible, ExactProbability,
};
pub use classify::{
    check_invariant, classify, effective_color, is_bichromatic, BichromaticReport, EdgeClass, EdgeClassification,
    InvariantClause, InvariantViolation, VertexClass,
};

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ColoringError {
    #[error("{what} = {value} outside its domain {domain}")]
    Domain { what: &'static str, value: f64, domain: &'static str },
    #[error("coloring {index} covers {got} vertices, expected {expected}")]
    WrongLength { index: usize, got: usize, expected: usize },
    #[error("declared x = {declared} but {actual} colorings present")]
    CountMismatch { declared: usize, actual: usize },
    #[error("io error on {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed coloring json: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Color {
    #[serde(rename = "R")]
    Red,
    #[serde(rename = "B")]
    Blue,
}

impl Color {
    pub fn other(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Color::Red => 'R',
            Color::Blue => 'B',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum VertexState {
    Undecided,
    Fixed(Color),
}

impl VertexState {
    pub fn fixed(self) -> Option<Color> {
        match self {
            VertexState::Fixed(c) => Some(c),
            VertexState::Undecided => None,
        }
    }

    pub fn is_undecided(self) -> bool {
        self == VertexState::Undecided
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeState {
    Active,
    Idle,
}

/// Biased/dangerous cut-offs as fractions of the edge size.
///
/// "At most `f·δ`" is evaluated as `count <= floor(f·δ)` and "at least
/// `f·δ`" as `count >= ceil(f·δ)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    pub biased_frac: f64,
    pub dangerous_frac: f64,
}

const ROUNDING_SLACK: f64 = 1e-9;

impl Thresholds {
    pub fn uniform(alpha: f64) -> Self {
        Self { biased_frac: alpha, dangerous_frac: alpha }
    }

    /// Biased at `δ/8`, dangerous at `δ/9`.
    pub fn first_pass_preset() -> Self {
        Self { biased_frac: 1.0 / 8.0, dangerous_frac: 1.0 / 9.0 }
    }

    pub fn biased_max(&self, delta: usize) -> usize {
        floor_frac(self.biased_frac, delta)
    }

    pub fn dangerous_min(&self, delta: usize) -> usize {
        ceil_frac(self.dangerous_frac, delta)
    }

    /// Lower bound on undecided vertices that every active edge keeps.
    pub fn undecided_min(&self, delta: usize) -> usize {
        floor_frac(self.biased_frac.min(self.dangerous_frac), delta)
    }

    pub fn validate(&self) -> Result<(), ColoringError> {
        for (what, value) in [("biased_frac", self.biased_frac), ("dangerous_frac", self.dangerous_frac)] {
            if !(value > 0.0 && value < 0.5) {
                return Err(ColoringError::Domain { what, value, domain: "(0, 1/2)" });
            }
        }
        Ok(())
    }
}

pub(crate) fn floor_frac(frac: f64, delta: usize) -> usize {
    (frac * delta as f64 + ROUNDING_SLACK).floor().max(0.0) as usize
}

pub(crate) fn ceil_frac(frac: f64, delta: usize) -> usize {
    (frac * delta as f64 - ROUNDING_SLACK).ceil().max(0.0) as usize
}

/// Per-vertex fixed/undecided status and per-edge active/idle status.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PartialColoringState {
    vertex_state: Vec<VertexState>,
    edge_state: Vec<EdgeState>,
    phase_index: usize,
}

impl PartialColoringState {
    /// Phase 0: every vertex undecided, every edge active.
    pub fn initial(n_vertices: usize, n_edges: usize) -> Self {
        Self {
            vertex_state: vec![VertexState::Undecided; n_vertices],
            edge_state: vec![EdgeState::Active; n_edges],
            phase_index: 0,
        }
    }

    pub fn from_parts(vertex_state: Vec<VertexState>, edge_state: Vec<EdgeState>, phase_index: usize) -> Self {
        Self { vertex_state, edge_state, phase_index }
    }

    pub fn vertex(&self, v: usize) -> VertexState {
        self.vertex_state[v]
    }

    pub fn edge(&self, e: usize) -> EdgeState {
        self.edge_state[e]
    }

    pub fn vertex_states(&self) -> &[VertexState] {
        &self.vertex_state
    }

    pub fn edge_states(&self) -> &[EdgeState] {
        &self.edge_state
    }

    pub fn phase_index(&self) -> usize {
        self.phase_index
    }

    pub fn set_phase_index(&mut self, phase: usize) {
        self.phase_index = phase;
    }

    pub fn is_active(&self, e: usize) -> bool {
        self.edge_state[e] == EdgeState::Active
    }

    pub fn active_edges(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.edge_state.len()).filter(|&e| self.is_active(e))
    }

    pub fn undecided_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.vertex_state.len()).filter(|&v| self.vertex_state[v].is_undecided())
    }

    /// Fixes an undecided vertex. Fixed vertices never change color.
    pub fn fix_vertex(&mut self, v: usize, color: Color) {
        match self.vertex_state[v] {
            VertexState::Undecided => self.vertex_state[v] = VertexState::Fixed(color),
            VertexState::Fixed(c) => assert_eq!(c, color, "vertex {v} already fixed"),
        }
    }

    pub fn idle_edge(&mut self, e: usize) {
        self.edge_state[e] = EdgeState::Idle;
    }

    /// Colors present among the fixed vertices of `edge`.
    pub fn fixed_colors(&self, edge: &[usize]) -> (bool, bool) {
        let mut red = false;
        let mut blue = false;
        for &v in edge {
            match self.vertex_state[v] {
                VertexState::Fixed(Color::Red) => red = true,
                VertexState::Fixed(Color::Blue) => blue = true,
                VertexState::Undecided => {}
            }
        }
        (red, blue)
    }

    pub fn fixed_part_bichromatic(&self, edge: &[usize]) -> bool {
        self.fixed_colors(edge) == (true, true)
    }

    pub fn undecided_count(&self, edge: &[usize]) -> usize {
        edge.iter().filter(|&&v| self.vertex_state[v].is_undecided()).count()
    }

    pub fn all_fixed(&self) -> Option<Vec<Color>> {
        self.vertex_state.iter().map(|s| s.fixed()).collect()
    }
}

/// The phase colorings `C_1..C_x`, each a total map from vertices to colors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColoringSequence {
    colorings: Vec<Vec<Color>>,
}

#[derive(Serialize, Deserialize)]
struct ColoringSequenceFile {
    x: usize,
    colorings: Vec<Vec<Color>>,
}

impl ColoringSequence {
    pub fn new(colorings: Vec<Vec<Color>>) -> Self {
        Self { colorings }
    }

    /// `x` independent uniform colorings of `n_vertices` vertices.
    pub fn random<R: rand::Rng + ?Sized>(n_vertices: usize, x: usize, rng: &mut R) -> Self {
        let colorings = (0..x)
            .map(|_| (0..n_vertices).map(|_| if rng.gen::<bool>() { Color::Blue } else { Color::Red }).collect())
            .collect();
        Self { colorings }
    }

    pub fn x(&self) -> usize {
        self.colorings.len()
    }

    pub fn get(&self, phase: usize) -> &[Color] {
        &self.colorings[phase]
    }

    pub fn colorings(&self) -> &[Vec<Color>] {
        &self.colorings
    }

    pub fn validate(&self, n_vertices: usize) -> Result<(), ColoringError> {
        for (index, c) in self.colorings.iter().enumerate() {
            if c.len() != n_vertices {
                return Err(ColoringError::WrongLength { index, got: c.len(), expected: n_vertices });
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let file = ColoringSequenceFile { x: self.x(), colorings: self.colorings.clone() };
        serde_json::to_string(&file).expect("coloring sequence serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, ColoringError> {
        let file: ColoringSequenceFile = serde_json::from_str(text)?;
        if file.x != file.colorings.len() {
            return Err(ColoringError::CountMismatch { declared: file.x, actual: file.colorings.len() });
        }
        Ok(Self { colorings: file.colorings })
    }

    pub fn load(path: &Path) -> Result<Self, ColoringError> {
        let text = fs::read_to_string(path)
            .map_err(|source| ColoringError::Io { path: path.display().to_string(), source })?;
        Self::from_json(&text)
    }

    pub fn save(&self, path: &Path) -> Result<(), ColoringError> {
        fs::write(path, self.to_json()).map_err(|source| ColoringError::Io { path: path.display().to_string(), source })
    }
}

impl<'de> Deserialize<'de> for ColoringSequence {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let file = ColoringSequenceFile::deserialize(deserializer)?;
        if file.x != file.colorings.len() {
            return Err(serde::de::Error::custom(format!(
                "declared x = {} but {} colorings present",
                file.x,
                file.colorings.len()
            )));
        }
        Ok(Self { colorings: file.colorings })
    }
}

impl Serialize for ColoringSequence {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ColoringSequenceFile { x: self.x(), colorings: self.colorings.clone() }.serialize(serializer)
    }
}
