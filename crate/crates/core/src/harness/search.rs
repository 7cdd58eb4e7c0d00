use rand::Rng;
use serde::{Deserialize, Serialize};

use super::experiments::trial_rng;
use super::HarnessError;
use crate::algorithm::{run, AlgoParams};
use crate::coloring::{Color, ColoringSequence, Thresholds};
use crate::hypergraph::Hypergraph;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub alpha: f64,
    pub u: usize,
    pub beta: usize,
    pub num_epochs: usize,
    /// Total sequences examined: the first half in lexicographic order, the
    /// rest drawn at random from `seed`.
    pub budget: u64,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStage {
    Lexicographic,
    Random,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub sequence: ColoringSequence,
    /// Sequences examined, including the one returned.
    pub examined: u64,
    pub stage: SearchStage,
}

/// The `index`-th sequence of `x` colorings of `n` vertices in lexicographic
/// order, reading the colorings as one string with Red < Blue.
pub fn lexicographic_sequence(index: u128, n: usize, x: usize) -> ColoringSequence {
    let bits = n * x;
    let bit = |p: usize| {
        let shift = bits - 1 - p;
        shift < 128 && index >> shift & 1 == 1
    };
    let colorings =
        (0..x).map(|i| (0..n).map(|v| if bit(i * n + v) { Color::Blue } else { Color::Red }).collect()).collect();
    ColoringSequence::new(colorings)
}

/// Whether the algorithm succeeds on every instance under `seq`, each
/// instance reading the prefix of every coloring that covers its vertices.
pub fn succeeds_on_all(universe: &[Hypergraph], seq: &ColoringSequence, config: &SearchConfig) -> bool {
    universe.iter().all(|h| {
        let colorings = seq.colorings().iter().map(|c| c[..h.n_vertices()].to_vec()).collect();
        AlgoParams::with_schedule(
            h,
            Thresholds::uniform(config.alpha),
            config.u,
            config.beta,
            config.num_epochs,
            ColoringSequence::new(colorings),
        )
        .and_then(|p| run(h, &p))
        .is_ok_and(|r| r.is_success())
    })
}

/// Finds one coloring sequence on which the algorithm succeeds for every
/// instance of `universe`.
pub fn search_colorings(universe: &[Hypergraph], config: &SearchConfig) -> Result<SearchOutcome, HarnessError> {
    let n = universe.iter().map(Hypergraph::n_vertices).max().unwrap_or(0);
    let x = config.beta * config.num_epochs;
    let lex_budget = config.budget.div_ceil(2);
    let space = 1u128.checked_shl((n * x) as u32).unwrap_or(u128::MAX);
    let mut examined = 0u64;
    for index in 0..(lex_budget as u128).min(space) {
        examined += 1;
        let seq = lexicographic_sequence(index, n, x);
        if succeeds_on_all(universe, &seq, config) {
            return Ok(SearchOutcome { sequence: seq, examined, stage: SearchStage::Lexicographic });
        }
    }
    let mut rng = trial_rng(config.seed, 0);
    while examined < config.budget {
        examined += 1;
        let colorings = (0..x)
            .map(|_| (0..n).map(|_| if rng.gen::<bool>() { Color::Blue } else { Color::Red }).collect())
            .collect();
        let seq = ColoringSequence::new(colorings);
        if succeeds_on_all(universe, &seq, config) {
            return Ok(SearchOutcome { sequence: seq, examined, stage: SearchStage::Random });
        }
    }
    Err(HarnessError::NotFound { examined })
}
