//! Deterministic sequential recoloring of one piece: a maximal biased
//! 1,2-component together with its adjacent dangerous edges.
//!
//! Every participating vertex runs this on its own copy of the piece, so the
//! output must depend on nothing but the canonical piece contents.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{Color, VertexState};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum BlackboxError {
    #[error("no bi-chromatic completion of the piece ({undecided} undecided vertices): {reason}")]
    Infeasible { undecided: usize, reason: &'static str },
    #[error("vertex {0} appears with conflicting states in the piece")]
    InconsistentVertex(usize),
    #[error("piece edge {0} has mismatched vertex and status lists")]
    MalformedEdge(usize),
}

/// One edge of a piece with the status each of its vertices has as input to
/// the recoloring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PieceEdge {
    pub edge: usize,
    pub vertices: Vec<usize>,
    pub status: Vec<VertexState>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Piece {
    edges: Vec<PieceEdge>,
    core: Vec<usize>,
    fringe: Vec<usize>,
}

/// Colors chosen for the undecided vertices of a piece.
pub type Assignment = BTreeMap<usize, Color>;

impl Piece {
    /// Canonicalizes edges (ascending edge index, ascending vertices) and
    /// checks that every vertex has one status across the piece.
    pub fn new(edges: Vec<PieceEdge>, core: Vec<usize>, fringe: Vec<usize>) -> Result<Self, BlackboxError> {
        let mut canonical = Vec::with_capacity(edges.len());
        for pe in edges {
            if pe.vertices.len() != pe.status.len() {
                return Err(BlackboxError::MalformedEdge(pe.edge));
            }
            let mut pairs: Vec<(usize, VertexState)> = pe.vertices.into_iter().zip(pe.status).collect();
            pairs.sort_by_key(|&(v, _)| v);
            let (vertices, status) = pairs.into_iter().unzip();
            canonical.push(PieceEdge { edge: pe.edge, vertices, status });
        }
        canonical.sort();
        canonical.dedup();
        let mut seen: BTreeMap<usize, VertexState> = BTreeMap::new();
        for pe in &canonical {
            for (&v, &s) in pe.vertices.iter().zip(&pe.status) {
                if *seen.entry(v).or_insert(s) != s {
                    return Err(BlackboxError::InconsistentVertex(v));
                }
            }
        }
        let mut core = core;
        core.sort_unstable();
        core.dedup();
        let mut fringe = fringe;
        fringe.sort_unstable();
        fringe.dedup();
        Ok(Self { edges: canonical, core, fringe })
    }

    pub fn edges(&self) -> &[PieceEdge] {
        &self.edges
    }

    pub fn core(&self) -> &[usize] {
        &self.core
    }

    pub fn fringe(&self) -> &[usize] {
        &self.fringe
    }

    pub fn edge_ids(&self) -> Vec<usize> {
        self.edges.iter().map(|pe| pe.edge).collect()
    }

    /// Undecided vertices in ascending order; this is the recoloring order.
    pub fn undecided_vertices(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .flat_map(|pe| pe.vertices.iter().zip(&pe.status))
            .filter(|(_, s)| s.is_undecided())
            .map(|(&v, _)| v)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlackboxConfig {
    /// Up to this many undecided vertices the search is exhaustive.
    pub exhaustive_cap: usize,
    /// Node budget for the backtracking fallback used when the greedy pass
    /// fails on a piece above the cap.
    pub fallback_nodes: u64,
}

impl Default for BlackboxConfig {
    fn default() -> Self {
        Self { exhaustive_cap: 20, fallback_nodes: 2_000_000 }
    }
}

/// Piece flattened onto local vertex indices `0..k` in ascending global order.
struct Flat {
    undecided: Vec<usize>,
    /// piece edges containing each local vertex
    incident: Vec<Vec<usize>>,
    /// per edge: fixed red count, fixed blue count, undecided count
    base: Vec<[usize; 3]>,
}

impl Flat {
    fn new(p: &Piece) -> Self {
        let undecided = p.undecided_vertices();
        let mut incident = vec![Vec::new(); undecided.len()];
        let mut base = Vec::with_capacity(p.edges.len());
        for (ei, pe) in p.edges.iter().enumerate() {
            let mut counts = [0usize; 3];
            for (&v, s) in pe.vertices.iter().zip(&pe.status) {
                match s {
                    VertexState::Fixed(Color::Red) => counts[0] += 1,
                    VertexState::Fixed(Color::Blue) => counts[1] += 1,
                    VertexState::Undecided => {
                        counts[2] += 1;
                        let local = undecided.binary_search(&v).expect("undecided vertex indexed");
                        incident[local].push(ei);
                    }
                }
            }
            base.push(counts);
        }
        Self { undecided, incident, base }
    }

    fn to_assignment(&self, colors: &[Color]) -> Assignment {
        self.undecided.iter().copied().zip(colors.iter().copied()).collect()
    }
}

fn apply(counts: &mut [usize; 3], color: Color) {
    counts[2] -= 1;
    match color {
        Color::Red => counts[0] += 1,
        Color::Blue => counts[1] += 1,
    }
}

fn undo(counts: &mut [usize; 3], color: Color) {
    counts[2] += 1;
    match color {
        Color::Red => counts[0] -= 1,
        Color::Blue => counts[1] -= 1,
    }
}

fn dead(counts: &[usize; 3]) -> bool {
    counts[2] == 0 && (counts[0] == 0 || counts[1] == 0)
}

/// Depth-first search in canonical order (lower vertex first, Red before
/// Blue), pruning as soon as some edge is fully colored with one color.
/// Returns the lexicographically first valid completion, or `None` when the
/// space is exhausted or the node budget runs out (second field true).
fn backtrack(flat: &Flat, budget: Option<u64>) -> (Option<Vec<Color>>, bool) {
    let k = flat.undecided.len();
    let mut counts = flat.base.clone();
    if counts.iter().any(dead) {
        return (None, false);
    }
    let mut colors: Vec<Color> = Vec::with_capacity(k);
    let mut nodes = 0u64;
    // each frame: the color currently placed at depth `colors.len() - 1`
    loop {
        if colors.len() == k {
            return (Some(colors), false);
        }
        let depth = colors.len();
        let mut placed = false;
        let mut next = Some(Color::Red);
        while let Some(color) = next {
            nodes += 1;
            if budget.is_some_and(|b| nodes > b) {
                return (None, true);
            }
            for &e in &flat.incident[depth] {
                apply(&mut counts[e], color);
            }
            if flat.incident[depth].iter().all(|&e| !dead(&counts[e])) {
                colors.push(color);
                placed = true;
                break;
            }
            for &e in &flat.incident[depth] {
                undo(&mut counts[e], color);
            }
            next = (color == Color::Red).then_some(Color::Blue);
        }
        if placed {
            continue;
        }
        // backtrack to the deepest Red choice and flip it
        loop {
            let Some(color) = colors.pop() else {
                return (None, false);
            };
            let d = colors.len();
            for &e in &flat.incident[d] {
                undo(&mut counts[e], color);
            }
            if color == Color::Red {
                nodes += 1;
                if budget.is_some_and(|b| nodes > b) {
                    return (None, true);
                }
                for &e in &flat.incident[d] {
                    apply(&mut counts[e], Color::Blue);
                }
                if flat.incident[d].iter().all(|&e| !dead(&counts[e])) {
                    colors.push(Color::Blue);
                    break;
                }
                for &e in &flat.incident[d] {
                    undo(&mut counts[e], Color::Blue);
                }
            }
        }
    }
}

/// Lexicographically first valid assignment in canonical order.
pub fn exhaustive_recolor(p: &Piece) -> Result<Assignment, BlackboxError> {
    let flat = Flat::new(p);
    match backtrack(&flat, None) {
        (Some(colors), _) => Ok(flat.to_assignment(&colors)),
        _ => Err(BlackboxError::Infeasible { undecided: flat.undecided.len(), reason: "exhaustive search found none" }),
    }
}

/// Expected number of edges ending monochromatic if the remaining undecided
/// vertices of the edge were colored uniformly at random.
fn edge_potential(counts: &[usize; 3]) -> f64 {
    let [red, blue, rem] = *counts;
    match (red > 0, blue > 0) {
        (true, true) => 0.0,
        (true, false) | (false, true) => (-(rem as f64)).exp2(),
        (false, false) => (1.0 - rem as f64).exp2(),
    }
}

/// Conditional-expectation greedy.
///
/// Vertices are colored in ascending order; each takes the color minimizing
/// the potential `Σ_f Pr[f ends monochromatic]` over the piece edges, with
/// ties going to Red. The potential never increases, so a piece whose
/// initial potential is below 1 always ends bi-chromatic.
pub fn greedy_recolor(p: &Piece) -> Result<Assignment, BlackboxError> {
    let flat = Flat::new(p);
    let mut counts = flat.base.clone();
    let mut colors = Vec::with_capacity(flat.undecided.len());
    for local in 0..flat.undecided.len() {
        let score = |color: Color, counts: &mut Vec<[usize; 3]>| {
            let mut total = 0.0;
            for &e in &flat.incident[local] {
                apply(&mut counts[e], color);
                total += edge_potential(&counts[e]);
                undo(&mut counts[e], color);
            }
            total
        };
        let red = score(Color::Red, &mut counts);
        let blue = score(Color::Blue, &mut counts);
        let color = if blue < red { Color::Blue } else { Color::Red };
        for &e in &flat.incident[local] {
            apply(&mut counts[e], color);
        }
        colors.push(color);
    }
    if counts.iter().any(dead) {
        return Err(BlackboxError::Infeasible {
            undecided: flat.undecided.len(),
            reason: "greedy left a monochromatic edge",
        });
    }
    Ok(flat.to_assignment(&colors))
}

/// Initial value of the greedy potential.
pub fn initial_potential(p: &Piece) -> f64 {
    Flat::new(p).base.iter().map(edge_potential).sum()
}

/// Recolors the undecided vertices of `p` so every piece edge is bi-chromatic.
///
/// Pieces with at most `exhaustive_cap` undecided vertices are searched
/// exhaustively in canonical order. Larger pieces use the greedy; if that
/// leaves a monochromatic edge, a budgeted backtracking search in the same
/// canonical order runs before giving up.
pub fn blackbox_recolor(p: &Piece, config: &BlackboxConfig) -> Result<Assignment, BlackboxError> {
    let flat = Flat::new(p);
    if flat.undecided.len() <= config.exhaustive_cap {
        return exhaustive_recolor(p);
    }
    if let Ok(assignment) = greedy_recolor(p) {
        return Ok(assignment);
    }
    match backtrack(&flat, Some(config.fallback_nodes)) {
        (Some(colors), _) => Ok(flat.to_assignment(&colors)),
        (None, true) => {
            Err(BlackboxError::Infeasible { undecided: flat.undecided.len(), reason: "search budget exhausted" })
        }
        (None, false) => {
            Err(BlackboxError::Infeasible { undecided: flat.undecided.len(), reason: "no completion exists" })
        }
    }
}

/// True iff `assignment` colors exactly the undecided vertices of `p` and
/// leaves every piece edge bi-chromatic.
pub fn verify_piece_recolor(p: &Piece, assignment: &Assignment) -> bool {
    let undecided = p.undecided_vertices();
    if assignment.len() != undecided.len() || !undecided.iter().all(|v| assignment.contains_key(v)) {
        return false;
    }
    p.edges.iter().all(|pe| {
        let mut red = false;
        let mut blue = false;
        for (v, s) in pe.vertices.iter().zip(&pe.status) {
            match s.fixed().unwrap_or_else(|| assignment[v]) {
                Color::Red => red = true,
                Color::Blue => blue = true,
            }
        }
        red && blue
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use Color::{Blue as B, Red as R};
    use VertexState::{Fixed, Undecided as U};

    fn undecided_edge(edge: usize, vertices: Vec<usize>) -> PieceEdge {
        let status = vec![U; vertices.len()];
        PieceEdge { edge, vertices, status }
    }

    /// Plain enumeration of all 2^k assignments, first valid in canonical order.
    fn brute(p: &Piece) -> Option<Assignment> {
        let und = p.undecided_vertices();
        let k = und.len();
        (0u64..(1 << k)).find_map(|mask| {
            let a: Assignment =
                und.iter().enumerate().map(|(i, &v)| (v, if mask >> (k - 1 - i) & 1 == 1 { B } else { R })).collect();
            verify_piece_recolor(p, &a).then_some(a)
        })
    }

    #[test]
    fn two_edge_piece_lexicographic_first() {
        let p = Piece::new(
            vec![undecided_edge(0, vec![0, 1, 2, 3]), undecided_edge(1, vec![3, 4, 5, 6])],
            vec![0, 1],
            vec![],
        )
        .unwrap();
        let a = blackbox_recolor(&p, &BlackboxConfig::default()).unwrap();
        let got: Vec<Color> = a.values().copied().collect();
        assert_eq!(got, vec![R, R, R, B, R, R, R]);
        assert!(verify_piece_recolor(&p, &a));
        assert_eq!(Some(a), brute(&p));
    }

    #[test]
    fn greedy_breaks_red_fixed_part() {
        let p = Piece::new(
            vec![PieceEdge { edge: 0, vertices: vec![0, 1, 2, 3], status: vec![Fixed(R), Fixed(R), U, U] }],
            vec![0],
            vec![],
        )
        .unwrap();
        let a = greedy_recolor(&p).unwrap();
        assert_eq!(a[&2], B);
        assert!(verify_piece_recolor(&p, &a));
    }

    #[test]
    fn nothing_to_recolor_is_infeasible() {
        let p = Piece::new(
            vec![PieceEdge { edge: 0, vertices: vec![0, 1], status: vec![Fixed(R), Fixed(R)] }],
            vec![0],
            vec![],
        )
        .unwrap();
        assert!(matches!(blackbox_recolor(&p, &BlackboxConfig::default()), Err(BlackboxError::Infeasible { .. })));
        assert!(greedy_recolor(&p).is_err());
    }

    #[test]
    fn verifier_rejects_monochromatic_completion() {
        let p = Piece::new(
            vec![PieceEdge { edge: 0, vertices: vec![0, 1, 2], status: vec![Fixed(R), U, U] }],
            vec![0],
            vec![],
        )
        .unwrap();
        let all_red: Assignment = [(1, R), (2, R)].into_iter().collect();
        assert!(!verify_piece_recolor(&p, &all_red));
        let partial: Assignment = [(1, B)].into_iter().collect();
        assert!(!verify_piece_recolor(&p, &partial));
    }

    #[test]
    fn conflicting_vertex_states_rejected() {
        let err = Piece::new(
            vec![
                PieceEdge { edge: 0, vertices: vec![0, 1], status: vec![U, U] },
                PieceEdge { edge: 1, vertices: vec![1, 2], status: vec![Fixed(R), U] },
            ],
            vec![0],
            vec![1],
        )
        .unwrap_err();
        assert_eq!(err, BlackboxError::InconsistentVertex(1));
    }

    #[test]
    fn canonical_order_ignores_input_order() {
        let a =
            Piece::new(vec![undecided_edge(3, vec![5, 2, 9]), undecided_edge(1, vec![9, 4, 7])], vec![1, 3], vec![])
                .unwrap();
        let b =
            Piece::new(vec![undecided_edge(1, vec![4, 7, 9]), undecided_edge(3, vec![2, 5, 9])], vec![3, 1], vec![])
                .unwrap();
        assert_eq!(a, b);
        let cfg = BlackboxConfig::default();
        assert_eq!(blackbox_recolor(&a, &cfg), blackbox_recolor(&b, &cfg));
    }

    #[test]
    fn backtracking_matches_enumeration_on_tight_piece() {
        // a chain of 2-vertex edges whose fixed ends force every choice
        let p = Piece::new(
            vec![
                PieceEdge { edge: 0, vertices: vec![0, 1], status: vec![Fixed(R), U] },
                PieceEdge { edge: 1, vertices: vec![1, 2], status: vec![U, U] },
                PieceEdge { edge: 2, vertices: vec![2, 3], status: vec![U, Fixed(B)] },
            ],
            vec![0, 1, 2],
            vec![],
        )
        .unwrap();
        let a = exhaustive_recolor(&p).unwrap();
        assert_eq!(Some(a.clone()), brute(&p));
        assert_eq!(a.values().copied().collect::<Vec<_>>(), vec![B, R]);

        let stuck = Piece::new(
            vec![
                PieceEdge { edge: 0, vertices: vec![0, 1], status: vec![Fixed(R), U] },
                PieceEdge { edge: 1, vertices: vec![1, 2], status: vec![U, U] },
                PieceEdge { edge: 2, vertices: vec![2, 3], status: vec![U, Fixed(R)] },
            ],
            vec![0, 1, 2],
            vec![],
        )
        .unwrap();
        assert_eq!(brute(&stuck), None);
        assert!(exhaustive_recolor(&stuck).is_err());
    }

    #[test]
    fn greedy_path_used_above_cap() {
        let p = Piece::new(
            vec![undecided_edge(0, (0..12).collect()), undecided_edge(1, (11..23).collect())],
            vec![0, 1],
            vec![],
        )
        .unwrap();
        let cfg = BlackboxConfig { exhaustive_cap: 4, fallback_nodes: 10 };
        let a = blackbox_recolor(&p, &cfg).unwrap();
        assert_eq!(a, greedy_recolor(&p).unwrap());
        assert!(verify_piece_recolor(&p, &a));
    }
}
