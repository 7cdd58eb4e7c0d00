#![allow(dead_code)]

pub mod brute;

use std::path::PathBuf;

use hypcolor::coloring::{Color, PartialColoringState};
use hypcolor::hypergraph::Hypergraph;
use proptest::prelude::*;
use rand::seq::index::sample;
use rand::Rng;

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data")
}

/// Small hypergraph: `n` vertices, `m` edges of size `delta`.
pub fn hypergraph_strategy(
    max_vertices: usize,
    max_edges: usize,
    max_delta: usize,
) -> impl Strategy<Value = Hypergraph> {
    (3..=max_vertices, 1..=max_edges, 2..=max_delta)
        .prop_flat_map(|(n, m, delta)| {
            let delta = delta.min(n);
            let edge = prop::sample::subsequence((0..n).collect::<Vec<_>>(), delta);
            (Just(n), Just(delta), prop::collection::vec(edge, m))
        })
        .prop_map(|(n, delta, edges)| Hypergraph::new(n, delta, edges).unwrap())
}

pub fn random_hypergraph<R: Rng>(rng: &mut R, n: usize, m: usize, delta: usize) -> Hypergraph {
    let edges = (0..m).map(|_| sample(rng, n, delta).into_vec()).collect();
    Hypergraph::new(n, delta, edges).unwrap()
}

pub fn random_coloring<R: Rng>(rng: &mut R, n: usize) -> Vec<Color> {
    (0..n).map(|_| if rng.gen() { Color::Blue } else { Color::Red }).collect()
}

/// Random partial state: each vertex fixed with probability `p_fixed`,
/// each edge idle with probability `p_idle`.
pub fn random_state<R: Rng>(rng: &mut R, h: &Hypergraph, p_fixed: f64, p_idle: f64) -> PartialColoringState {
    let mut s = PartialColoringState::initial(h.n_vertices(), h.n_edges());
    for v in 0..h.n_vertices() {
        if rng.gen_bool(p_fixed) {
            s.fix_vertex(v, if rng.gen() { Color::Blue } else { Color::Red });
        }
    }
    for e in 0..h.n_edges() {
        if rng.gen_bool(p_idle) {
            s.idle_edge(e);
        }
    }
    s
}

use hypcolor::blackbox::{Piece, PieceEdge};
use hypcolor::coloring::VertexState;

/// Random piece over `k` undecided vertices and a few fixed ones.
/// Edges take 2..=5 vertices; statuses are consistent across edges.
pub fn random_piece<R: Rng>(rng: &mut R, k: usize, n_edges: usize) -> Piece {
    let n_fixed = rng.gen_range(usize::from(k < 2)..=4);
    let status: Vec<VertexState> = (0..k + n_fixed)
        .map(|v| {
            if v < k {
                VertexState::Undecided
            } else if rng.gen() {
                VertexState::Fixed(Color::Red)
            } else {
                VertexState::Fixed(Color::Blue)
            }
        })
        .collect();
    let total = status.len();
    let edges = (0..n_edges)
        .map(|e| {
            let size = rng.gen_range(2..=5.min(total));
            let vertices = sample(rng, total, size).into_vec();
            let st = vertices.iter().map(|&v| status[v]).collect();
            PieceEdge { edge: e, vertices, status: st }
        })
        .collect();
    Piece::new(edges, vec![0], Vec::new()).unwrap()
}

/// Independent feasibility check by enumerating every assignment.
pub fn piece_feasible(p: &Piece) -> bool {
    let undecided = p.undecided_vertices();
    (0u32..1 << undecided.len()).any(|mask| {
        let color = |v: usize, s: VertexState| match s {
            VertexState::Fixed(c) => c,
            VertexState::Undecided => {
                let i = undecided.binary_search(&v).unwrap();
                if mask >> i & 1 == 1 {
                    Color::Blue
                } else {
                    Color::Red
                }
            }
        };
        p.edges().iter().all(|pe| {
            let first = color(pe.vertices[0], pe.status[0]);
            pe.vertices.iter().zip(&pe.status).any(|(&v, &s)| color(v, s) != first)
        })
    })
}
