//! Uniform hypergraphs, their intersection graphs, and the component and
//! skeleton combinatorics built on top of them.
//!
//! Hyperedges are identified by their position in the canonical (sorted)
//! edge list. Every tie-break in this module uses that index, so all derived
//! structures are deterministic functions of the input.

mod components;
mod graph;

pub use components::{
    components_12, components_23, max_skeleton_size, skeleton_23, skeletons, verify_skeleton, ComponentKind,
    ComponentSet, SkeletonDefect,
};
pub use graph::{band_intersection_graph, graph_distance, intersection_graph, IntersectionGraph};

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HypergraphError {
    #[error("edge {edge} has {size} distinct vertices, fewer than delta = {delta}")]
    EdgeTooSmall { edge: usize, size: usize, delta: usize },
    #[error("edge {edge} has {size} vertices, expected exactly delta = {delta}")]
    WrongEdgeSize { edge: usize, size: usize, delta: usize },
    #[error("edge {edge} mentions vertex {vertex} outside [0, {n_vertices})")]
    VertexOutOfRange { edge: usize, vertex: usize, n_vertices: usize },
    #[error("edge {edge} is not strictly ascending")]
    UnsortedEdge { edge: usize },
    #[error("edge list is not in canonical lexicographic order")]
    UnsortedEdgeList,
    #[error("delta must be at least 1")]
    ZeroDelta,
    #[error("skeleton requested for an empty component")]
    EmptyComponent,
    #[error("io error on {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed hypergraph json: {0}")]
    Json(#[from] serde_json::Error),
}

/// A `delta`-uniform hypergraph on vertices `0..n_vertices`.
///
/// Each edge is a strictly ascending vertex list and the edge list itself is
/// sorted lexicographically. Duplicate edges are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Hypergraph {
    n_vertices: usize,
    delta: usize,
    edges: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct RawHypergraph {
    n_vertices: usize,
    delta: usize,
    edges: Vec<Vec<usize>>,
}

impl<'de> Deserialize<'de> for Hypergraph {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RawHypergraph::deserialize(deserializer)?;
        Hypergraph::from_canonical(raw.n_vertices, raw.delta, raw.edges).map_err(serde::de::Error::custom)
    }
}

impl Hypergraph {
    /// Builds a hypergraph from arbitrary edges of size exactly `delta`,
    /// sorting vertices within edges and then the edge list.
    pub fn new(n_vertices: usize, delta: usize, edges: Vec<Vec<usize>>) -> Result<Self, HypergraphError> {
        let mut canonical: Vec<Vec<usize>> = edges
            .into_iter()
            .map(|mut edge| {
                edge.sort_unstable();
                edge.dedup();
                edge
            })
            .collect();
        canonical.sort();
        Self::from_canonical(n_vertices, delta, canonical)
    }

    /// Validates an already canonical edge list without reordering it.
    pub fn from_canonical(n_vertices: usize, delta: usize, edges: Vec<Vec<usize>>) -> Result<Self, HypergraphError> {
        if delta == 0 {
            return Err(HypergraphError::ZeroDelta);
        }
        for (idx, edge) in edges.iter().enumerate() {
            if edge.windows(2).any(|w| w[0] >= w[1]) {
                return Err(HypergraphError::UnsortedEdge { edge: idx });
            }
            if edge.len() != delta {
                return Err(HypergraphError::WrongEdgeSize { edge: idx, size: edge.len(), delta });
            }
            if let Some(&vertex) = edge.iter().find(|&&v| v >= n_vertices) {
                return Err(HypergraphError::VertexOutOfRange { edge: idx, vertex, n_vertices });
            }
        }
        if edges.windows(2).any(|w| w[0] > w[1]) {
            return Err(HypergraphError::UnsortedEdgeList);
        }
        Ok(Self { n_vertices, delta, edges })
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge(&self, idx: usize) -> &[usize] {
        &self.edges[idx]
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    /// `n` vertices and `n` hyperedges.
    pub fn is_admissible(&self) -> bool {
        self.edges.len() == self.n_vertices
    }

    /// For each vertex, the ascending list of edges containing it.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n_vertices];
        for (e, edge) in self.edges.iter().enumerate() {
            for &v in edge {
                inc[v].push(e);
            }
        }
        inc
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("hypergraph serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, HypergraphError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self, HypergraphError> {
        let text = fs::read_to_string(path)
            .map_err(|source| HypergraphError::Io { path: path.display().to_string(), source })?;
        Self::from_json(&text)
    }

    pub fn save(&self, path: &Path) -> Result<(), HypergraphError> {
        fs::write(path, self.to_json())
            .map_err(|source| HypergraphError::Io { path: path.display().to_string(), source })
    }
}

/// Replaces every raw edge by its `delta` smallest vertices.
///
/// `n_vertices` defaults to one past the largest vertex mentioned.
pub fn truncate_to_uniform(raw_edges: &[Vec<usize>], delta: usize) -> Result<Hypergraph, HypergraphError> {
    let n_vertices = raw_edges.iter().flatten().map(|&v| v + 1).max().unwrap_or(0);
    truncate_to_uniform_on(n_vertices, raw_edges, delta)
}

/// [`truncate_to_uniform`] with an explicit vertex count.
pub fn truncate_to_uniform_on(
    n_vertices: usize,
    raw_edges: &[Vec<usize>],
    delta: usize,
) -> Result<Hypergraph, HypergraphError> {
    let mut edges = Vec::with_capacity(raw_edges.len());
    for (idx, raw) in raw_edges.iter().enumerate() {
        let mut sorted = raw.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() < delta {
            return Err(HypergraphError::EdgeTooSmall { edge: idx, size: sorted.len(), delta });
        }
        sorted.truncate(delta);
        edges.push(sorted);
    }
    Hypergraph::new(n_vertices, delta, edges)
}
