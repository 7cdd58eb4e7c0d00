//! Decision rules shared by the per-vertex (view-restricted) evaluation and
//! the global one. Both run the same code against different fact sources;
//! what differs is how the biased 1,2-component is found.

use std::collections::{BTreeSet, VecDeque};

use crate::blackbox::{Piece, PieceEdge};
use crate::coloring::{Color, VertexState};
use crate::hypergraph::IntersectionGraph;
use crate::local_sim::FactSource;

use super::AlgoParams;

/// A fact outside the caller's view was needed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct OutOfView;

fn seen<T>(x: Option<T>) -> Result<T, OutOfView> {
    x.ok_or(OutOfView)
}

/// Intersection graph of the residual hypergraph: each active edge
/// restricted to its undecided vertices. Idle or unknown edges are isolated.
pub(crate) fn residual_graph<F: FactSource + ?Sized>(
    facts: &F,
    n_edges: usize,
) -> Result<IntersectionGraph, OutOfView> {
    let mut sets = vec![Vec::new(); n_edges];
    for e in facts.known_edges() {
        let (vertices, active) = seen(facts.edge(e))?;
        if !active {
            continue;
        }
        let mut undecided = Vec::new();
        for &w in vertices {
            if seen(facts.status(w))?.is_undecided() {
                undecided.push(w);
            }
        }
        sets[e] = undecided;
    }
    Ok(IntersectionGraph::from_vertex_sets(&sets))
}

/// Memoized biased test over a fact source.
pub(crate) struct Judge<'a, F: ?Sized> {
    facts: &'a F,
    biased_max: usize,
    dangerous_min: usize,
    memo: Vec<Option<bool>>,
}

impl<'a, F: FactSource + ?Sized> Judge<'a, F> {
    pub(crate) fn new(facts: &'a F, params: &AlgoParams, n_edges: usize) -> Self {
        Self {
            facts,
            biased_max: params.thresholds.biased_max(params.delta),
            dangerous_min: params.thresholds.dangerous_min(params.delta),
            memo: vec![None; n_edges],
        }
    }

    pub(crate) fn biased(&mut self, e: usize) -> Result<bool, OutOfView> {
        if let Some(b) = self.memo[e] {
            return Ok(b);
        }
        let (vertices, active) = seen(self.facts.edge(e))?;
        let mut red = 0;
        for &w in vertices {
            if seen(self.facts.effective_color(w))? == Color::Red {
                red += 1;
            }
        }
        let b = active && (red <= self.biased_max || vertices.len() - red <= self.biased_max);
        self.memo[e] = Some(b);
        Ok(b)
    }

    /// An undecided vertex of `f` is bad when some active edge through it is
    /// biased; all such edges are `f` itself or residual neighbors of `f`.
    fn is_bad(&mut self, g: &IntersectionGraph, f: usize, w: usize) -> Result<bool, OutOfView> {
        for e in std::iter::once(f).chain(g.neighbors(f).iter().copied()) {
            let (vertices, _) = seen(self.facts.edge(e))?;
            if vertices.binary_search(&w).is_ok() && self.biased(e)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn bad_undecided(&mut self, g: &IntersectionGraph, f: usize) -> Result<Vec<usize>, OutOfView> {
        let (vertices, _) = seen(self.facts.edge(f))?;
        let mut out = Vec::new();
        for &w in vertices {
            if seen(self.facts.status(w))?.is_undecided() && self.is_bad(g, f, w)? {
                out.push(w);
            }
        }
        Ok(out)
    }

    /// Core `T` plus every adjacent dangerous, non-biased edge.
    ///
    /// Core vertices enter with their status. In fringe edges, bad undecided
    /// vertices are left to the recoloring and good ones enter with their
    /// temporary color, which they fix this phase anyway.
    pub(crate) fn build_piece(&mut self, g: &IntersectionGraph, core: &[usize]) -> Result<Piece, OutOfView> {
        let closed: BTreeSet<usize> =
            core.iter().flat_map(|&t| std::iter::once(t).chain(g.neighbors(t).iter().copied())).collect();
        let mut edges = Vec::new();
        for &t in core {
            let (vertices, _) = seen(self.facts.edge(t))?;
            let mut status = Vec::with_capacity(vertices.len());
            for &w in vertices {
                status.push(seen(self.facts.status(w))?);
            }
            edges.push(PieceEdge { edge: t, vertices: vertices.to_vec(), status });
        }
        let mut fringe = Vec::new();
        for &f in closed.iter().filter(|f| core.binary_search(f).is_err()) {
            if self.biased(f)? {
                continue;
            }
            let bad = self.bad_undecided(g, f)?;
            if bad.len() < self.dangerous_min {
                continue;
            }
            let (vertices, _) = seen(self.facts.edge(f))?;
            let mut status = Vec::with_capacity(vertices.len());
            for &w in vertices {
                status.push(match seen(self.facts.status(w))? {
                    VertexState::Undecided if bad.binary_search(&w).is_err() => {
                        VertexState::Fixed(seen(self.facts.temp_color(w))?)
                    }
                    s => s,
                });
            }
            edges.push(PieceEdge { edge: f, vertices: vertices.to_vec(), status });
            fringe.push(f);
        }
        Ok(Piece::new(edges, core.to_vec(), fringe).expect("core vertices are undecided in every piece edge"))
    }
}

/// Largest distance between two members of `core`, measured inside the
/// subgraph induced on `core` and its neighbors. `usize::MAX` when some pair
/// is not connected there.
pub(crate) fn induced_diameter(g: &IntersectionGraph, core: &[usize]) -> usize {
    let mut allowed = vec![false; g.n_nodes()];
    for &t in core {
        allowed[t] = true;
        for &f in g.neighbors(t) {
            allowed[f] = true;
        }
    }
    let mut diameter = 0;
    for &source in core {
        let mut dist = vec![usize::MAX; g.n_nodes()];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(node) = queue.pop_front() {
            for &next in g.neighbors(node) {
                if allowed[next] && dist[next] == usize::MAX {
                    dist[next] = dist[node] + 1;
                    queue.push_back(next);
                }
            }
        }
        diameter = core.iter().map(|&t| dist[t]).fold(diameter, usize::max);
    }
    diameter
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum LocalDecision {
    /// In no biased edge: fix the temporary color.
    Good,
    /// In a biased component too wide to settle this phase.
    Large,
    /// In a small component; take the color the piece recoloring assigns.
    Piece(Piece),
}

/// Decision of undecided vertex `v` from the facts it holds after gossip.
///
/// The component is grown from the lowest biased edge `e0` through `v`,
/// adding biased edges within residual distance 2 of a member. A member
/// farther than the small-diameter limit from `e0` proves the component
/// large; otherwise the component is complete and its induced diameter is
/// checked against the same limit.
pub(crate) fn decide<F: FactSource + ?Sized>(
    facts: &F,
    n_edges: usize,
    v: usize,
    params: &AlgoParams,
) -> Result<LocalDecision, OutOfView> {
    let g = residual_graph(facts, n_edges)?;
    let mut judge = Judge::new(facts, params, n_edges);
    let mut e0 = None;
    for e in facts.known_edges() {
        let (vertices, active) = seen(facts.edge(e))?;
        if active && vertices.binary_search(&v).is_ok() && judge.biased(e)? {
            e0 = Some(e);
            break;
        }
    }
    let Some(e0) = e0 else {
        return Ok(LocalDecision::Good);
    };
    let limit = params.small_diameter_limit();
    let dist0 = g.distances_within(e0, limit + 2);
    let mut member = vec![false; n_edges];
    member[e0] = true;
    let mut queue = VecDeque::from([e0]);
    while let Some(t) = queue.pop_front() {
        for (f, d) in g.distances_within(t, 2).into_iter().enumerate() {
            if d.is_none() || member[f] {
                continue;
            }
            if !judge.biased(f)? {
                continue;
            }
            if dist0[f].is_none_or(|d| d > limit) {
                return Ok(LocalDecision::Large);
            }
            member[f] = true;
            queue.push_back(f);
        }
    }
    let core: Vec<usize> = (0..n_edges).filter(|&e| member[e]).collect();
    if induced_diameter(&g, &core) > limit {
        return Ok(LocalDecision::Large);
    }
    Ok(LocalDecision::Piece(judge.build_piece(&g, &core)?))
}
