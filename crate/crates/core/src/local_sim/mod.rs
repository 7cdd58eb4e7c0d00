//! Synchronous LOCAL-model execution over the bipartite vertex/edge graph.
//!
//! A view is a pair of bitsets naming the vertex facts and edge facts a unit
//! has learned. The payloads themselves stay in a read-only phase snapshot
//! and are only reachable through [`ViewReader`], which refuses (and counts)
//! requests for facts outside the view.

mod oracle;
mod snapshot;

pub use oracle::{view_ball_oracle, view_oracle};
pub use snapshot::{FactSource, PhaseSnapshot, ViewReader};

use std::io::Write;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::coloring::PartialColoringState;
use crate::hypergraph::Hypergraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", content = "index")]
pub enum UnitId {
    Vertex(usize),
    Edge(usize),
}

/// Links between participating vertices and participating edges.
///
/// An edge participates when it is active and still has an undecided vertex;
/// a vertex participates when it is undecided and lies in a participating
/// edge. Each link joins an undecided vertex to an active edge containing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommGraph {
    vertex_links: Vec<Vec<usize>>,
    edge_links: Vec<Vec<usize>>,
}

impl CommGraph {
    /// Every vertex and every edge participates.
    pub fn full(h: &Hypergraph) -> Self {
        Self::residual(h, &PartialColoringState::initial(h.n_vertices(), h.n_edges()))
    }

    pub fn residual(h: &Hypergraph, state: &PartialColoringState) -> Self {
        let mut vertex_links = vec![Vec::new(); h.n_vertices()];
        let mut edge_links = vec![Vec::new(); h.n_edges()];
        for e in state.active_edges() {
            for &v in h.edge(e) {
                if state.vertex(v).is_undecided() {
                    vertex_links[v].push(e);
                    edge_links[e].push(v);
                }
            }
        }
        Self { vertex_links, edge_links }
    }

    pub fn n_vertices(&self) -> usize {
        self.vertex_links.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edge_links.len()
    }

    pub fn n_links(&self) -> usize {
        self.edge_links.iter().map(Vec::len).sum()
    }

    pub fn participates(&self, unit: UnitId) -> bool {
        !self.neighbors(unit).is_empty()
    }

    /// For a vertex, its linked edges; for an edge, its linked vertices.
    pub fn neighbors(&self, unit: UnitId) -> &[usize] {
        match unit {
            UnitId::Vertex(v) => &self.vertex_links[v],
            UnitId::Edge(e) => &self.edge_links[e],
        }
    }

    pub fn neighbor_units(&self, unit: UnitId) -> impl Iterator<Item = UnitId> + '_ {
        let wrap = match unit {
            UnitId::Vertex(_) => UnitId::Edge,
            UnitId::Edge(_) => UnitId::Vertex,
        };
        self.neighbors(unit).iter().map(move |&i| wrap(i))
    }

    pub fn units(&self) -> impl Iterator<Item = UnitId> {
        let nv = self.n_vertices();
        let ne = self.n_edges();
        (0..nv).map(UnitId::Vertex).chain((0..ne).map(UnitId::Edge))
    }

    /// Round-0 knowledge: a participating vertex knows its own facts and the
    /// vertex lists of its linked edges; a participating edge knows itself.
    /// Non-participating units know nothing.
    pub fn initial_view(&self, unit: UnitId) -> LocalView {
        let mut view = LocalView::empty(unit, self.n_vertices(), self.n_edges());
        if !self.participates(unit) {
            return view;
        }
        match unit {
            UnitId::Vertex(v) => {
                view.vertices.insert(v);
                for &e in &self.vertex_links[v] {
                    view.edges.insert(e);
                }
            }
            UnitId::Edge(e) => view.edges.insert(e),
        }
        view
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalView {
    origin: UnitId,
    rounds_absorbed: usize,
    vertices: FixedBitSet,
    edges: FixedBitSet,
}

impl LocalView {
    pub fn empty(origin: UnitId, n_vertices: usize, n_edges: usize) -> Self {
        Self {
            origin,
            rounds_absorbed: 0,
            vertices: FixedBitSet::with_capacity(n_vertices),
            edges: FixedBitSet::with_capacity(n_edges),
        }
    }

    pub fn origin(&self) -> UnitId {
        self.origin
    }

    pub fn rounds_absorbed(&self) -> usize {
        self.rounds_absorbed
    }

    pub(crate) fn set_rounds(&mut self, rounds: usize) {
        self.rounds_absorbed = rounds;
    }

    pub fn knows_vertex(&self, v: usize) -> bool {
        self.vertices.contains(v)
    }

    pub fn knows_edge(&self, e: usize) -> bool {
        self.edges.contains(e)
    }

    pub fn known_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.vertices.ones()
    }

    pub fn known_edges(&self) -> impl Iterator<Item = usize> + '_ {
        self.edges.ones()
    }

    pub fn fact_count(&self) -> usize {
        self.vertices.count_ones(..) + self.edges.count_ones(..)
    }

    /// Same facts, ignoring origin and round count.
    pub fn same_facts(&self, other: &LocalView) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }

    pub fn is_subset(&self, other: &LocalView) -> bool {
        self.vertices.is_subset(&other.vertices) && self.edges.is_subset(&other.edges)
    }

    pub(crate) fn absorb(&mut self, other: &LocalView) {
        self.vertices.union_with(&other.vertices);
        self.edges.union_with(&other.edges);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundTraceEvent {
    pub round: usize,
    pub unit: UnitId,
    pub facts_added: usize,
}

pub struct RoundEngine<'g> {
    graph: &'g CommGraph,
    views: Vec<LocalView>,
    round: usize,
    messages: u64,
    trace: Option<Vec<RoundTraceEvent>>,
}

impl<'g> RoundEngine<'g> {
    pub fn new(graph: &'g CommGraph) -> Self {
        let views = graph.units().map(|u| graph.initial_view(u)).collect();
        Self { graph, views, round: 0, messages: 0, trace: None }
    }

    /// Records `{round, unit, facts_added}` for every unit that learns
    /// something.
    pub fn with_trace(mut self) -> Self {
        self.trace = Some(Vec::new());
        self
    }

    fn slot(&self, unit: UnitId) -> usize {
        match unit {
            UnitId::Vertex(v) => v,
            UnitId::Edge(e) => self.graph.n_vertices() + e,
        }
    }

    pub fn graph(&self) -> &CommGraph {
        self.graph
    }

    pub fn view(&self, unit: UnitId) -> &LocalView {
        &self.views[self.slot(unit)]
    }

    pub fn round(&self) -> usize {
        self.round
    }

    pub fn messages(&self) -> u64 {
        self.messages
    }

    pub fn trace(&self) -> Option<&[RoundTraceEvent]> {
        self.trace.as_deref()
    }

    /// Every participating unit sends its whole view over each link; every
    /// unit merges what it receives. Updates read only the previous round.
    pub fn step_round(&mut self) {
        let previous = self.views.clone();
        self.round += 1;
        for unit in self.graph.units() {
            let slot = self.slot(unit);
            let before = previous[slot].fact_count();
            let graph = self.graph;
            for neighbor in graph.neighbor_units(unit) {
                let from = self.slot(neighbor);
                self.views[slot].absorb(&previous[from]);
            }
            self.views[slot].set_rounds(self.round);
            let added = self.views[slot].fact_count() - before;
            if added > 0 {
                if let Some(trace) = self.trace.as_mut() {
                    trace.push(RoundTraceEvent { round: self.round, unit, facts_added: added });
                }
            }
        }
        self.messages += 2 * self.graph.n_links() as u64;
    }

    pub fn run_gossip(&mut self, y: usize) {
        for _ in 0..y {
            self.step_round();
        }
    }

    pub fn write_trace<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for event in self.trace.iter().flatten() {
            serde_json::to_writer(&mut out, event)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::Color;

    /// Five edges of size 3 in a chain, consecutive edges sharing one vertex.
    fn path5() -> Hypergraph {
        let edges = (0..5).map(|i| vec![2 * i, 2 * i + 1, 2 * i + 2]).collect();
        Hypergraph::new(11, 3, edges).unwrap()
    }

    #[test]
    fn one_round_vertex_learns_incident_edges() {
        let h = path5();
        let g = CommGraph::full(&h);
        let mut engine = RoundEngine::new(&g);
        engine.step_round();
        // vertex 2 sits in e0 and e1; its edges only knew themselves
        let view = engine.view(UnitId::Vertex(2));
        assert_eq!(view.known_edges().collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(view.known_vertices().collect::<Vec<_>>(), vec![2]);
        // edge 1 now holds its vertices' facts and their incident edges
        let view = engine.view(UnitId::Edge(1));
        assert_eq!(view.known_vertices().collect::<Vec<_>>(), vec![2, 3, 4]);
        assert_eq!(view.known_edges().collect::<Vec<_>>(), vec![0, 1, 2]);
        assert_eq!(engine.messages(), 2 * 15);
    }

    #[test]
    fn intersecting_edges_meet_in_two_rounds() {
        let h = Hypergraph::new(5, 3, vec![vec![0, 1, 2], vec![2, 3, 4]]).unwrap();
        let g = CommGraph::full(&h);
        let mut engine = RoundEngine::new(&g);
        engine.step_round();
        assert!(!engine.view(UnitId::Vertex(0)).knows_edge(1));
        engine.step_round();
        assert!(engine.view(UnitId::Vertex(0)).knows_edge(1));
        assert!(engine.view(UnitId::Vertex(4)).knows_edge(0));
        assert!(engine.view(UnitId::Edge(0)).knows_edge(1));
    }

    #[test]
    fn no_participants_only_advances_round() {
        let h = path5();
        let mut state = PartialColoringState::initial(11, 5);
        for v in 0..11 {
            state.fix_vertex(v, Color::Red);
        }
        let g = CommGraph::residual(&h, &state);
        let mut engine = RoundEngine::new(&g);
        engine.run_gossip(3);
        assert_eq!(engine.round(), 3);
        assert_eq!(engine.messages(), 0);
        assert!(g.units().all(|u| engine.view(u).fact_count() == 0));
    }

    #[test]
    fn gossip_radius_on_path() {
        let h = path5();
        let g = CommGraph::full(&h);
        let mut engine = RoundEngine::new(&g);
        engine.run_gossip(8);
        let view = engine.view(UnitId::Vertex(0));
        assert_eq!(view.known_edges().count(), 5);
        let mut short = RoundEngine::new(&g);
        short.run_gossip(6);
        assert_eq!(short.view(UnitId::Vertex(0)).known_edges().collect::<Vec<_>>(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn disconnected_parts_stay_apart() {
        let h = Hypergraph::new(6, 3, vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        let g = CommGraph::full(&h);
        let mut engine = RoundEngine::new(&g);
        engine.run_gossip(10);
        let view = engine.view(UnitId::Vertex(0));
        assert!(!view.knows_edge(1));
        assert!(view.known_vertices().all(|v| v < 3));
    }

    #[test]
    fn nearly_decided_edge_still_relays() {
        // e1 keeps only vertex 4 undecided but still links e0 and e2 through it
        let h = Hypergraph::new(9, 3, vec![vec![0, 1, 4], vec![2, 3, 4], vec![4, 5, 6]]).unwrap();
        let mut state = PartialColoringState::initial(9, 3);
        state.fix_vertex(2, Color::Red);
        state.fix_vertex(3, Color::Red);
        let g = CommGraph::residual(&h, &state);
        assert_eq!(g.neighbors(UnitId::Edge(1)), &[4]);
        let mut engine = RoundEngine::new(&g);
        engine.run_gossip(4);
        assert!(engine.view(UnitId::Vertex(0)).knows_vertex(5));
        assert!(!engine.view(UnitId::Vertex(2)).knows_edge(0));
    }

    #[test]
    fn trace_lines_are_json() {
        let h = path5();
        let g = CommGraph::full(&h);
        let mut engine = RoundEngine::new(&g).with_trace();
        engine.run_gossip(2);
        let mut buf = Vec::new();
        engine.write_trace(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let first: RoundTraceEvent = serde_json::from_str(text.lines().next().unwrap()).unwrap();
        assert_eq!(first.round, 1);
        assert!(text.lines().count() > 0);
    }
}
