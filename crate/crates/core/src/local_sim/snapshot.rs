use std::cell::Cell;

use super::LocalView;
use crate::coloring::{Color, PartialColoringState, VertexState};
use crate::hypergraph::Hypergraph;

/// Read-only state at the start of a phase: topology, vertex and edge status
/// and the phase's temporary coloring.
#[derive(Clone, Copy)]
pub struct PhaseSnapshot<'a> {
    pub h: &'a Hypergraph,
    pub state: &'a PartialColoringState,
    pub coloring: &'a [Color],
}

/// Access to the facts a computation may use.
///
/// Each method returns `None` when the fact is outside what the caller is
/// allowed to see.
pub trait FactSource {
    /// Vertex list of an edge together with its active flag.
    fn edge(&self, e: usize) -> Option<(&[usize], bool)>;
    /// Status of a vertex, visible once some known edge contains it.
    fn status(&self, v: usize) -> Option<VertexState>;
    /// Temporary color of an undecided vertex.
    fn temp_color(&self, v: usize) -> Option<Color>;
    /// Edges whose vertex lists are available, ascending.
    fn known_edges(&self) -> Vec<usize>;

    /// Fixed color, or the temporary color for an undecided vertex.
    fn effective_color(&self, v: usize) -> Option<Color> {
        match self.status(v)? {
            VertexState::Fixed(c) => Some(c),
            VertexState::Undecided => self.temp_color(v),
        }
    }
}

impl FactSource for PhaseSnapshot<'_> {
    fn edge(&self, e: usize) -> Option<(&[usize], bool)> {
        Some((self.h.edge(e), self.state.is_active(e)))
    }

    fn status(&self, v: usize) -> Option<VertexState> {
        Some(self.state.vertex(v))
    }

    fn temp_color(&self, v: usize) -> Option<Color> {
        Some(self.coloring[v])
    }

    fn known_edges(&self) -> Vec<usize> {
        (0..self.h.n_edges()).collect()
    }
}

/// A snapshot seen through one unit's view. Requests outside the view are
/// refused and counted.
pub struct ViewReader<'a> {
    snapshot: PhaseSnapshot<'a>,
    view: &'a LocalView,
    incidence: &'a [Vec<usize>],
    denied: Cell<u64>,
}

impl<'a> ViewReader<'a> {
    /// `incidence` is `snapshot.h.incidence()`, shared between readers.
    pub fn new(snapshot: PhaseSnapshot<'a>, view: &'a LocalView, incidence: &'a [Vec<usize>]) -> Self {
        Self { snapshot, view, incidence, denied: Cell::new(0) }
    }

    pub fn denied(&self) -> u64 {
        self.denied.get()
    }

    fn deny<T>(&self) -> Option<T> {
        self.denied.set(self.denied.get() + 1);
        None
    }
}

impl FactSource for ViewReader<'_> {
    fn edge(&self, e: usize) -> Option<(&[usize], bool)> {
        if self.view.knows_edge(e) {
            self.snapshot.edge(e)
        } else {
            self.deny()
        }
    }

    fn status(&self, v: usize) -> Option<VertexState> {
        if self.view.knows_vertex(v) || self.incidence[v].iter().any(|&e| self.view.knows_edge(e)) {
            self.snapshot.status(v)
        } else {
            self.deny()
        }
    }

    fn temp_color(&self, v: usize) -> Option<Color> {
        if self.view.knows_vertex(v) {
            self.snapshot.temp_color(v)
        } else {
            self.deny()
        }
    }

    fn known_edges(&self) -> Vec<usize> {
        self.view.known_edges().collect()
    }
}
