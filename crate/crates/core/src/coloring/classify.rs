use serde::{Deserialize, Serialize};

use super::{Color, PartialColoringState, Thresholds, VertexState};
use crate::hypergraph::Hypergraph;

/// Fixed color if `v` is fixed, otherwise its color under `c`.
pub fn effective_color(state: &PartialColoringState, c: &[Color], v: usize) -> Color {
    state.vertex(v).fixed().unwrap_or(c[v])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeClass {
    Biased,
    DangerousNotBiased,
    Safe,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VertexClass {
    Bad,
    Good,
}

/// Classification of active edges (`None` for idle edges) and of vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeClassification {
    pub edges: Vec<Option<EdgeClass>>,
    pub vertices: Vec<VertexClass>,
}

impl EdgeClassification {
    pub fn with_class(&self, class: EdgeClass) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| self.edges[e] == Some(class)).collect()
    }

    pub fn biased(&self) -> Vec<usize> {
        self.with_class(EdgeClass::Biased)
    }

    pub fn is_bad(&self, v: usize) -> bool {
        self.vertices[v] == VertexClass::Bad
    }
}

/// True iff at most `max_minority` vertices carry one of the two colors.
pub(crate) fn is_biased_counts(red: usize, blue: usize, max_minority: usize) -> bool {
    red <= max_minority || blue <= max_minority
}

/// Classifies active edges under effective colors (fixed colors, otherwise
/// `c`).
///
/// An edge is biased when one color appears on at most `floor(α δ)` of its
/// vertices. A vertex is bad when it lies in a biased active edge. A
/// non-biased edge is dangerous when it holds at least `ceil(α δ)` bad
/// vertices that are still undecided, i.e. vertices a recoloring may touch.
pub fn classify(
    h: &Hypergraph,
    state: &PartialColoringState,
    c: &[Color],
    thresholds: &Thresholds,
) -> EdgeClassification {
    let delta = h.delta();
    let biased_max = thresholds.biased_max(delta);
    let dangerous_min = thresholds.dangerous_min(delta);
    let mut edges = vec![None; h.n_edges()];
    let mut vertices = vec![VertexClass::Good; h.n_vertices()];
    for e in state.active_edges() {
        let red = h.edge(e).iter().filter(|&&v| effective_color(state, c, v) == Color::Red).count();
        if is_biased_counts(red, delta - red, biased_max) {
            edges[e] = Some(EdgeClass::Biased);
            for &v in h.edge(e) {
                vertices[v] = VertexClass::Bad;
            }
        }
    }
    for e in state.active_edges() {
        if edges[e].is_some() {
            continue;
        }
        let bad_undecided =
            h.edge(e).iter().filter(|&&v| vertices[v] == VertexClass::Bad && state.vertex(v).is_undecided()).count();
        edges[e] = Some(if bad_undecided >= dangerous_min { EdgeClass::DangerousNotBiased } else { EdgeClass::Safe });
    }
    EdgeClassification { edges, vertices }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BichromaticReport {
    pub monochromatic: Vec<usize>,
}

impl BichromaticReport {
    pub fn is_bichromatic(&self) -> bool {
        self.monochromatic.is_empty()
    }
}

/// Lists every edge that misses one of the two colors under `coloring`.
pub fn is_bichromatic(h: &Hypergraph, coloring: &[Color]) -> BichromaticReport {
    let monochromatic = h
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, edge)| {
            let first = coloring[edge[0]];
            edge.iter().all(|&v| coloring[v] == first)
        })
        .map(|(e, _)| e)
        .collect();
    BichromaticReport { monochromatic }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum InvariantClause {
    /// The fixed part of an active edge uses both colors.
    FixedPartNotMonochromatic,
    /// An active edge has too few undecided vertices left.
    TooFewUndecided,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InvariantViolation {
    pub edge: usize,
    pub clause: InvariantClause,
    pub undecided: usize,
    pub required: usize,
}

/// Phase-boundary invariant for every active edge `f`:
/// the fixed vertices of `f` share one color, and `f` keeps at least
/// `floor(α δ)` undecided vertices. Violations are reported, not raised.
pub fn check_invariant(
    h: &Hypergraph,
    state: &PartialColoringState,
    thresholds: &Thresholds,
) -> Result<(), Vec<InvariantViolation>> {
    let required = thresholds.undecided_min(h.delta());
    let mut violations = Vec::new();
    for e in state.active_edges() {
        let edge = h.edge(e);
        let undecided = state.undecided_count(edge);
        if state.fixed_part_bichromatic(edge) {
            violations.push(InvariantViolation {
                edge: e,
                clause: InvariantClause::FixedPartNotMonochromatic,
                undecided,
                required,
            });
        }
        if undecided < required {
            violations.push(InvariantViolation {
                edge: e,
                clause: InvariantClause::TooFewUndecided,
                undecided,
                required,
            });
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

impl PartialColoringState {
    /// Effective color of every vertex under `c`.
    pub fn effective_coloring(&self, c: &[Color]) -> Vec<Color> {
        self.vertex_states()
            .iter()
            .zip(c)
            .map(|(s, &t)| match s {
                VertexState::Fixed(f) => *f,
                VertexState::Undecided => t,
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::EdgeState;
    use Color::{Blue as B, Red as R};

    fn colors(spec: &str) -> Vec<Color> {
        spec.chars().map(|ch| if ch == 'R' { R } else { B }).collect()
    }

    #[test]
    fn effective_color_prefers_fixed() {
        let mut s = PartialColoringState::initial(2, 0);
        s.fix_vertex(0, R);
        assert_eq!(effective_color(&s, &[B, B], 0), R);
        assert_eq!(effective_color(&s, &[B, B], 1), B);
        let fresh = PartialColoringState::initial(3, 0);
        let c = colors("RBR");
        assert_eq!(fresh.effective_coloring(&c), c);
    }

    #[test]
    fn biased_and_safe_single_edges() {
        let h = Hypergraph::new(8, 8, vec![(0..8).collect()]).unwrap();
        let s = PartialColoringState::initial(8, 1);
        let t = Thresholds::uniform(0.25);
        let cls = classify(&h, &s, &colors("RRRRRRBB"), &t);
        assert_eq!(cls.edges, vec![Some(EdgeClass::Biased)]);
        let cls = classify(&h, &s, &colors("RRRRRBBB"), &t);
        assert_eq!(cls.edges, vec![Some(EdgeClass::Safe)]);
        for alpha in [0.01, 0.125, 0.25, 0.49] {
            let cls = classify(&h, &s, &colors("RRRRRRRR"), &Thresholds::uniform(alpha));
            assert_eq!(cls.edges, vec![Some(EdgeClass::Biased)]);
        }
    }

    #[test]
    fn dangerous_from_neighbouring_biased_edges() {
        // e0 = 0..8 balanced 5R/3B; e1 all red shares vertices 0,1; e2 all red shares vertex 2
        let h = Hypergraph::new(
            22,
            8,
            vec![(0..8).collect(), vec![0, 1, 8, 9, 10, 11, 12, 13], vec![2, 14, 15, 16, 17, 18, 19, 20]],
        )
        .unwrap();
        let s = PartialColoringState::initial(22, 3);
        let t = Thresholds::uniform(0.25);
        let mut c = colors("RRRRRBBB");
        c.extend(std::iter::repeat_n(R, 14));
        let e0 = h.edges().iter().position(|e| e == &(0..8).collect::<Vec<_>>()).unwrap();
        let cls = classify(&h, &s, &c, &t);
        assert_eq!(cls.edges[e0], Some(EdgeClass::DangerousNotBiased));
        assert_eq!(cls.biased().len(), 2);

        // only one neighbouring biased edge contributing one bad vertex: safe
        let h1 = Hypergraph::new(15, 8, vec![(0..8).collect(), vec![0, 8, 9, 10, 11, 12, 13, 14]]).unwrap();
        let s1 = PartialColoringState::initial(15, 2);
        let mut c1 = colors("RRRRRBBB");
        c1.extend(std::iter::repeat_n(R, 7));
        let cls = classify(&h1, &s1, &c1, &t);
        assert_eq!(cls.edges[0], Some(EdgeClass::Safe));
    }

    #[test]
    fn idle_edges_are_not_classified() {
        let h = Hypergraph::new(3, 3, vec![vec![0, 1, 2]]).unwrap();
        let mut s = PartialColoringState::initial(3, 1);
        s.idle_edge(0);
        let cls = classify(&h, &s, &colors("RRR"), &Thresholds::uniform(0.25));
        assert_eq!(cls.edges, vec![None]);
        assert_eq!(cls.vertices, vec![VertexClass::Good; 3]);
        assert_eq!(s.edge(0), EdgeState::Idle);
    }

    #[test]
    fn bichromatic_reports() {
        let h = Hypergraph::new(5, 2, vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4]]).unwrap();
        assert!(is_bichromatic(&h, &colors("RBRBR")).is_bichromatic());
        assert_eq!(is_bichromatic(&h, &colors("RRRRR")).monochromatic, vec![0, 1, 2, 3]);
        let single = Hypergraph::new(2, 2, vec![vec![0, 1]]).unwrap();
        assert!(is_bichromatic(&single, &colors("RB")).is_bichromatic());
    }

    #[test]
    fn invariant_examples() {
        let h = Hypergraph::new(8, 8, vec![(0..8).collect()]).unwrap();
        let t = Thresholds::uniform(0.25);
        assert!(check_invariant(&h, &PartialColoringState::initial(8, 1), &t).is_ok());

        let mut s = PartialColoringState::initial(8, 1);
        s.fix_vertex(0, R);
        s.fix_vertex(1, B);
        let v = check_invariant(&h, &s, &t).unwrap_err();
        assert_eq!(v[0].clause, InvariantClause::FixedPartNotMonochromatic);

        let mut s = PartialColoringState::initial(8, 1);
        for v in 0..7 {
            s.fix_vertex(v, R);
        }
        let v = check_invariant(&h, &s, &t).unwrap_err();
        assert_eq!(
            v,
            vec![InvariantViolation { edge: 0, clause: InvariantClause::TooFewUndecided, undecided: 1, required: 2 }]
        );
    }
}
