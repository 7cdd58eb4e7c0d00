use std::collections::VecDeque;

use super::{CommGraph, LocalView, UnitId};

/// Facts a unit holds after `rounds` gossip rounds, computed by a global
/// breadth-first search: the round-0 knowledge of every unit within
/// `rounds` hops of `origin`.
pub fn view_oracle(graph: &CommGraph, origin: UnitId, rounds: usize) -> LocalView {
    let mut view = graph.initial_view(origin);
    let nv = graph.n_vertices();
    let slot = |u: UnitId| match u {
        UnitId::Vertex(v) => v,
        UnitId::Edge(e) => nv + e,
    };
    let mut dist = vec![usize::MAX; nv + graph.n_edges()];
    dist[slot(origin)] = 0;
    let mut queue = VecDeque::from([origin]);
    while let Some(u) = queue.pop_front() {
        view.absorb(&graph.initial_view(u));
        let d = dist[slot(u)];
        if d == rounds {
            continue;
        }
        for w in graph.neighbor_units(u) {
            if dist[slot(w)] == usize::MAX {
                dist[slot(w)] = d + 1;
                queue.push_back(w);
            }
        }
    }
    view.set_rounds(rounds);
    view
}

/// [`view_oracle`] after `2 · radius` rounds, i.e. `radius` edge hops.
pub fn view_ball_oracle(graph: &CommGraph, origin: UnitId, radius: usize) -> LocalView {
    view_oracle(graph, origin, 2 * radius)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::Hypergraph;
    use crate::local_sim::RoundEngine;

    fn path5() -> Hypergraph {
        let edges = (0..5).map(|i| vec![2 * i, 2 * i + 1, 2 * i + 2]).collect();
        Hypergraph::new(11, 3, edges).unwrap()
    }

    #[test]
    fn radius_zero_is_input_knowledge() {
        let h = path5();
        let g = CommGraph::full(&h);
        let view = view_ball_oracle(&g, UnitId::Vertex(4), 0);
        assert_eq!(view.known_vertices().collect::<Vec<_>>(), vec![4]);
        assert_eq!(view.known_edges().collect::<Vec<_>>(), vec![1, 2]);
    }

    #[test]
    fn oracle_is_monotone() {
        let h = path5();
        let g = CommGraph::full(&h);
        for unit in g.units() {
            for r in 0..5 {
                assert!(view_ball_oracle(&g, unit, r).is_subset(&view_ball_oracle(&g, unit, r + 1)));
            }
        }
    }

    #[test]
    fn middle_vertex_radius_two() {
        let h = path5();
        let g = CommGraph::full(&h);
        // vertex 5 is interior to e2
        let view = view_ball_oracle(&g, UnitId::Vertex(5), 2);
        assert_eq!(view.known_edges().collect::<Vec<_>>(), vec![0, 1, 2, 3, 4]);
        assert_eq!(view.known_vertices().collect::<Vec<_>>(), vec![2, 3, 4, 5, 6, 7, 8]);
    }

    #[test]
    fn engine_agrees_with_oracle_on_path() {
        let h = path5();
        let g = CommGraph::full(&h);
        let mut engine = RoundEngine::new(&g);
        for y in 0..=10 {
            for unit in g.units() {
                assert!(engine.view(unit).same_facts(&view_oracle(&g, unit, y)), "y={y} {unit:?}");
            }
            engine.step_round();
        }
    }
}
