use std::collections::VecDeque;

use super::Hypergraph;

/// Simple undirected graph over hyperedge indices.
///
/// Built either as the intersection graph of a family of vertex sets or as a
/// distance band of another such graph. Adjacency lists are sorted and never
/// contain the node itself.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntersectionGraph {
    adj: Vec<Vec<usize>>,
}

impl IntersectionGraph {
    /// Intersection graph of arbitrary vertex sets; sets need not be uniform
    /// and may be empty (empty sets become isolated nodes).
    pub fn from_vertex_sets<S: AsRef<[usize]>>(sets: &[S]) -> Self {
        let n_vertices = sets.iter().flat_map(|s| s.as_ref().iter().copied()).map(|v| v + 1).max().unwrap_or(0);
        let mut incidence = vec![Vec::new(); n_vertices];
        for (e, set) in sets.iter().enumerate() {
            for &v in set.as_ref() {
                incidence[v].push(e);
            }
        }
        let mut adj = vec![Vec::new(); sets.len()];
        for edges in &incidence {
            for (i, &a) in edges.iter().enumerate() {
                for &b in &edges[i + 1..] {
                    if a != b {
                        adj[a].push(b);
                        adj[b].push(a);
                    }
                }
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Self { adj }
    }

    pub fn from_adjacency(mut adj: Vec<Vec<usize>>) -> Self {
        for (i, list) in adj.iter_mut().enumerate() {
            list.retain(|&j| j != i);
            list.sort_unstable();
            list.dedup();
        }
        Self { adj }
    }

    pub fn n_nodes(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.adj[node]
    }

    pub fn is_adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Maximum degree, the `d` of the local lemma condition.
    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Sorted adjacent pairs `(i, j)` with `i < j`.
    pub fn edge_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs = Vec::new();
        for (i, list) in self.adj.iter().enumerate() {
            pairs.extend(list.iter().filter(|&&j| j > i).map(|&j| (i, j)));
        }
        pairs
    }

    /// Hop counts from `source`; `None` for unreachable nodes.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        self.distances_within(source, usize::MAX)
    }

    /// Breadth-first search from `source` that stops expanding at `limit` hops.
    pub fn distances_within(&self, source: usize, limit: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.adj.len()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(node) = queue.pop_front() {
            let d = dist[node].unwrap();
            if d >= limit {
                continue;
            }
            for &next in &self.adj[node] {
                if dist[next].is_none() {
                    dist[next] = Some(d + 1);
                    queue.push_back(next);
                }
            }
        }
        dist
    }

    pub fn all_pairs_distances(&self) -> Vec<Vec<Option<usize>>> {
        (0..self.adj.len()).map(|s| self.distances_from(s)).collect()
    }
}

pub fn intersection_graph(h: &Hypergraph) -> IntersectionGraph {
    IntersectionGraph::from_vertex_sets(h.edges())
}

/// Shortest-path hop count, `None` when unreachable.
pub fn graph_distance(g: &IntersectionGraph, a: usize, b: usize) -> Option<usize> {
    if a == b {
        return Some(0);
    }
    g.distances_within(a, usize::MAX)[b]
}

/// The `a,a+1` graph: `i ~ j` iff `a <= dist(i, j) <= a + 1` in `g`.
///
/// `a = 1` gives the square of `g`; `a = 2` gives the distance-2-or-3 graph
/// underlying 2,3-components.
pub fn band_intersection_graph(g: &IntersectionGraph, a: usize) -> IntersectionGraph {
    assert!(a >= 1, "band lower bound must be at least 1");
    let adj = (0..g.n_nodes())
        .map(|i| {
            g.distances_within(i, a + 1)
                .iter()
                .enumerate()
                .filter(|&(j, d)| j != i && matches!(d, Some(d) if *d >= a && *d <= a + 1))
                .map(|(j, _)| j)
                .collect()
        })
        .collect();
    IntersectionGraph { adj }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path4() -> IntersectionGraph {
        IntersectionGraph::from_vertex_sets(&[vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4]])
    }

    #[test]
    fn triangle_instance() {
        let g = IntersectionGraph::from_vertex_sets(&[vec![0, 1, 2], vec![2, 3, 4], vec![4, 5, 0]]);
        assert_eq!(g.edge_pairs(), vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn path_instance() {
        let g = path4();
        assert_eq!(g.edge_pairs(), vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(g.max_degree(), 2);
    }

    #[test]
    fn single_edge_has_no_adjacency() {
        let g = IntersectionGraph::from_vertex_sets(&[vec![0, 1, 2]]);
        assert_eq!(g.n_nodes(), 1);
        assert!(g.edge_pairs().is_empty());
        assert_eq!(g.max_degree(), 0);
    }

    #[test]
    fn distances_on_path() {
        let g = path4();
        assert_eq!(graph_distance(&g, 0, 3), Some(3));
        assert_eq!(graph_distance(&g, 0, 0), Some(0));
        let disjoint = IntersectionGraph::from_vertex_sets(&[vec![0, 1], vec![2, 3]]);
        assert_eq!(graph_distance(&disjoint, 0, 1), None);
    }

    #[test]
    fn bands_on_path() {
        let g = path4();
        assert_eq!(band_intersection_graph(&g, 1).edge_pairs(), vec![(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(band_intersection_graph(&g, 2).edge_pairs(), vec![(0, 2), (0, 3), (1, 3)]);
        let single = IntersectionGraph::from_vertex_sets(&[vec![0]]);
        for a in 1..4 {
            assert!(band_intersection_graph(&single, a).edge_pairs().is_empty());
        }
    }

    #[test]
    fn duplicate_edges_intersect() {
        let g = IntersectionGraph::from_vertex_sets(&[vec![0, 1], vec![0, 1]]);
        assert!(g.is_adjacent(0, 1));
    }
}
