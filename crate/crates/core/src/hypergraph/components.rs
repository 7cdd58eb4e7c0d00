use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::graph::{band_intersection_graph, IntersectionGraph};
use super::HypergraphError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentKind {
    Comp12,
    Comp23,
    Skeleton23,
}

/// Disjoint groups of hyperedge indices computed inside an ambient subset.
///
/// Groups are sorted internally and ordered by their smallest member.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ComponentSet {
    pub kind: ComponentKind,
    pub groups: Vec<Vec<usize>>,
    pub ambient: Vec<usize>,
}

impl ComponentSet {
    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    /// Index of the group containing `edge`, if any.
    pub fn group_of(&self, edge: usize) -> Option<usize> {
        self.groups.iter().position(|g| g.binary_search(&edge).is_ok())
    }
}

fn canonical_subset(s: &[usize]) -> Vec<usize> {
    let mut s = s.to_vec();
    s.sort_unstable();
    s.dedup();
    s
}

/// Connected components of `members` where two members are linked iff their
/// distance in `g` lies in `lo..=hi`. Distances are always taken in the full
/// graph, not inside `members`.
fn banded_components(g: &IntersectionGraph, members: &[usize], lo: usize, hi: usize) -> Vec<Vec<usize>> {
    let mut in_set = vec![false; g.n_nodes()];
    for &m in members {
        in_set[m] = true;
    }
    let mut seen = vec![false; g.n_nodes()];
    let mut groups = Vec::new();
    for &seed in members {
        if seen[seed] {
            continue;
        }
        seen[seed] = true;
        let mut group = vec![seed];
        let mut queue = VecDeque::from([seed]);
        while let Some(node) = queue.pop_front() {
            for (other, d) in g.distances_within(node, hi).into_iter().enumerate() {
                let linked = matches!(d, Some(d) if d >= lo && d <= hi);
                if linked && in_set[other] && !seen[other] {
                    seen[other] = true;
                    group.push(other);
                    queue.push_back(other);
                }
            }
        }
        group.sort_unstable();
        groups.push(group);
    }
    groups
}

/// Connected 1,2-components of `s`: components of the square of `g`
/// induced on `s`.
pub fn components_12(g: &IntersectionGraph, s: &[usize]) -> ComponentSet {
    let ambient = canonical_subset(s);
    let groups = banded_components(g, &ambient, 1, 2);
    ComponentSet { kind: ComponentKind::Comp12, groups, ambient }
}

/// Connected 2,3-components of `s`.
///
/// Members of `s` are first grouped by the distance-2-or-3 graph. Inside each
/// such candidate group, edges are scanned by ascending index and kept only
/// if vertex-disjoint from every edge already kept in that group; discarded
/// edges are dropped. The result is the set of components of the
/// distance-2-or-3 graph induced on the kept edges, so every output group is
/// pairwise vertex-disjoint.
pub fn components_23(g: &IntersectionGraph, s: &[usize]) -> ComponentSet {
    let ambient = canonical_subset(s);
    let mut kept = Vec::new();
    for candidate in banded_components(g, &ambient, 2, 3) {
        let mut chosen: Vec<usize> = Vec::new();
        for &e in &candidate {
            if chosen.iter().all(|&k| !g.is_adjacent(k, e)) {
                chosen.push(e);
            }
        }
        kept.extend(chosen);
    }
    kept.sort_unstable();
    let groups = banded_components(g, &kept, 2, 3);
    ComponentSet { kind: ComponentKind::Comp23, groups, ambient }
}

/// Greedy 2,3-skeleton of one connected 1,2-component.
///
/// Starts from the lowest-index member and repeatedly adds the lowest-index
/// member whose distance to the current skeleton is exactly 2 or 3 (disjoint
/// from every skeleton edge and linked to one of them). Maximality of the
/// result also makes it 1,2-dominating: every member ends up in the skeleton
/// or intersecting one of its edges.
pub fn skeleton_23(g: &IntersectionGraph, t_prime: &[usize]) -> Result<Vec<usize>, HypergraphError> {
    let members = canonical_subset(t_prime);
    let Some(&first) = members.first() else {
        return Err(HypergraphError::EmptyComponent);
    };
    // distance from each node to the skeleton; usize::MAX beyond 3 hops
    let mut to_skeleton = vec![usize::MAX; g.n_nodes()];
    let mut skeleton = Vec::new();
    let absorb = |e: usize, to_skeleton: &mut Vec<usize>, skeleton: &mut Vec<usize>| {
        skeleton.push(e);
        for (node, d) in g.distances_within(e, 3).into_iter().enumerate() {
            if let Some(d) = d {
                to_skeleton[node] = to_skeleton[node].min(d);
            }
        }
    };
    absorb(first, &mut to_skeleton, &mut skeleton);
    while let Some(&next) = members.iter().find(|&&f| matches!(to_skeleton[f], 2 | 3)) {
        absorb(next, &mut to_skeleton, &mut skeleton);
    }
    skeleton.sort_unstable();
    Ok(skeleton)
}

/// Greedy skeletons of every connected 1,2-component of `s`, one group per
/// component in component order.
pub fn skeletons(g: &IntersectionGraph, s: &[usize]) -> ComponentSet {
    let comps = components_12(g, s);
    let groups = comps.groups.iter().map(|group| skeleton_23(g, group).expect("components are non-empty")).collect();
    ComponentSet { kind: ComponentKind::Skeleton23, groups, ambient: comps.ambient }
}

/// Largest greedy skeleton over the connected 1,2-components of `s`; 0 for
/// an empty set.
pub fn max_skeleton_size(g: &IntersectionGraph, s: &[usize]) -> usize {
    skeletons(g, s).groups.iter().map(Vec::len).max().unwrap_or(0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SkeletonDefect {
    Empty,
    NotSubset(usize),
    Intersecting(usize, usize),
    Disconnected,
    NotDominating(usize),
    NotMaximal(usize),
}

/// Re-checks the defining properties of a 2,3-skeleton of `t_prime` using
/// explicit band graphs: disjointness, 2,3-connectivity, 1,2-domination and
/// maximality.
pub fn verify_skeleton(g: &IntersectionGraph, t_prime: &[usize], skeleton: &[usize]) -> Result<(), SkeletonDefect> {
    let members = canonical_subset(t_prime);
    let skeleton = canonical_subset(skeleton);
    if skeleton.is_empty() {
        return Err(SkeletonDefect::Empty);
    }
    if let Some(&x) = skeleton.iter().find(|x| members.binary_search(x).is_err()) {
        return Err(SkeletonDefect::NotSubset(x));
    }
    for (i, &a) in skeleton.iter().enumerate() {
        for &b in &skeleton[i + 1..] {
            if g.is_adjacent(a, b) {
                return Err(SkeletonDefect::Intersecting(a, b));
            }
        }
    }
    let band23 = band_intersection_graph(g, 2);
    let band12 = band_intersection_graph(g, 1);
    let mut reached = vec![skeleton[0]];
    let mut frontier = vec![skeleton[0]];
    while let Some(node) = frontier.pop() {
        for &next in band23.neighbors(node) {
            if skeleton.binary_search(&next).is_ok() && !reached.contains(&next) {
                reached.push(next);
                frontier.push(next);
            }
        }
    }
    if reached.len() != skeleton.len() {
        return Err(SkeletonDefect::Disconnected);
    }
    for &f in &members {
        let in_skeleton = skeleton.binary_search(&f).is_ok();
        if !in_skeleton && !skeleton.iter().any(|&s| band12.is_adjacent(f, s)) {
            return Err(SkeletonDefect::NotDominating(f));
        }
        let disjoint_from_all = skeleton.iter().all(|&s| s != f && !g.is_adjacent(s, f));
        if !in_skeleton && disjoint_from_all && skeleton.iter().any(|&s| band23.is_adjacent(f, s)) {
            return Err(SkeletonDefect::NotMaximal(f));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(len: usize) -> IntersectionGraph {
        let sets: Vec<Vec<usize>> = (0..len).map(|i| vec![i, i + 1]).collect();
        IntersectionGraph::from_vertex_sets(&sets)
    }

    fn triangle() -> IntersectionGraph {
        IntersectionGraph::from_vertex_sets(&[vec![0, 1, 2], vec![2, 3, 4], vec![4, 5, 0]])
    }

    #[test]
    fn comp12_examples() {
        assert_eq!(components_12(&path(3), &[0, 2]).groups, vec![vec![0, 2]]);
        assert_eq!(components_12(&path(4), &[0, 3]).groups, vec![vec![0], vec![3]]);
        assert!(components_12(&path(4), &[]).is_empty());
    }

    #[test]
    fn comp12_uses_full_graph_distances() {
        // e1 is not in s but still bridges e0 and e2
        let cs = components_12(&path(3), &[2, 0]);
        assert_eq!(cs.ambient, vec![0, 2]);
        assert_eq!(cs.kind, ComponentKind::Comp12);
    }

    #[test]
    fn comp23_examples() {
        assert_eq!(components_23(&path(3), &[0, 2]).groups, vec![vec![0, 2]]);
        assert_eq!(components_23(&path(3), &[0, 1]).groups, vec![vec![0], vec![1]]);
        assert!(components_23(&path(3), &[]).is_empty());
    }

    #[test]
    fn comp23_discards_intersecting_members_of_one_group() {
        let g = IntersectionGraph::from_vertex_sets(&[vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 5]]);
        // s = {0,1,3}: e0-e3 dist 3, e1-e3 dist 2, e0-e1 dist 1
        let cs = components_23(&g, &[0, 1, 3]);
        assert_eq!(cs.groups, vec![vec![0, 3]]);
    }

    #[test]
    fn skeleton_examples() {
        assert_eq!(skeleton_23(&path(3), &[0, 1, 2]).unwrap(), vec![0, 2]);
        assert_eq!(skeleton_23(&path(3), &[0]).unwrap(), vec![0]);
        assert_eq!(skeleton_23(&triangle(), &[0, 1, 2]).unwrap(), vec![0]);
        assert!(matches!(skeleton_23(&path(3), &[]), Err(HypergraphError::EmptyComponent)));
    }

    #[test]
    fn skeleton_verifies() {
        let g = path(7);
        let all: Vec<usize> = (0..7).collect();
        let sk = skeleton_23(&g, &all).unwrap();
        verify_skeleton(&g, &all, &sk).unwrap();
        assert_eq!(sk, vec![0, 2, 4, 6]);
    }

    #[test]
    fn verifier_rejects_defects() {
        let g = path(3);
        let all = [0, 1, 2];
        assert_eq!(verify_skeleton(&g, &all, &[0, 1]), Err(SkeletonDefect::Intersecting(0, 1)));
        assert_eq!(verify_skeleton(&g, &all, &[0]), Err(SkeletonDefect::NotMaximal(2)));
        assert_eq!(verify_skeleton(&g, &all, &[]), Err(SkeletonDefect::Empty));
        // not 1,2-connected, so a lone skeleton edge cannot dominate e5
        let long = path(6);
        assert_eq!(verify_skeleton(&long, &[0, 5], &[0]), Err(SkeletonDefect::NotDominating(5)));
    }

    #[test]
    fn max_skeleton_examples() {
        assert_eq!(max_skeleton_size(&path(3), &[]), 0);
        assert_eq!(max_skeleton_size(&path(3), &[0, 1, 2]), 2);
        assert_eq!(max_skeleton_size(&triangle(), &[0, 1, 2]), 1);
    }
}
