#![allow(clippy::needless_range_loop)]

use hypcolor::hypergraph::Hypergraph;

/// All-pairs distances by Floyd-Warshall over raw vertex intersections.
pub fn distances(h: &Hypergraph) -> Vec<Vec<usize>> {
    let m = h.n_edges();
    let inf = usize::MAX / 4;
    let mut d = vec![vec![inf; m]; m];
    for i in 0..m {
        d[i][i] = 0;
        for j in 0..m {
            if i != j && h.edge(i).iter().any(|v| h.edge(j).contains(v)) {
                d[i][j] = 1;
            }
        }
    }
    for k in 0..m {
        for i in 0..m {
            for j in 0..m {
                d[i][j] = d[i][j].min(d[i][k] + d[k][j]);
            }
        }
    }
    d
}

/// Connected components of `members` under `lo <= d <= hi`, by repeated merging.
fn band_groups(d: &[Vec<usize>], members: &[usize], lo: usize, hi: usize) -> Vec<Vec<usize>> {
    let mut label: Vec<usize> = (0..members.len()).collect();
    loop {
        let mut changed = false;
        for a in 0..members.len() {
            for b in 0..members.len() {
                let dist = d[members[a]][members[b]];
                if a != b && (lo..=hi).contains(&dist) && label[a] != label[b] {
                    let (keep, drop) = (label[a].min(label[b]), label[a].max(label[b]));
                    label.iter_mut().filter(|l| **l == drop).for_each(|l| *l = keep);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut seen: Vec<usize> = Vec::new();
    for (i, &l) in label.iter().enumerate() {
        match seen.iter().position(|&s| s == l) {
            Some(p) => groups[p].push(members[i]),
            None => {
                seen.push(l);
                groups.push(vec![members[i]]);
            }
        }
    }
    for g in &mut groups {
        g.sort_unstable();
    }
    groups.sort();
    groups
}

pub fn brute_components_12(h: &Hypergraph, s: &[usize]) -> Vec<Vec<usize>> {
    band_groups(&distances(h), s, 1, 2)
}

pub fn brute_components_23(h: &Hypergraph, s: &[usize]) -> Vec<Vec<usize>> {
    let d = distances(h);
    let mut kept = Vec::new();
    for group in band_groups(&d, s, 2, 3) {
        let mut chosen: Vec<usize> = Vec::new();
        for e in group {
            if chosen.iter().all(|&c| d[c][e] >= 2) {
                chosen.push(e);
            }
        }
        kept.extend(chosen);
    }
    kept.sort_unstable();
    band_groups(&d, &kept, 2, 3)
}
