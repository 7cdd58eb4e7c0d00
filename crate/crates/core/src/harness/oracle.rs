use serde::{Deserialize, Serialize};

use super::HarnessError;
use crate::coloring::Color;
use crate::hypergraph::Hypergraph;

pub const BRUTE_FORCE_MAX_VERTICES: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "coloring", rename_all = "snake_case")]
pub enum BruteForce {
    Feasible(Vec<Color>),
    Infeasible,
}

impl BruteForce {
    pub fn is_feasible(&self) -> bool {
        matches!(self, BruteForce::Feasible(_))
    }
}

/// First proper 2-coloring in canonical order (vertex 0 most significant,
/// Red before Blue), found by enumerating every assignment.
pub fn brute_force_bichromatic(h: &Hypergraph) -> Result<BruteForce, HarnessError> {
    let n = h.n_vertices();
    if n > BRUTE_FORCE_MAX_VERTICES {
        return Err(HarnessError::TooLarge { n_vertices: n, cap: BRUTE_FORCE_MAX_VERTICES });
    }
    // bit (n - 1 - v) of a mask is the color of v, 1 meaning Blue
    let masks: Vec<u32> = h.edges().iter().map(|e| e.iter().map(|&v| 1u32 << (n - 1 - v)).sum()).collect();
    for mask in 0u32..(1u32 << n) {
        if masks.iter().all(|&m| mask & m != 0 && mask & m != m) {
            let coloring =
                (0..n).map(|v| if mask >> (n - 1 - v) & 1 == 1 { Color::Blue } else { Color::Red }).collect();
            return Ok(BruteForce::Feasible(coloring));
        }
    }
    Ok(BruteForce::Infeasible)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Color::{Blue as B, Red as R};

    #[test]
    fn single_pair() {
        let h = Hypergraph::new(2, 2, vec![vec![0, 1]]).unwrap();
        assert_eq!(brute_force_bichromatic(&h).unwrap(), BruteForce::Feasible(vec![R, B]));
    }

    #[test]
    fn triangle_of_pairs_is_infeasible() {
        // an odd cycle of 2-edges cannot be properly 2-colored
        let h = Hypergraph::new(3, 2, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert_eq!(brute_force_bichromatic(&h).unwrap(), BruteForce::Infeasible);
    }

    #[test]
    fn triples_on_four_vertices() {
        let h = Hypergraph::new(4, 3, vec![vec![0, 1, 2], vec![1, 2, 3], vec![0, 2, 3]]).unwrap();
        assert_eq!(brute_force_bichromatic(&h).unwrap(), BruteForce::Feasible(vec![R, R, B, R]));
    }

    #[test]
    fn singleton_edge_never_bichromatic() {
        let h = Hypergraph::new(2, 1, vec![vec![0]]).unwrap();
        assert_eq!(brute_force_bichromatic(&h).unwrap(), BruteForce::Infeasible);
    }

    #[test]
    fn size_cap() {
        let h = Hypergraph::new(25, 2, vec![vec![0, 1]]).unwrap();
        assert!(matches!(brute_force_bichromatic(&h), Err(HarnessError::TooLarge { .. })));
    }
}
