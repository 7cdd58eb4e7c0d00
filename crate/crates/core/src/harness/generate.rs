use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::HarnessError;
use crate::hypergraph::{Hypergraph, IntersectionGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    UniformRandom,
    BoundedDegree,
    PathChain,
    Grid,
    AdversarialBiased,
}

impl Family {
    pub const ALL: [Family; 5] =
        [Family::UniformRandom, Family::BoundedDegree, Family::PathChain, Family::Grid, Family::AdversarialBiased];

    pub fn name(self) -> &'static str {
        match self {
            Family::UniformRandom => "uniform_random",
            Family::BoundedDegree => "bounded_degree",
            Family::PathChain => "path_chain",
            Family::Grid => "grid",
            Family::AdversarialBiased => "adversarial_biased",
        }
    }
}

impl std::str::FromStr for Family {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| HarnessError::BadSpec(format!("unknown family {s}")))
    }
}

/// Admissible instance recipe: `n` vertices and `n` edges of size `delta`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub family: Family,
    pub n: usize,
    pub delta: usize,
    pub seed: u64,
    /// Intersection-degree cap for `bounded_degree`; defaults to
    /// `delta * (delta - 1)`, the degree when no vertex lies in more than
    /// `delta` edges.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<usize>,
}

impl GeneratorSpec {
    pub fn new(family: Family, n: usize, delta: usize, seed: u64) -> Self {
        Self { family, n, delta, seed, max_degree: None }
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        Self { seed, ..self.clone() }
    }
}

const REDRAWS_PER_EDGE: usize = 2_000;

fn random_edge(rng: &mut ChaCha8Rng, n: usize, delta: usize) -> Vec<usize> {
    sample(rng, n, delta).into_vec()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Deterministic in `spec.seed`.
pub fn generate(spec: &GeneratorSpec) -> Result<Hypergraph, HarnessError> {
    let GeneratorSpec { family, n, delta, seed, .. } = *spec;
    if delta == 0 || delta > n {
        return Err(HarnessError::BadSpec(format!("need 1 <= delta <= n, got delta = {delta}, n = {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<Vec<usize>> = match family {
        Family::UniformRandom => (0..n).map(|_| random_edge(&mut rng, n, delta)).collect(),
        Family::BoundedDegree => bounded_degree(&mut rng, n, delta, spec.max_degree.unwrap_or(delta * (delta - 1)))?,
        Family::PathChain => (0..n).map(|i| (0..delta).map(|k| (i + k) % n).collect()).collect(),
        Family::Grid => {
            let root = (n as f64).sqrt().ceil() as usize;
            let stride = (root.max(1)..n.max(2)).find(|&s| gcd(s, n) == 1).unwrap_or(1);
            (0..n)
                .map(|i| {
                    let step = if i % 2 == 0 { 1 } else { stride };
                    (0..delta).map(|k| (i + k * step) % n).collect()
                })
                .collect()
        }
        Family::AdversarialBiased => {
            let hub = delta.div_ceil(2);
            (0..n)
                .map(|i| {
                    if i < n / 2 {
                        let mut edge: Vec<usize> = (0..hub).collect();
                        edge.extend(sample(&mut rng, n - hub, delta - hub).into_iter().map(|v| v + hub));
                        edge
                    } else {
                        random_edge(&mut rng, n, delta)
                    }
                })
                .collect()
        }
    };
    Ok(Hypergraph::new(n, delta, edges)?)
}

fn bounded_degree(rng: &mut ChaCha8Rng, n: usize, delta: usize, cap: usize) -> Result<Vec<Vec<usize>>, HarnessError> {
    let mut edges: Vec<Vec<usize>> = Vec::with_capacity(n);
    for _ in 0..n {
        let mut placed = false;
        for _ in 0..REDRAWS_PER_EDGE {
            let mut candidate = random_edge(rng, n, delta);
            candidate.sort_unstable();
            edges.push(candidate);
            if IntersectionGraph::from_vertex_sets(&edges).max_degree() <= cap {
                placed = true;
                break;
            }
            edges.pop();
            // keep the stream moving even when candidates repeat
            let _: u32 = rng.gen();
        }
        if !placed {
            return Err(HarnessError::GenerationFailed { placed: edges.len(), wanted: n, cap });
        }
    }
    Ok(edges)
}
