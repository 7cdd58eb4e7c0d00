//! Finds one coloring sequence that works for every instance of the bundled
//! universe, then checks it again.

use std::path::Path;

use hypcolor::harness::{search_colorings, succeeds_on_all, SearchConfig};
use hypcolor::hypergraph::Hypergraph;

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/universe");
    let universe: Vec<Hypergraph> =
        ["ring", "split", "hub"].iter().map(|n| Hypergraph::load(&dir.join(format!("{n}.json"))).unwrap()).collect();
    let config = SearchConfig { alpha: 0.25, u: 3, beta: 3, num_epochs: 3, budget: 100_000, seed: 11 };
    let found = search_colorings(&universe, &config).unwrap();
    println!("found after {} sequences ({:?})", found.examined, found.stage);
    for (i, c) in found.sequence.colorings().iter().enumerate() {
        println!("  C_{} {}", i + 1, c.iter().map(|x| x.symbol()).collect::<String>());
    }
    println!("verified: {}", succeeds_on_all(&universe, &found.sequence, &config));
}
