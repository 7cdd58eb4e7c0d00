//! Runs full-information gossip on a path of edges and compares each view
//! with the breadth-first oracle.

use hypcolor::hypergraph::Hypergraph;
use hypcolor::local_sim::{view_oracle, CommGraph, RoundEngine, UnitId};

fn main() {
    let edges = (0..6).map(|i| vec![2 * i, 2 * i + 1, 2 * i + 2]).collect();
    let h = Hypergraph::new(13, 3, edges).unwrap();
    let g = CommGraph::full(&h);
    let mut engine = RoundEngine::new(&g).with_trace();
    let origin = UnitId::Vertex(0);
    for y in 0..=8 {
        let view = engine.view(origin);
        let known: Vec<usize> = view.known_edges().collect();
        let agrees = view.same_facts(&view_oracle(&g, origin, y));
        println!("round {y}: vertex 0 knows edges {known:?} (oracle agrees: {agrees})");
        engine.step_round();
    }
    println!("messages {} over {} links", engine.messages(), g.n_links());
    let mut jsonl = Vec::new();
    engine.write_trace(&mut jsonl).unwrap();
    println!(
        "trace: {} events, first {}",
        jsonl.split(|&b| b == b'\n').count() - 1,
        String::from_utf8_lossy(jsonl.split(|&b| b == b'\n').next().unwrap())
    );
}
