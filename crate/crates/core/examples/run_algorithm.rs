//! Runs the full algorithm, then shows a wide component being carried over.

use hypcolor::algorithm::{epoch_skeleton_series, run, AlgoParams, DecisionMode};
use hypcolor::coloring::{is_bichromatic, Color, ColoringSequence, Thresholds};
use hypcolor::harness::{generate, trial_rng, Family, GeneratorSpec};
use hypcolor::hypergraph::Hypergraph;

fn main() {
    let h = generate(&GeneratorSpec::new(Family::UniformRandom, 64, 8, 3)).unwrap();
    let x = 36;
    let colorings = ColoringSequence::random(h.n_vertices(), x, &mut trial_rng(3, 0));
    let params = AlgoParams::new(&h, 0.25, 3, colorings).unwrap();
    let r = run(&h, &params).unwrap();
    println!(
        "n={} edges={} success={} phases={} rounds={}",
        h.n_vertices(),
        h.n_edges(),
        r.is_success(),
        r.phases_executed,
        r.total_rounds
    );
    for t in &r.traces {
        println!(
            "  phase {}: biased {} dangerous {} components {} pieces {} fixed {}+{}+{} idled {}",
            t.phase,
            t.biased.len(),
            t.dangerous.len(),
            t.components.len(),
            t.pieces.len(),
            t.fixed_good.len(),
            t.fixed_blackbox.len(),
            t.fixed_isolated.len(),
            t.idled.len()
        );
    }
    if let Some(c) = r.coloring() {
        assert!(is_bichromatic(&h, c).is_bichromatic());
    }
    println!("skeleton series {:?}", epoch_skeleton_series(&r, params.beta));

    // an all-red chain of 12 edges is too wide to settle in one phase
    let chain = Hypergraph::new(25, 3, (0..12).map(|i| vec![2 * i, 2 * i + 1, 2 * i + 2]).collect()).unwrap();
    let seq = ColoringSequence::new(vec![vec![Color::Red; 25]]);
    let p = AlgoParams::with_schedule(&chain, Thresholds::uniform(0.25), 3, 1, 1, seq).unwrap();
    let local = run(&chain, &p).unwrap();
    let global = run(&chain, &p.clone().with_mode(DecisionMode::Global)).unwrap();
    let t = &local.traces[0];
    println!(
        "chain: diameter {:?} (limit {}), carried over {} edges, success={}, local == global: {}",
        t.components[0].diameter,
        p.small_diameter_limit(),
        t.carried_over.len(),
        local.is_success(),
        local == global
    );
}
