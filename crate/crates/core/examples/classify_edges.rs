//! Classifies edges under a temporary coloring and audits the invariant.

use hypcolor::coloring::{
    bias_probability_bound, check_invariant, classify, exact_bias_probability, Color, PartialColoringState, Thresholds,
};
use hypcolor::hypergraph::Hypergraph;

fn main() {
    // e1 and e2 are all red; e0 shares three vertices with them
    let h = Hypergraph::new(
        22,
        8,
        vec![(0..8).collect(), vec![0, 1, 8, 9, 10, 11, 12, 13], vec![2, 14, 15, 16, 17, 18, 19, 20]],
    )
    .unwrap();
    let mut c = vec![Color::Red; 22];
    for v in [5, 6, 7, 21] {
        c[v] = Color::Blue;
    }
    let t = Thresholds::uniform(0.25);
    let mut state = PartialColoringState::initial(22, h.n_edges());
    let cls = classify(&h, &state, &c, &t);
    for (e, class) in cls.edges.iter().enumerate() {
        println!("edge {e} {:?} {:?}", h.edge(e), class);
    }
    let bad: Vec<usize> = (0..22).filter(|&v| cls.is_bad(v)).collect();
    println!("bad vertices {bad:?}");

    state.fix_vertex(0, Color::Red);
    state.fix_vertex(3, Color::Blue);
    match check_invariant(&h, &state, &t) {
        Ok(()) => println!("invariant holds"),
        Err(v) => println!("invariant violations {v:?}"),
    }

    for delta in [8, 12, 16] {
        let exact = exact_bias_probability(0.125, delta).unwrap();
        println!(
            "delta {delta:>2}: Pr[biased] = {}/2^{} = {:.5}, bound {:.5}",
            exact.favorable,
            exact.delta,
            exact.to_f64(),
            bias_probability_bound(0.125, delta).unwrap()
        );
    }
}
