//! Generates one instance per family and prints its shape.

use hypcolor::harness::{brute_force_bichromatic, generate, Family, GeneratorSpec};
use hypcolor::hypergraph::{components_12, intersection_graph, max_skeleton_size};

fn main() {
    println!("{:<20} {:>5} {:>5} {:>3} {:>7} {:>6} {:>6}", "family", "verts", "edges", "d", "maxdeg", "comps", "skel");
    for family in Family::ALL {
        let h = generate(&GeneratorSpec::new(family, 32, 8, 1)).expect("generate");
        let g = intersection_graph(&h);
        let all: Vec<usize> = (0..h.n_edges()).collect();
        println!(
            "{:<20} {:>5} {:>5} {:>3} {:>7} {:>6} {:>6}",
            family.name(),
            h.n_vertices(),
            h.n_edges(),
            h.delta(),
            g.max_degree(),
            components_12(&g, &all).groups.len(),
            max_skeleton_size(&g, &all),
        );
    }

    let small = generate(&GeneratorSpec::new(Family::UniformRandom, 12, 3, 4)).unwrap();
    println!("\n{}", small.to_json());
    println!("brute force: {:?}", brute_force_bichromatic(&small).unwrap());
}
