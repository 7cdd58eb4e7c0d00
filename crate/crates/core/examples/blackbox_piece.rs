//! Recolors a hand-made piece three ways.

use hypcolor::blackbox::{
    blackbox_recolor, exhaustive_recolor, greedy_recolor, initial_potential, verify_piece_recolor, BlackboxConfig,
    Piece, PieceEdge,
};
use hypcolor::coloring::{Color, VertexState};

fn main() {
    let u = VertexState::Undecided;
    let red = VertexState::Fixed(Color::Red);
    let piece = Piece::new(
        vec![
            PieceEdge { edge: 0, vertices: vec![0, 1, 2, 3], status: vec![u, u, u, u] },
            PieceEdge { edge: 1, vertices: vec![3, 4, 5, 6], status: vec![u, u, u, u] },
            // a dangerous fringe edge whose good vertex keeps its color
            PieceEdge { edge: 2, vertices: vec![2, 6, 7], status: vec![u, u, red] },
        ],
        vec![0, 1],
        vec![2],
    )
    .unwrap();
    println!("undecided {:?}, initial potential {:.3}", piece.undecided_vertices(), initial_potential(&piece));

    let show = |name: &str, a: &hypcolor::blackbox::Assignment| {
        let s: String = a.values().map(|c| c.symbol()).collect();
        println!("{name:<10} {s} valid={}", verify_piece_recolor(&piece, a));
    };
    show("exhaustive", &exhaustive_recolor(&piece).unwrap());
    show("greedy", &greedy_recolor(&piece).unwrap());
    show("default", &blackbox_recolor(&piece, &BlackboxConfig::default()).unwrap());
}
