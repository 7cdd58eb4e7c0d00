pub mod algorithm;
pub mod blackbox;
pub mod coloring;
pub mod harness;
pub mod hypergraph;
pub mod local_sim;
