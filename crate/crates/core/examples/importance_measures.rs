//! Degree and PageRank importance on a small class graph.

use ganet::graph::{
    compute_importance, ClassGraph, ImportanceConfig, ImportanceMeasure,
};

fn main() -> ganet::Result<()> {
    // class 0: a star into vertex 0; class 1: a directed cycle
    let labels = vec![0, 0, 0, 0, 1, 1, 1];
    let edges = [(1, 0), (2, 0), (3, 0), (0, 1), (4, 5), (5, 6), (6, 4)];
    let graph = ClassGraph::from_edges(labels, &edges)?;

    for measure in [ImportanceMeasure::Degree, ImportanceMeasure::Pagerank] {
        let cfg = ImportanceConfig { measure, ..ImportanceConfig::default() };
        let scores = compute_importance(&graph, &cfg)?;
        let shown: Vec<String> = scores.iter().map(|v| format!("{v:.3}")).collect();
        println!("{measure:>8}: [{}]", shown.join(", "));
    }
    Ok(())
}
