//! Shared fixtures for the criterion benchmarks.

use qmis_core::{gen_gnm, gnm_half_density_edges, Graph, NodeSet};

/// Half-density G(n, m) instance used by the scaling benchmarks.
pub fn half_density_gnm(n: usize, seed: u64) -> Graph {
    gen_gnm(n, gnm_half_density_edges(n), seed).expect("edge count within bounds")
}

/// Maximal independent set built by a greedy scan in `order`.
pub fn maximal_set_in_order(g: &Graph, order: &[usize]) -> NodeSet {
    let mut blocked = vec![false; g.n()];
    let mut chosen = Vec::new();
    for &v in order {
        if !blocked[v] {
            chosen.push(v);
            blocked[v] = true;
            for &u in g.neighbors(v) {
                blocked[u as usize] = true;
            }
        }
    }
    NodeSet::from_unsorted(chosen)
}
