//! Seeded random graph generators.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Edge count `⌈n(n-1)/4⌉` used for half-density G(n, m) benchmarks.
pub fn gnm_half_density_edges(n: usize) -> usize {
    (n * n.saturating_sub(1)).div_ceil(4)
}

/// G(n, p): every unordered pair independently with probability `p`.
pub fn gen_er(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edge_list(n, edges)
}

/// Maps a pair rank in `[0, n(n-1)/2)` to `(u, v)` with `u < v`, enumerating
/// by the larger endpoint: `(0,1), (0,2), (1,2), (0,3), ...`.
fn unrank_pair(r: usize) -> (usize, usize) {
    // Largest v with v(v-1)/2 <= r.
    let mut v = ((1.0 + (1.0 + 8.0 * r as f64).sqrt()) / 2.0) as usize;
    while v * (v - 1) / 2 > r {
        v -= 1;
    }
    while (v + 1) * v / 2 <= r {
        v += 1;
    }
    (r - v * (v - 1) / 2, v)
}

/// G(n, m): a uniformly random simple graph with exactly `m` edges.
pub fn gen_gnm(n: usize, m: usize, seed: u64) -> Result<Graph> {
    let max = n * n.saturating_sub(1) / 2;
    if m > max {
        return Err(Error::InvalidEdgeCount { requested: m, max });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let picks = index::sample(&mut rng, max, m);
    Graph::from_edge_list(n, picks.into_iter().map(unrank_pair))
}
