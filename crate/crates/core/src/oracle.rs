//! Exact maximum independent set for small graphs, and a greedy baseline.

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeSet};

/// Largest graph accepted by [`exact_mis`].
pub const ORACLE_CAP: usize = 64;
/// Largest graph for which all optima are listed.
pub const ENUMERATION_CAP: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub optimum_size: usize,
    pub one_optimum: NodeSet,
    /// Every maximum independent set, in ascending lexicographic order.
    /// Present only when requested and `n ≤ ENUMERATION_CAP`.
    pub all_optima: Option<Vec<NodeSet>>,
}

fn mask_to_set(mask: u64) -> NodeSet {
    NodeSet::from_sorted_unchecked(bits(mask).collect())
}

fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

struct Search {
    adj: Vec<u64>,
    enumerate: bool,
    best_size: usize,
    best: u64,
    optima: Vec<u64>,
}

impl Search {
    /// Upper bound on the independence number of `cand` from a greedy
    /// partition into cliques.
    fn clique_cover(&self, mut rest: u64) -> usize {
        let mut cliques = 0;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= !(1 << u);
            let mut common = rest & self.adj[u];
            while common != 0 {
                let w = common.trailing_zeros() as usize;
                rest &= !(1 << w);
                common &= self.adj[w] & !(1 << w);
            }
            cliques += 1;
        }
        cliques
    }

    fn record(&mut self, set: u64, size: usize) {
        if size > self.best_size {
            self.best_size = size;
            self.best = set;
            self.optima.clear();
        }
        if self.enumerate && size == self.best_size {
            self.optima.push(set);
        }
    }

    fn branch(&mut self, mut cand: u64, mut set: u64, mut size: usize) {
        // Vertices without neighbours in `cand` belong to every maximum
        // extension of `set`. In optimization mode a degree-1 vertex can also
        // be taken: swapping its neighbour for it never loses size.
        loop {
            let mut forced = 0u64;
            for v in bits(cand) {
                let d = (self.adj[v] & cand).count_ones();
                if d == 0 || (!self.enumerate && d == 1 && forced & self.adj[v] == 0) {
                    forced |= 1 << v;
                }
            }
            if forced == 0 {
                break;
            }
            for v in bits(forced) {
                if cand & (1 << v) != 0 {
                    set |= 1 << v;
                    size += 1;
                    cand &= !(1 << v) & !self.adj[v];
                }
            }
        }
        if cand == 0 {
            self.record(set, size);
            return;
        }
        let bound = size + self.clique_cover(cand);
        if bound < self.best_size || (!self.enumerate && bound == self.best_size) {
            return;
        }
        let pivot = bits(cand)
            .max_by_key(|&v| ((self.adj[v] & cand).count_ones(), std::cmp::Reverse(v)))
            .expect("non-empty candidate set");
        self.branch(
            cand & !(1 << pivot) & !self.adj[pivot],
            set | (1 << pivot),
            size + 1,
        );
        self.branch(cand & !(1 << pivot), set, size);
    }
}

/// Branch and bound over include/exclude decisions on the highest-degree
/// candidate (lowest index on ties), pruned by a greedy clique-cover bound.
pub fn exact_mis(g: &Graph, enumerate_all: bool) -> Result<OracleResult> {
    let n = g.n();
    if n > ORACLE_CAP {
        return Err(Error::TooLarge { n, cap: ORACLE_CAP });
    }
    let adj: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | (1 << u)))
        .collect();
    let enumerate = enumerate_all && n <= ENUMERATION_CAP;
    let mut search = Search {
        adj,
        enumerate,
        best_size: 0,
        best: 0,
        optima: Vec::new(),
    };
    if !enumerate {
        let greedy = greedy_min_degree(g);
        search.best_size = greedy.len();
        search.best = greedy.iter().fold(0, |m, v| m | (1 << v));
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    search.branch(all, 0, 0);

    let all_optima = enumerate.then(|| {
        let mut sets: Vec<NodeSet> = search.optima.iter().map(|&m| mask_to_set(m)).collect();
        sets.sort();
        sets.dedup();
        sets
    });
    let one_optimum = match &all_optima {
        Some(sets) => sets[0].clone(),
        None => mask_to_set(search.best),
    };
    Ok(OracleResult {
        optimum_size: search.best_size,
        one_optimum,
        all_optima,
    })
}

/// Repeatedly takes a minimum-degree vertex of the residual graph (lowest
/// index on ties) and deletes its closed neighbourhood.
pub fn greedy_min_degree(g: &Graph) -> NodeSet {
    let n = g.n();
    let mut alive = vec![true; n];
    let mut degree: Vec<usize> = g.degrees().collect();
    let mut remaining = n;
    let mut chosen = Vec::new();
    while remaining > 0 {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (degree[v], v))
            .expect("a live vertex remains");
        chosen.push(v);
        let closed = std::iter::once(v).chain(g.neighbors(v).iter().map(|&u| u as usize));
        for w in closed {
            if !alive[w] {
                continue;
            }
            alive[w] = false;
            remaining -= 1;
            for &x in g.neighbors(w) {
                let x = x as usize;
                if alive[x] {
                    degree[x] -= 1;
                }
            }
        }
    }
    NodeSet::from_unsorted(chosen)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::figure_one;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Exhaustive search over all 2^n subsets.
    fn brute_force(g: &Graph) -> (usize, Vec<NodeSet>) {
        let n = g.n();
        let mut best = 0;
        let mut sets = Vec::new();
        for mask in 0u32..(1 << n) {
            let s: NodeSet = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            if !g.is_independent(&s) {
                continue;
            }
            if s.len() > best {
                best = s.len();
                sets.clear();
            }
            if s.len() == best {
                sets.push(s);
            }
        }
        sets.sort();
        (best, sets)
    }

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.random_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edge_list(n, edges).unwrap()
    }

    #[test]
    fn figure_one_optima() {
        let r = exact_mis(&figure_one(), true).unwrap();
        assert_eq!(r.optimum_size, 3);
        let all = r.all_optima.unwrap();
        assert!(all.contains(&NodeSet::from_iter([0, 3, 4])));
        assert!(all.contains(&NodeSet::from_iter([2, 3, 4])));
        assert_eq!(all, brute_force(&figure_one()).1);
    }

    #[test]
    fn trivial_graphs() {
        assert_eq!(
            exact_mis(&Graph::complete(6), false).unwrap().optimum_size,
            1
        );
        assert_eq!(exact_mis(&Graph::empty(6), false).unwrap().optimum_size, 6);
        assert_eq!(exact_mis(&Graph::empty(0), true).unwrap().optimum_size, 0);
    }

    #[test]
    fn too_large() {
        assert_eq!(
            exact_mis(&Graph::empty(65), false),
            Err(Error::TooLarge { n: 65, cap: 64 })
        );
        assert!(exact_mis(&Graph::empty(64), false).is_ok());
    }

    #[test]
    fn enumeration_only_for_small_graphs() {
        assert!(exact_mis(&Graph::empty(17), true)
            .unwrap()
            .all_optima
            .is_none());
        assert_eq!(
            exact_mis(&Graph::complete(5), true)
                .unwrap()
                .all_optima
                .unwrap()
                .len(),
            5
        );
    }

    #[test]
    fn matches_brute_force_up_to_sixteen_nodes() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..150 {
            let n = rng.random_range(1..=16);
            let p = [0.1, 0.3, 0.5, 0.8][rng.random_range(0..4)];
            let g = random_graph(&mut rng, n, p);
            let (size, sets) = brute_force(&g);
            let fast = exact_mis(&g, false).unwrap();
            assert_eq!(fast.optimum_size, size);
            assert!(g.is_maximal_independent(&fast.one_optimum));
            assert_eq!(fast.one_optimum.len(), size);
            let listed = exact_mis(&g, true).unwrap();
            assert_eq!(listed.all_optima.unwrap(), sets);
        }
    }

    #[test]
    fn optimum_bounds_greedy_bounds_wei() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..60 {
            let n = rng.random_range(2..=40);
            let density = rng.random_range(0.05..0.9);
            let g = random_graph(&mut rng, n, density);
            let opt = exact_mis(&g, false).unwrap();
            let greedy = greedy_min_degree(&g);
            let wei: f64 = g.degrees().map(|d| 1.0 / (1.0 + d as f64)).sum();
            assert!(g.is_maximal_independent(&greedy));
            assert!(g.is_maximal_independent(&opt.one_optimum));
            assert!(opt.optimum_size >= greedy.len());
            assert!(greedy.len() as f64 >= wei - 1e-9);
        }
    }

    #[test]
    fn greedy_small_cases() {
        assert_eq!(greedy_min_degree(&Graph::path(3)).as_slice(), &[0, 2]);
        assert_eq!(greedy_min_degree(&Graph::complete(4)).len(), 1);
        assert_eq!(greedy_min_degree(&figure_one()).len(), 3);
    }

    #[test]
    fn dense_sixty_four_node_instance() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let g = random_graph(&mut rng, 64, 0.5);
        let r = exact_mis(&g, false).unwrap();
        assert!(g.is_independent(&r.one_optimum));
        assert_eq!(r.one_optimum.len(), r.optimum_size);
        assert!(r.optimum_size >= greedy_min_degree(&g).len());
    }
}
