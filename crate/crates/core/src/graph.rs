//! Immutable undirected simple graphs in compressed sparse row form.
//!
//! Only the graph itself is stored. Quantities of the complement graph
//! (degrees, edge count, neighbourhoods) are derived from `n` and the stored
//! adjacency, never materialized.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Undirected simple graph with sorted CSR adjacency.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    m: usize,
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
    max_degree: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("m", &self.m)
            .field("max_degree", &self.max_degree)
            .finish()
    }
}

impl Graph {
    /// Builds a graph from an edge list.
    ///
    /// Mirrored and repeated pairs are merged. Self-loops and out-of-range
    /// endpoints are rejected with [`Error::InvalidEdge`].
    pub fn from_edge_list<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n > u32::MAX as usize {
            return Err(Error::InvalidConfig(format!(
                "node count {n} exceeds the supported maximum"
            )));
        }
        let iter = edges.into_iter();
        let mut pairs: Vec<(u32, u32)> = Vec::with_capacity(iter.size_hint().0);
        for (u, v) in iter {
            if u >= n || v >= n {
                return Err(Error::InvalidEdge {
                    u,
                    v,
                    n,
                    reason: "endpoint out of range",
                });
            }
            if u == v {
                return Err(Error::InvalidEdge {
                    u,
                    v,
                    n,
                    reason: "self-loop",
                });
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            pairs.push((a as u32, b as u32));
        }
        pairs.sort_unstable();
        pairs.dedup();
        pairs.shrink_to_fit();
        Ok(Self::from_sorted_unique(n, &pairs))
    }

    /// `pairs` must be sorted, deduplicated and oriented `u < v`.
    fn from_sorted_unique(n: usize, pairs: &[(u32, u32)]) -> Self {
        let m = pairs.len();
        let mut degree = vec![0usize; n];
        for &(u, v) in pairs {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        let mut acc = 0;
        for &d in &degree {
            acc += d;
            offsets.push(acc);
        }
        // Reuse `degree` as the per-row fill cursor.
        degree.copy_from_slice(&offsets[..n]);
        let mut neighbors = vec![0u32; 2 * m];
        // Pairs are sorted by (u, v), so appending v to row u and u to row v
        // keeps each row ascending: row w first receives its smaller
        // neighbours (as the `v` side of earlier pairs) and then its larger
        // ones (as the `u` side, in order of v).
        for &(u, v) in pairs {
            let (u, v) = (u as usize, v as usize);
            neighbors[degree[u]] = v as u32;
            degree[u] += 1;
            neighbors[degree[v]] = u as u32;
            degree[v] += 1;
        }
        let max_degree = (0..n)
            .map(|v| offsets[v + 1] - offsets[v])
            .max()
            .unwrap_or(0);
        let g = Graph {
            n,
            m,
            offsets,
            neighbors,
            max_degree,
        };
        debug_assert!(g.rows_sorted());
        g
    }

    fn rows_sorted(&self) -> bool {
        (0..self.n).all(|v| self.neighbors(v).windows(2).all(|w| w[0] < w[1]))
    }

    /// Graph on `n` nodes without edges.
    pub fn empty(n: usize) -> Self {
        Self::from_sorted_unique(n, &[])
    }

    /// Complete graph on `n` nodes.
    pub fn complete(n: usize) -> Self {
        let mut pairs = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for u in 0..n {
            for v in u + 1..n {
                pairs.push((u as u32, v as u32));
            }
        }
        Self::from_sorted_unique(n, &pairs)
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        let pairs: Vec<(u32, u32)> = (1..n).map(|v| ((v - 1) as u32, v as u32)).collect();
        Self::from_sorted_unique(n, &pairs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Edge count of the complement graph, `n(n-1)/2 - m`.
    pub fn complement_m(&self) -> usize {
        self.n * self.n.saturating_sub(1) / 2 - self.m
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Degree of `v` in the complement graph: `n - 1 - d(v)`.
    #[inline]
    pub fn complement_degree(&self, v: usize) -> usize {
        self.n - 1 - self.degree(v)
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).map(move |v| self.degree(v))
    }

    /// Sorted neighbours of `v`.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.neighbors(u).binary_search(&(v as u32)).is_ok()
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .map(|&v| v as usize)
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Computes `out = A_G x`.
    #[inline]
    pub fn adjacency_matvec(&self, x: &[f64], out: &mut [f64]) {
        debug_assert_eq!(x.len(), self.n);
        debug_assert_eq!(out.len(), self.n);
        for (v, o) in out.iter_mut().enumerate() {
            *o = self.neighbors(v).iter().map(|&u| x[u as usize]).sum();
        }
    }

    /// Heap words (8 bytes) held by the adjacency structure.
    pub fn heap_words(&self) -> usize {
        let bytes = self.offsets.capacity() * std::mem::size_of::<usize>()
            + self.neighbors.capacity() * std::mem::size_of::<u32>();
        bytes.div_ceil(8)
    }

    pub fn is_independent(&self, s: &NodeSet) -> bool {
        s.iter()
            .all(|u| self.neighbors(u).iter().all(|&w| !s.contains(w as usize)))
    }

    /// Independent, and every node outside `s` has a neighbour inside it.
    pub fn is_maximal_independent(&self, s: &NodeSet) -> bool {
        self.is_independent(s)
            && (0..self.n)
                .all(|v| s.contains(v) || self.neighbors(v).iter().any(|&w| s.contains(w as usize)))
    }
}

/// Strictly increasing list of node indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeSet(Vec<usize>);

impl NodeSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sorts and deduplicates `members`.
    pub fn from_unsorted(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        NodeSet(members)
    }

    /// Validates that every member lies in `[0, n)`.
    pub fn with_bound(members: Vec<usize>, n: usize) -> Result<Self> {
        if let Some(&bad) = members.iter().find(|&&v| v >= n) {
            return Err(Error::ContractViolation(format!(
                "node {bad} out of range for graph with {n} nodes"
            )));
        }
        Ok(Self::from_unsorted(members))
    }

    pub(crate) fn from_sorted_unchecked(members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        NodeSet(members)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    /// 0/1 indicator vector of length `n`.
    pub fn indicator(&self, n: usize) -> Vec<f64> {
        let mut x = vec![0.0; n];
        for v in self.iter() {
            x[v] = 1.0;
        }
        x
    }
}

impl FromIterator<usize> for NodeSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        Self::from_unsorted(iter.into_iter().collect())
    }
}
