//! Maximal-independent-set tests on thresholded iterates.
//!
//! The fast path asks whether a binary point is a fixed point of one
//! projected gradient step. At a binary point that reduces to sign
//! conditions on the gradient: `∂f/∂x_v ≥ 0` where `z_v = 0` and
//! `∂f/∂x_v ≤ 0` where `z_v = 1`. Both need only the neighbour counts
//! `A z`, so the whole test is a single pass over the adjacency.

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeSet};
use crate::objective::ObjectiveParams;

/// Strictly binary vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryVector(Vec<u8>);

impl BinaryVector {
    /// Fails with [`Error::ContractViolation`] on any entry other than 0 or 1.
    pub fn new(z: Vec<u8>) -> Result<Self> {
        if let Some((i, v)) = z.iter().enumerate().find(|(_, &v)| v > 1) {
            return Err(Error::ContractViolation(format!(
                "entry {i} = {v} is not binary"
            )));
        }
        Ok(BinaryVector(z))
    }

    /// Same as [`BinaryVector::new`] for real-valued input.
    pub fn from_reals(z: &[f64]) -> Result<Self> {
        z.iter()
            .enumerate()
            .map(|(i, &v)| {
                if v == 0.0 {
                    Ok(0)
                } else if v == 1.0 {
                    Ok(1)
                } else {
                    Err(Error::ContractViolation(format!(
                        "entry {i} = {v} is not binary"
                    )))
                }
            })
            .collect::<Result<Vec<u8>>>()
            .map(BinaryVector)
    }

    pub fn indicator(set: &NodeSet, n: usize) -> Self {
        let mut z = vec![0u8; n];
        for v in set.iter() {
            z[v] = 1;
        }
        BinaryVector(z)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    pub fn support(&self) -> NodeSet {
        support_of(&self.0)
    }
}

pub(crate) fn support_of(z: &[u8]) -> NodeSet {
    NodeSet::from_sorted_unchecked(
        z.iter()
            .enumerate()
            .filter(|(_, &b)| b == 1)
            .map(|(v, _)| v)
            .collect(),
    )
}

/// Strict-positive indicator `z_v = [x_v > 0]`.
pub fn threshold(x: &[f64]) -> BinaryVector {
    let mut z = vec![0u8; x.len()];
    threshold_into(x, &mut z);
    BinaryVector(z)
}

#[inline]
pub(crate) fn threshold_into(x: &[f64], z: &mut [u8]) {
    for (b, &v) in z.iter_mut().zip(x) {
        *b = u8::from(v > 0.0);
    }
}

/// Fixed-point test of one projected gradient step at binary `z`.
///
/// Certifies maximal independence exactly when
/// [`ObjectiveParams::boundary_check_is_exact`] holds (for example `γ ≥ n`).
/// Outside that regime the answer is the literal fixed-point test and may
/// disagree with [`direct_mis_check`].
pub fn fast_mis_check(g: &Graph, p: &ObjectiveParams, z: &BinaryVector) -> Result<bool> {
    if z.len() != g.n() {
        return Err(Error::Dimension {
            expected: g.n(),
            got: z.len(),
        });
    }
    Ok(boundary_fixed_point(g, p, &z.0))
}

/// Sign-condition form of the fixed-point test on a raw 0/1 slice.
///
/// With the complement term,
/// `∂f/∂x_v = -1 + (γ+1)·c_v - (|z| - z_v)` where `c_v` counts neighbours
/// of `v` in `z`; without it, `∂f/∂x_v = -1 + γ·c_v`.
pub(crate) fn boundary_fixed_point(g: &Graph, p: &ObjectiveParams, z: &[u8]) -> bool {
    let total: u32 = z.iter().map(|&b| b as u32).sum();
    let (scale, complement) = if p.complement_term() {
        (p.gamma() + 1.0, 1.0)
    } else {
        (p.gamma(), 0.0)
    };
    let grad = |inside: u32, others: u32| -1.0 + scale * inside as f64 - complement * others as f64;

    // The gradient grows with the neighbour count, so each condition is a
    // threshold on c_v: members need c_v ≤ max_member, non-members need
    // c_v ≥ min_outside.
    let others_in = total.saturating_sub(1);
    let mut max_member = ((1.0 + complement * others_in as f64) / scale)
        .floor()
        .max(-1.0) as i64;
    while max_member >= 0 && grad(max_member as u32, others_in) > 0.0 {
        max_member -= 1;
    }
    while grad((max_member + 1) as u32, others_in) <= 0.0 {
        max_member += 1;
    }
    let mut min_outside = ((1.0 + complement * total as f64) / scale).ceil().max(0.0) as u32;
    while min_outside > 0 && grad(min_outside - 1, total) >= 0.0 {
        min_outside -= 1;
    }
    while grad(min_outside, total) < 0.0 {
        min_outside += 1;
    }

    for (v, &zv) in z.iter().enumerate() {
        let nbrs = g.neighbors(v);
        let holds = match (zv == 1, max_member, min_outside) {
            (true, m, _) if m < 0 => false,
            (true, 0, _) => nbrs.iter().all(|&u| z[u as usize] == 0),
            (true, m, _) => {
                let mut inside = 0i64;
                nbrs.iter().all(|&u| {
                    inside += z[u as usize] as i64;
                    inside <= m
                })
            }
            (false, _, 0) => true,
            (false, _, 1) => nbrs.iter().any(|&u| z[u as usize] != 0),
            (false, _, need) => {
                let mut inside = 0u32;
                nbrs.iter().any(|&u| {
                    inside += z[u as usize] as u32;
                    inside >= need
                })
            }
        };
        if !holds {
            return false;
        }
    }
    true
}

/// Reference test: the support of `z` is a maximal independent set, checked
/// member by member against the adjacency lists.
pub fn direct_mis_check(g: &Graph, z: &BinaryVector) -> bool {
    z.len() == g.n() && g.is_maximal_independent(&z.support())
}
