//! The augmented quadratic objective
//!
//! ```text
//! f(x) = -e'x + (γ/2) x'A x - (1/2) x'A_c x,     x ∈ [0,1]^n
//! ```
//!
//! where `A` is the adjacency matrix of the graph and `A_c` that of its
//! complement. `A_c` is never formed; every complement quantity is expanded
//! through `A_c = ee' - I - A`:
//!
//! ```text
//! x'A_c x = (e'x)^2 - x'x - x'A x
//! A_c x   = (e'x) e - x - A x
//! ```
//!
//! so one sparse matvec with `A` and two reductions cost `O(n + m)`.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A point of the box `[0,1]^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Assignment(Vec<f64>);

impl Assignment {
    /// Rejects non-finite entries and entries outside `[0, 1]`.
    pub fn new(x: Vec<f64>) -> Result<Self> {
        if let Some((i, v)) = x
            .iter()
            .enumerate()
            .find(|(_, v)| !v.is_finite() || **v < 0.0 || **v > 1.0)
        {
            return Err(Error::ContractViolation(format!(
                "assignment coordinate {i} = {v} outside [0, 1]"
            )));
        }
        Ok(Assignment(x))
    }

    /// Clamps every coordinate into `[0, 1]`. NaN maps to 0.
    pub fn clamped(mut x: Vec<f64>) -> Self {
        for v in &mut x {
            *v = if v.is_nan() { 0.0 } else { v.clamp(0.0, 1.0) };
        }
        Assignment(x)
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub(crate) fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.0
    }
}

impl Deref for Assignment {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

/// Edges-penalty `γ` and the complement-term switch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveParams {
    gamma: f64,
    complement_term: bool,
}

impl ObjectiveParams {
    /// `γ > 1` is required with the complement term, `γ > 0` without it.
    pub fn new(gamma: f64, complement_term: bool) -> Result<Self> {
        let floor_ok = if complement_term {
            gamma > 1.0
        } else {
            gamma > 0.0
        };
        if !gamma.is_finite() || !floor_ok {
            return Err(Error::InvalidGamma(gamma));
        }
        Ok(ObjectiveParams {
            gamma,
            complement_term,
        })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn complement_term(&self) -> bool {
        self.complement_term
    }

    pub fn with_complement_term(self, enabled: bool) -> Result<Self> {
        Self::new(self.gamma, enabled)
    }

    /// Whether sign conditions of the gradient at binary points coincide
    /// exactly with maximal independence on an `n`-node graph.
    ///
    /// With the complement term this needs `γ > n - 1`; without it `γ > 1`.
    pub fn boundary_check_is_exact(&self, n: usize) -> bool {
        if self.complement_term {
            self.gamma > n as f64 - 1.0
        } else {
            self.gamma > 1.0
        }
    }
}

/// How `γ` is chosen for a graph.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GammaMode {
    /// `⌈Σ_v 1/(1+d(v))⌉ + 1`.
    WeiFloor,
    /// `γ = n`.
    StrictN,
    Fixed(f64),
}

impl FromStr for GammaMode {
    type Err = Error;

    /// Accepts `wei`, `n`, or a number.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "wei" | "wei-floor" => Ok(GammaMode::WeiFloor),
            "n" | "strict-n" => Ok(GammaMode::StrictN),
            other => other
                .parse::<f64>()
                .map(GammaMode::Fixed)
                .map_err(|_| Error::InvalidConfig(format!("unrecognized gamma mode `{other}`"))),
        }
    }
}

impl fmt::Display for GammaMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GammaMode::WeiFloor => f.write_str("wei"),
            GammaMode::StrictN => f.write_str("n"),
            GammaMode::Fixed(v) => write!(f, "{v}"),
        }
    }
}

fn check_len(g: &Graph, x: &[f64]) -> Result<()> {
    if x.len() != g.n() {
        return Err(Error::Dimension {
            expected: g.n(),
            got: x.len(),
        });
    }
    Ok(())
}

/// `x'A x` without allocating.
fn quadratic_form(g: &Graph, x: &[f64]) -> f64 {
    (0..g.n())
        .map(|v| {
            let row: f64 = g.neighbors(v).iter().map(|&u| x[u as usize]).sum();
            x[v] * row
        })
        .sum()
}

/// Objective value `f(x)`.
pub fn evaluate(g: &Graph, p: &ObjectiveParams, x: &[f64]) -> Result<f64> {
    check_len(g, x)?;
    let sum: f64 = x.iter().sum();
    let xax = quadratic_form(g, x);
    let mut f = -sum + 0.5 * p.gamma * xax;
    if p.complement_term {
        let xx: f64 = x.iter().map(|v| v * v).sum();
        f -= 0.5 * (sum * sum - xx - xax);
    }
    Ok(f)
}

/// Gradient `∇f(x)`.
pub fn gradient(g: &Graph, p: &ObjectiveParams, x: &[f64]) -> Result<Vec<f64>> {
    check_len(g, x)?;
    let mut out = vec![0.0; g.n()];
    gradient_and_value(g, p, x, &mut out);
    Ok(out)
}

/// Writes `∇f(x)` into `out` and returns `f(x)`, sharing the single matvec.
///
/// Lengths are the caller's responsibility.
pub fn gradient_and_value(g: &Graph, p: &ObjectiveParams, x: &[f64], out: &mut [f64]) -> f64 {
    g.adjacency_matvec(x, out);
    let sum: f64 = x.iter().sum();
    let mut xax = 0.0;
    let mut xx = 0.0;
    if p.complement_term {
        let scale = p.gamma + 1.0;
        for (o, &xv) in out.iter_mut().zip(x) {
            xax += xv * *o;
            xx += xv * xv;
            *o = -1.0 + scale * *o - (sum - xv);
        }
    } else {
        for (o, &xv) in out.iter_mut().zip(x) {
            xax += xv * *o;
            *o = -1.0 + p.gamma * *o;
        }
    }
    let mut f = -sum + 0.5 * p.gamma * xax;
    if p.complement_term {
        f -= 0.5 * (sum * sum - xx - xax);
    }
    f
}

/// Degree-based lower estimate of the γ threshold `k + 1`: the ceiling of
/// the Wei bound `Σ_v 1/(1+d(v)) ≤ k`, plus one.
pub fn gamma_floor_wei(g: &Graph) -> f64 {
    let wei: f64 = g.degrees().map(|d| 1.0 / (1.0 + d as f64)).sum();
    // Guard against sums such as 4.999999999 for an exact integer bound.
    (wei - 1e-9).ceil() + 1.0
}

/// Resolves a [`GammaMode`] into objective parameters with the complement
/// term enabled.
pub fn gamma_select(g: &Graph, mode: GammaMode) -> Result<ObjectiveParams> {
    let gamma = match mode {
        GammaMode::WeiFloor => gamma_floor_wei(g),
        // A single node would give γ = 1, which the objective does not admit.
        GammaMode::StrictN => (g.n() as f64).max(2.0),
        GammaMode::Fixed(v) => {
            if v.is_nan() || v <= 1.0 {
                return Err(Error::InvalidGamma(v));
            }
            v
        }
    };
    ObjectiveParams::new(gamma, true)
}
