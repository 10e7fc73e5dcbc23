//! Starting points for the batched runs.
//!
//! Every initialization is a pure function of `(seed, index)`: the index
//! selects an independent ChaCha stream, so the `k`-th start is the same no
//! matter how many starts are drawn or which worker draws it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::objective::Assignment;

/// Exploration variance used with degree and external-mean starts.
pub const DEFAULT_ETA: f64 = 2.25;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InitScheme {
    /// Coordinates i.i.d. uniform on `[0, 1]`.
    Random,
    /// Gaussian around the normalized degree mean.
    Degree,
    /// Gaussian around a caller-supplied mean, e.g. a relaxation solution.
    ExternalMean(Vec<f64>),
}

impl InitScheme {
    pub fn name(&self) -> &'static str {
        match self {
            InitScheme::Random => "random",
            InitScheme::Degree => "degree",
            InitScheme::ExternalMean(_) => "external-mean",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InitSpec {
    pub scheme: InitScheme,
    /// Per-coordinate variance of the Gaussian schemes.
    pub eta: f64,
    pub seed: u64,
    pub count: usize,
    /// Gaussian schemes only: start 0 is the clamped mean itself.
    pub include_mean_as_first: bool,
}

impl InitSpec {
    pub fn new(scheme: InitScheme, seed: u64, count: usize) -> Self {
        InitSpec {
            scheme,
            eta: DEFAULT_ETA,
            seed,
            count,
            include_mean_as_first: true,
        }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if !self.eta.is_finite() || self.eta < 0.0 {
            return Err(Error::InvalidConfig(format!(
                "eta must be a finite value >= 0, got {}",
                self.eta
            )));
        }
        if self.count == 0 {
            return Err(Error::InvalidConfig(
                "initialization count must be >= 1".into(),
            ));
        }
        if let InitScheme::ExternalMean(mean) = &self.scheme {
            if mean.len() != n {
                return Err(Error::Dimension {
                    expected: n,
                    got: mean.len(),
                });
            }
            if mean.iter().any(|v| !(0.0..=1.0).contains(v)) {
                return Err(Error::InvalidConfig(
                    "external mean entries must lie in [0, 1]".into(),
                ));
            }
        }
        Ok(())
    }
}

/// Why the degree mean fell back to a constant vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegenerateDegreeMean {
    /// No edges: all-ones mean.
    Edgeless,
    /// All degrees equal `Δ(G)`: the mean is `0.5·e`.
    Regular,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DegreeMean {
    pub mean: Vec<f64>,
    pub note: Option<DegenerateDegreeMean>,
}

fn stream(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// The `index`-th uniform start.
pub fn random_start(n: usize, seed: u64, index: usize) -> Assignment {
    let mut rng = stream(seed, index);
    Assignment::clamped((0..n).map(|_| rng.random::<f64>()).collect())
}

pub fn random_init(n: usize, spec: &InitSpec) -> Vec<Assignment> {
    (0..spec.count)
        .map(|k| random_start(n, spec.seed, k))
        .collect()
}

/// `g_v = 1 - d(v)/Δ(G)`, then normalized so that `max_v g_v = 1`.
pub fn degree_mean(g: &Graph) -> DegreeMean {
    let n = g.n();
    let delta = g.max_degree();
    if delta == 0 {
        return DegreeMean {
            mean: vec![1.0; n],
            note: Some(DegenerateDegreeMean::Edgeless),
        };
    }
    let raw: Vec<f64> = g.degrees().map(|d| 1.0 - d as f64 / delta as f64).collect();
    let peak = raw.iter().copied().fold(0.0, f64::max);
    if peak <= 0.0 {
        return DegreeMean {
            mean: vec![0.5; n],
            note: Some(DegenerateDegreeMean::Regular),
        };
    }
    DegreeMean {
        mean: raw.into_iter().map(|v| v / peak).collect(),
        note: None,
    }
}

/// The `index`-th sample of `N(mean, η I)` clamped to the box.
pub fn gaussian_start(mean: &[f64], eta: f64, seed: u64, index: usize) -> Assignment {
    Assignment::clamped(gaussian_unclamped(mean, eta, seed, index))
}

fn gaussian_unclamped(mean: &[f64], eta: f64, seed: u64, index: usize) -> Vec<f64> {
    let sd = eta.sqrt();
    if sd == 0.0 {
        return mean.to_vec();
    }
    let normal = Normal::new(0.0, sd).expect("finite non-negative deviation");
    let mut rng = stream(seed, index);
    mean.iter()
        .map(|&mu| mu + normal.sample(&mut rng))
        .collect()
}

pub fn gaussian_around_mean(mean: &[f64], spec: &InitSpec) -> Vec<Assignment> {
    (0..spec.count)
        .map(|k| gaussian_member(mean, spec, k))
        .collect()
}

fn gaussian_member(mean: &[f64], spec: &InitSpec, index: usize) -> Assignment {
    if spec.include_mean_as_first && index == 0 {
        Assignment::clamped(mean.to_vec())
    } else {
        gaussian_start(mean, spec.eta, spec.seed, index)
    }
}

/// Lazily produces starts for one graph without holding the whole set.
#[derive(Debug, Clone)]
pub struct InitSource {
    n: usize,
    spec: InitSpec,
    mean: Option<Vec<f64>>,
    note: Option<DegenerateDegreeMean>,
}

impl InitSource {
    pub fn new(g: &Graph, spec: InitSpec) -> Result<Self> {
        spec.validate(g.n())?;
        let (mean, note) = match &spec.scheme {
            InitScheme::Random => (None, None),
            InitScheme::Degree => {
                let dm = degree_mean(g);
                (Some(dm.mean), dm.note)
            }
            InitScheme::ExternalMean(m) => (Some(m.clone()), None),
        };
        Ok(InitSource {
            n: g.n(),
            spec,
            mean,
            note,
        })
    }

    pub fn len(&self) -> usize {
        self.spec.count
    }

    pub fn is_empty(&self) -> bool {
        self.spec.count == 0
    }

    pub fn note(&self) -> Option<DegenerateDegreeMean> {
        self.note
    }

    pub fn start(&self, index: usize) -> Assignment {
        match &self.mean {
            None => random_start(self.n, self.spec.seed, index),
            Some(mean) => gaussian_member(mean, &self.spec, index),
        }
    }

    pub fn all(&self) -> Vec<Assignment> {
        (0..self.spec.count).map(|k| self.start(k)).collect()
    }
}
