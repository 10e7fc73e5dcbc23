use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::init::{InitScheme, DEFAULT_ETA};
use crate::objective::GammaMode;

/// Environment variable consulted by the CLI for the worker count.
pub const WORKERS_ENV: &str = "QMIS_WORKERS";

/// Adam moment decay rates and denominator offset.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdamHyper {
    pub beta1: f64,
    pub beta2: f64,
    pub eps: f64,
}

impl Default for AdamHyper {
    fn default() -> Self {
        AdamHyper {
            beta1: 0.9,
            beta2: 0.999,
            eps: 1e-8,
        }
    }
}

/// Named hyperparameter sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    /// Dense Erdős–Rényi graphs, 700-800 nodes at p = 0.15.
    Er,
    /// Sparse graphs derived from SAT instances.
    Satlib,
    /// Uniform G(n, m) graphs at half density.
    Gnm,
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "er" => Ok(Preset::Er),
            "satlib" => Ok(Preset::Satlib),
            "gnm" => Ok(Preset::Gnm),
            other => Err(Error::InvalidConfig(format!("unknown preset `{other}`"))),
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Preset::Er => "er",
            Preset::Satlib => "satlib",
            Preset::Gnm => "gnm",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverConfig {
    pub gamma: GammaMode,
    /// Adam learning rate, constant over the run.
    pub alpha: f64,
    /// Iteration cap `T` per initialization.
    pub iterations: usize,
    /// Runs per batch `K`.
    pub batch_size: usize,
    /// Sequential batch count `B`.
    pub batches: usize,
    pub init: InitScheme,
    pub eta: f64,
    pub seed: u64,
    /// Soft wall-clock limit, checked before each batch.
    #[serde(with = "opt_secs")]
    pub time_limit: Option<Duration>,
    pub complement_term: bool,
    pub include_mean_as_first: bool,
    /// Worker threads; `None` uses the rayon default.
    pub workers: Option<usize>,
    pub adam: AdamHyper,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            gamma: GammaMode::StrictN,
            alpha: 0.5,
            iterations: 350,
            batch_size: 256,
            batches: 4,
            init: InitScheme::Random,
            eta: DEFAULT_ETA,
            seed: 0,
            time_limit: None,
            complement_term: true,
            include_mean_as_first: true,
            workers: None,
            adam: AdamHyper::default(),
        }
    }
}

impl SolverConfig {
    pub fn preset(preset: Preset) -> Self {
        let base = SolverConfig::default();
        match preset {
            Preset::Er => SolverConfig {
                gamma: GammaMode::Fixed(775.0),
                alpha: 0.6,
                iterations: 150,
                batch_size: 256,
                batches: 28,
                ..base
            },
            Preset::Satlib => SolverConfig {
                gamma: GammaMode::Fixed(775.0),
                alpha: 0.9,
                iterations: 50,
                batch_size: 128,
                batches: 40,
                ..base
            },
            Preset::Gnm => SolverConfig {
                gamma: GammaMode::StrictN,
                alpha: 0.5,
                iterations: 350,
                batch_size: 1024,
                batches: 10,
                ..base
            },
        }
    }

    /// Total number of initializations `K·B`.
    pub fn total_runs(&self) -> usize {
        self.batch_size * self.batches
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "learning rate must be positive, got {}",
                self.alpha
            )));
        }
        if self.iterations == 0 {
            return Err(Error::InvalidConfig("iterations must be >= 1".into()));
        }
        if self.batch_size == 0 || self.batches == 0 {
            return Err(Error::InvalidConfig(
                "batch size and batch count must be >= 1".into(),
            ));
        }
        if self.workers == Some(0) {
            return Err(Error::InvalidConfig("worker count must be >= 1".into()));
        }
        let a = &self.adam;
        if !(0.0..1.0).contains(&a.beta1)
            || !(0.0..1.0).contains(&a.beta2)
            || a.eps.is_nan()
            || a.eps <= 0.0
        {
            return Err(Error::InvalidConfig(format!(
                "invalid Adam parameters {a:?}"
            )));
        }
        Ok(())
    }
}

mod opt_secs {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Duration>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(d) => s.serialize_some(&d.as_secs_f64()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Duration>, D::Error> {
        let secs: Option<f64> = Option::deserialize(d)?;
        secs.map(|s| Duration::try_from_secs_f64(s).map_err(serde::de::Error::custom))
            .transpose()
    }
}
