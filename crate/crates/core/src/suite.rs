//! Benchmark suites: a list of instances solved with one configuration.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{Preset, SolverConfig};
use crate::error::{Error, Result};
use crate::generate::{gen_er, gen_gnm, gnm_half_density_edges};
use crate::graph::Graph;
use crate::io::{read_graph, GraphFormat};
use crate::optimizer::solve;
use crate::oracle::{exact_mis, greedy_min_degree, ORACLE_CAP};
use crate::report::{InstanceMeta, ReportDocument};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum InstanceSpec {
    Er {
        n: usize,
        p: f64,
        seed: u64,
    },
    /// `m` defaults to `⌈n(n-1)/4⌉`.
    Gnm {
        n: usize,
        m: Option<usize>,
        seed: u64,
    },
    File {
        path: PathBuf,
        /// `dimacs` or `edges`; inferred from the extension when absent.
        format: Option<String>,
    },
}

impl InstanceSpec {
    pub fn label(&self) -> String {
        match self {
            InstanceSpec::Er { n, p, seed } => format!("er({n},{p})#{seed}"),
            InstanceSpec::Gnm { n, m, seed } => {
                format!(
                    "gnm({n},{})#{seed}",
                    m.unwrap_or_else(|| gnm_half_density_edges(*n))
                )
            }
            InstanceSpec::File { path, .. } => path.display().to_string(),
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            InstanceSpec::Er { seed, .. } | InstanceSpec::Gnm { seed, .. } => Some(*seed),
            InstanceSpec::File { .. } => None,
        }
    }

    pub fn load(&self) -> Result<Graph> {
        match self {
            InstanceSpec::Er { n, p, seed } => gen_er(*n, *p, *seed),
            InstanceSpec::Gnm { n, m, seed } => {
                gen_gnm(*n, m.unwrap_or_else(|| gnm_half_density_edges(*n)), *seed)
            }
            InstanceSpec::File { path, format } => {
                let format = match format.as_deref() {
                    None => None,
                    Some("dimacs") => Some(GraphFormat::Dimacs),
                    Some("edges" | "edge-list") => Some(GraphFormat::EdgeList),
                    Some(other) => {
                        return Err(Error::InvalidConfig(format!(
                            "unknown graph format `{other}`"
                        )))
                    }
                };
                read_graph(path, format)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct SuiteSpec {
    pub instances: Vec<InstanceSpec>,
    /// Starting point for `config` when it is absent.
    pub preset: Option<Preset>,
    pub config: Option<SolverConfig>,
    /// Per-instance soft limit, overriding the configuration's.
    pub time_limit_secs: Option<f64>,
    /// Solve instances concurrently instead of one after another.
    pub parallel_instances: bool,
    /// Also compute exact optima for instances the oracle can handle.
    pub verify_with_oracle: bool,
}

impl SuiteSpec {
    pub fn effective_config(&self) -> Result<SolverConfig> {
        let mut cfg = match (&self.config, self.preset) {
            (Some(c), _) => c.clone(),
            (None, Some(p)) => SolverConfig::preset(p),
            (None, None) => SolverConfig::default(),
        };
        if let Some(secs) = self.time_limit_secs {
            cfg.time_limit = Some(
                Duration::try_from_secs_f64(secs)
                    .map_err(|e| Error::InvalidConfig(format!("time limit: {e}")))?,
            );
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceResult {
    pub label: String,
    pub report: Option<ReportDocument>,
    pub greedy_size: Option<usize>,
    pub oracle_optimum: Option<usize>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub instances: Vec<InstanceResult>,
    pub completed: usize,
    pub failed: usize,
    /// Sum of best sizes over completed instances.
    pub best_size_total: usize,
    /// `best_size_total / completed`; absent for an empty suite.
    pub mean_best_size: Option<f64>,
    /// Sum of per-instance wall times, as if run sequentially.
    pub total_wall_ms: f64,
    pub elapsed_ms: f64,
}

fn run_instance(spec: &InstanceSpec, cfg: &SolverConfig, verify: bool) -> InstanceResult {
    let label = spec.label();
    let attempt = || -> Result<(ReportDocument, usize, Option<usize>)> {
        let g = spec.load()?;
        let report = solve(&g, cfg)?;
        let doc = ReportDocument::new(
            InstanceMeta::new(&g, label.clone(), spec.seed()),
            cfg,
            &report,
        );
        let greedy = greedy_min_degree(&g).len();
        let optimum = if verify && g.n() <= ORACLE_CAP {
            Some(exact_mis(&g, false)?.optimum_size)
        } else {
            None
        };
        Ok((doc, greedy, optimum))
    };
    match attempt() {
        Ok((doc, greedy, optimum)) => InstanceResult {
            label,
            report: Some(doc),
            greedy_size: Some(greedy),
            oracle_optimum: optimum,
            error: None,
        },
        Err(e) => InstanceResult {
            label,
            report: None,
            greedy_size: None,
            oracle_optimum: None,
            error: Some(e.to_string()),
        },
    }
}

/// Solves every instance of the suite. Per-instance failures are recorded
/// and do not stop the suite.
pub fn bench_suite(spec: &SuiteSpec) -> Result<SuiteSummary> {
    let cfg = spec.effective_config()?;
    let start = Instant::now();
    let instances: Vec<InstanceResult> = if spec.parallel_instances {
        spec.instances
            .par_iter()
            .map(|i| run_instance(i, &cfg, spec.verify_with_oracle))
            .collect()
    } else {
        spec.instances
            .iter()
            .map(|i| run_instance(i, &cfg, spec.verify_with_oracle))
            .collect()
    };
    let done: Vec<&ReportDocument> = instances.iter().filter_map(|r| r.report.as_ref()).collect();
    let best_size_total: usize = done.iter().map(|d| d.best_size).sum();
    Ok(SuiteSummary {
        completed: done.len(),
        failed: instances.len() - done.len(),
        best_size_total,
        mean_best_size: (!done.is_empty()).then(|| best_size_total as f64 / done.len() as f64),
        total_wall_ms: done.iter().map(|d| d.wall_time_ms).sum(),
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        instances,
    })
}

/// Plain-text table with one row per instance and a summary row.
pub fn summary_table(s: &SuiteSummary) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<28} {:>6} {:>8} {:>6} {:>7} {:>7} {:>11}",
        "instance", "n", "m", "best", "greedy", "optimum", "time_ms"
    );
    let dash = |o: Option<usize>| o.map_or_else(|| "-".to_string(), |v| v.to_string());
    for r in &s.instances {
        match &r.report {
            Some(d) => {
                let _ = writeln!(
                    out,
                    "{:<28} {:>6} {:>8} {:>6} {:>7} {:>7} {:>11.1}",
                    r.label,
                    d.instance.n,
                    d.instance.m,
                    d.best_size,
                    dash(r.greedy_size),
                    dash(r.oracle_optimum),
                    d.wall_time_ms
                );
            }
            None => {
                let _ = writeln!(
                    out,
                    "{:<28} error: {}",
                    r.label,
                    r.error.as_deref().unwrap_or("unknown")
                );
            }
        }
    }
    let mean = s
        .mean_best_size
        .map_or_else(|| "-".to_string(), |m| format!("{m:.2}"));
    let _ = writeln!(
        out,
        "{:<28} {:>6} {:>8} {:>6} {:>7} {:>7} {:>11.1}",
        format!("mean of {}", s.completed),
        "",
        "",
        mean,
        "",
        "",
        s.total_wall_ms
    );
    out
}
