//! Serialized solve reports.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::config::SolverConfig;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::optimizer::SolveReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    /// Convergence trace only, columns `elapsed_ms,best_size`.
    Csv,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(Error::InvalidConfig(format!(
                "unknown report format `{other}`"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceMeta {
    pub n: usize,
    pub m: usize,
    pub source: String,
    pub seed: Option<u64>,
}

impl InstanceMeta {
    pub fn new(g: &Graph, source: impl Into<String>, seed: Option<u64>) -> Self {
        InstanceMeta {
            n: g.n(),
            m: g.m(),
            source: source.into(),
            seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub gamma: f64,
    pub alpha: f64,
    pub iterations: usize,
    pub batch_size: usize,
    pub batches: usize,
    pub scheme: String,
    pub eta: f64,
    pub seed: u64,
    pub complement_term: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub elapsed_ms: f64,
    pub best_size: usize,
}

/// Field order is fixed so that reports diff cleanly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub instance: InstanceMeta,
    pub config: ConfigEcho,
    pub best_set: Vec<usize>,
    pub best_size: usize,
    pub mis_found_count: usize,
    pub runs_completed: usize,
    pub runs_failed: usize,
    pub timed_out: bool,
    pub wall_time_ms: f64,
    pub trace: Vec<TraceRow>,
}

impl ReportDocument {
    pub fn new(instance: InstanceMeta, cfg: &SolverConfig, report: &SolveReport) -> Self {
        ReportDocument {
            instance,
            config: ConfigEcho {
                gamma: report.params.gamma(),
                alpha: cfg.alpha,
                iterations: cfg.iterations,
                batch_size: cfg.batch_size,
                batches: cfg.batches,
                scheme: cfg.init.name().to_string(),
                eta: cfg.eta,
                seed: cfg.seed,
                complement_term: cfg.complement_term,
            },
            best_set: report.best.as_slice().to_vec(),
            best_size: report.best.len(),
            mis_found_count: report.mis_found,
            runs_completed: report.runs_completed,
            runs_failed: report.runs_failed,
            timed_out: report.timed_out,
            wall_time_ms: report.elapsed.as_secs_f64() * 1e3,
            trace: report
                .trace
                .iter()
                .map(|t| TraceRow {
                    elapsed_ms: t.elapsed_ms,
                    best_size: t.best_size,
                })
                .collect(),
        }
    }
}

pub fn write_report(doc: &ReportDocument, format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Json => serde_json::to_string_pretty(doc)
            .map(|s| s + "\n")
            .map_err(|e| Error::Io(e.to_string())),
        ReportFormat::Csv => trace_csv(&doc.trace),
    }
}

pub fn trace_csv(rows: &[TraceRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).map_err(|e| Error::Io(e.to_string()))?;
    }
    if rows.is_empty() {
        w.write_record(["elapsed_ms", "best_size"])
            .map_err(|e| Error::Io(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}
