//! Maximum independent set by projected gradient descent on a quadratic
//! relaxation.
//!
//! A graph on `n` nodes is encoded as the box-constrained objective
//!
//! ```text
//! f(x) = -Σ_v x_v + (γ/2) x'A x - (1/2) x'A_c x,    x ∈ [0,1]^n
//! ```
//!
//! (`A_c` the complement adjacency). For `γ ≥ n` every local minimizer is the
//! indicator of a maximal independent set, so many short Adam runs from
//! different starts, each stopped at the first iterate whose support is a
//! maximal independent set, give a pool of candidates of which the largest
//! is returned.
//!
//! The complement is never stored: every complement term is rewritten in
//! terms of `A`, `n` and `e'x`, so one iteration costs `O(n + m)`.

pub mod checker;
pub mod config;
pub mod error;
pub mod generate;
pub mod graph;
pub mod init;
pub mod io;
pub mod objective;
pub mod optimizer;
pub mod oracle;
pub mod report;
pub mod suite;

pub use checker::{direct_mis_check, fast_mis_check, threshold, BinaryVector};
pub use config::{AdamHyper, Preset, SolverConfig, WORKERS_ENV};
pub use error::{Error, Result};
pub use generate::{gen_er, gen_gnm, gnm_half_density_edges};
pub use graph::{Graph, NodeSet};
pub use init::{InitScheme, InitSource, InitSpec};
pub use objective::{
    evaluate, gamma_floor_wei, gamma_select, gradient, Assignment, GammaMode, ObjectiveParams,
};
pub use optimizer::{
    adam_step, run_single, solve, solve_with_restarts, AdamState, RestartOutcome, RunOutcome,
    Runner, SolveReport, TracePoint,
};
pub use oracle::{exact_mis, greedy_min_degree, OracleResult};
pub use report::{write_report, ReportDocument, ReportFormat};
pub use suite::{bench_suite, summary_table, SuiteSpec, SuiteSummary};
