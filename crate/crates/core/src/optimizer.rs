//! Batched projected Adam over many starting points.
//!
//! Each run takes Adam steps on the objective, clamps the iterate back into
//! the box, and after every step tests whether the support `{v : x_v > 0}`
//! is a maximal independent set. A run stops at its first hit. Runs are
//! grouped into batches of `K` that execute in parallel; batches run one
//! after another so that a time limit can stop the search between them.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::checker::{boundary_fixed_point, support_of, threshold_into};
use crate::config::{AdamHyper, SolverConfig};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeSet};
use crate::init::{random_start, DegenerateDegreeMean, InitSource, InitSpec};
use crate::objective::{gamma_select, gradient_and_value, Assignment, ObjectiveParams};

/// First and second moment estimates of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct AdamState {
    pub m1: Vec<f64>,
    pub m2: Vec<f64>,
    pub step: u64,
}

impl AdamState {
    pub fn new(n: usize) -> Self {
        AdamState {
            m1: vec![0.0; n],
            m2: vec![0.0; n],
            step: 0,
        }
    }

    fn reset(&mut self) {
        self.m1.fill(0.0);
        self.m2.fill(0.0);
        self.step = 0;
    }
}

/// One bias-corrected Adam update followed by projection onto `[0,1]^n`.
///
/// `grad` is scratch space of length `n`. Returns `f(x)` at the point the
/// gradient was taken.
fn projected_adam_step(
    g: &Graph,
    p: &ObjectiveParams,
    hyper: &AdamHyper,
    alpha: f64,
    x: &mut [f64],
    st: &mut AdamState,
    grad: &mut [f64],
) -> Result<f64> {
    let value = gradient_and_value(g, p, x, grad);
    if !value.is_finite() || grad.iter().any(|d| !d.is_finite()) {
        return Err(Error::Numerical {
            iteration: st.step as usize + 1,
        });
    }
    st.step += 1;
    let t = st.step as i32;
    let bc1 = 1.0 - hyper.beta1.powi(t);
    let bc2 = 1.0 - hyper.beta2.powi(t);
    let (b1, b2) = (hyper.beta1, hyper.beta2);
    for (((xv, &d), m1), m2) in x
        .iter_mut()
        .zip(grad.iter())
        .zip(st.m1.iter_mut())
        .zip(st.m2.iter_mut())
    {
        *m1 = b1 * *m1 + (1.0 - b1) * d;
        *m2 = b2 * *m2 + (1.0 - b2) * d * d;
        let m_hat = *m1 / bc1;
        let v_hat = *m2 / bc2;
        *xv = (*xv - alpha * m_hat / (v_hat.sqrt() + hyper.eps)).clamp(0.0, 1.0);
    }
    Ok(value)
}

/// Single projected Adam step with default moment parameters.
///
/// Updates `x` and `st` in place and returns the objective value at the
/// pre-step point.
pub fn adam_step(
    g: &Graph,
    p: &ObjectiveParams,
    x: &mut Assignment,
    st: &mut AdamState,
    alpha: f64,
) -> Result<f64> {
    if x.len() != g.n() || st.m1.len() != g.n() || st.m2.len() != g.n() {
        return Err(Error::Dimension {
            expected: g.n(),
            got: x.len(),
        });
    }
    if alpha.is_nan() || alpha <= 0.0 {
        return Err(Error::InvalidConfig(format!(
            "learning rate {alpha} must be positive"
        )));
    }
    let mut grad = vec![0.0; g.n()];
    projected_adam_step(
        g,
        p,
        &AdamHyper::default(),
        alpha,
        x.as_mut_slice(),
        st,
        &mut grad,
    )
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    /// Maximal independent set reached, if any.
    pub found: Option<NodeSet>,
    pub iterations_used: usize,
    /// `(t, f(x[t]))` for each iterate whose gradient was taken.
    pub trace: Vec<(usize, f64)>,
}

/// Reusable per-worker state for repeated runs on one graph.
#[derive(Debug)]
pub struct Runner<'g> {
    graph: &'g Graph,
    params: ObjectiveParams,
    hyper: AdamHyper,
    alpha: f64,
    exact_check: bool,
    state: AdamState,
    grad: Vec<f64>,
    z: Vec<u8>,
}

impl<'g> Runner<'g> {
    pub fn new(graph: &'g Graph, params: ObjectiveParams, alpha: f64, hyper: AdamHyper) -> Self {
        let n = graph.n();
        Runner {
            graph,
            params,
            hyper,
            alpha,
            exact_check: params.boundary_check_is_exact(n),
            state: AdamState::new(n),
            grad: vec![0.0; n],
            z: vec![0; n],
        }
    }

    /// Whether the thresholded support of `x` is a maximal independent set.
    ///
    /// Uses the gradient fixed-point test where it is exact for the current
    /// `γ`, and the adjacency walk otherwise.
    fn support_is_mis(&mut self, x: &[f64]) -> bool {
        threshold_into(x, &mut self.z);
        if self.exact_check {
            boundary_fixed_point(self.graph, &self.params, &self.z)
        } else {
            self.graph.is_maximal_independent(&support_of(&self.z))
        }
    }

    /// Runs up to `iterations` steps from `x0`.
    pub fn run(
        &mut self,
        x0: Assignment,
        iterations: usize,
        record_trace: bool,
    ) -> Result<RunOutcome> {
        let mut x = x0.into_vec();
        if x.len() != self.graph.n() {
            return Err(Error::Dimension {
                expected: self.graph.n(),
                got: x.len(),
            });
        }
        self.state.reset();
        let mut trace = Vec::new();
        for t in 1..=iterations {
            let value = projected_adam_step(
                self.graph,
                &self.params,
                &self.hyper,
                self.alpha,
                &mut x,
                &mut self.state,
                &mut self.grad,
            )?;
            if record_trace {
                trace.push((t - 1, value));
            }
            if self.support_is_mis(&x) {
                return Ok(RunOutcome {
                    found: Some(support_of(&self.z)),
                    iterations_used: t,
                    trace,
                });
            }
        }
        Ok(RunOutcome {
            found: None,
            iterations_used: iterations,
            trace,
        })
    }
}

/// Runs projected Adam from `x0` for at most `iterations` steps, stopping at
/// the first iterate whose support is a maximal independent set.
pub fn run_single(
    g: &Graph,
    p: &ObjectiveParams,
    x0: Assignment,
    iterations: usize,
    alpha: f64,
) -> Result<RunOutcome> {
    if iterations == 0 {
        return Err(Error::InvalidConfig("iterations must be >= 1".into()));
    }
    if alpha.is_nan() || alpha <= 0.0 {
        return Err(Error::InvalidConfig(format!(
            "learning rate {alpha} must be positive"
        )));
    }
    Runner::new(g, *p, alpha, AdamHyper::default()).run(x0, iterations, true)
}

/// Best-so-far snapshot taken after each batch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub batch: usize,
    /// Adam iterations summed over all runs so far.
    pub iterations: u64,
    pub elapsed_ms: f64,
    pub best_size: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub params: ObjectiveParams,
    /// Largest maximal independent set found; empty if none.
    pub best: NodeSet,
    /// Initialization index that produced `best`.
    pub best_index: Option<usize>,
    /// Runs that ended on a maximal independent set.
    pub mis_found: usize,
    pub runs_completed: usize,
    pub runs_failed: usize,
    pub failures: Vec<(usize, Error)>,
    pub total_iterations: u64,
    pub batches_completed: usize,
    pub timed_out: bool,
    pub elapsed: Duration,
    pub trace: Vec<TracePoint>,
    pub workers: usize,
    pub init_note: Option<DegenerateDegreeMean>,
}

impl SolveReport {
    pub fn best_size(&self) -> usize {
        self.best.len()
    }
}

/// Objective parameters for a configuration on a particular graph.
pub fn resolve_params(g: &Graph, cfg: &SolverConfig) -> Result<ObjectiveParams> {
    let gamma = gamma_select(g, cfg.gamma)?.gamma();
    ObjectiveParams::new(gamma, cfg.complement_term)
}

/// Runs all `K·B` initializations and returns the largest set found.
///
/// Ties go to the lowest initialization index, so the result does not depend
/// on the worker count unless a time limit cuts the search short.
pub fn solve(g: &Graph, cfg: &SolverConfig) -> Result<SolveReport> {
    cfg.validate()?;
    let params = resolve_params(g, cfg)?;
    let spec = InitSpec {
        scheme: cfg.init.clone(),
        eta: cfg.eta,
        seed: cfg.seed,
        count: cfg.total_runs(),
        include_mean_as_first: cfg.include_mean_as_first,
    };
    let source = InitSource::new(g, spec)?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = cfg.workers {
        builder = builder.num_threads(w);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::InvalidConfig(format!("cannot start worker pool: {e}")))?;

    let start = Instant::now();
    let mut report = SolveReport {
        params,
        best: NodeSet::new(),
        best_index: None,
        mis_found: 0,
        runs_completed: 0,
        runs_failed: 0,
        failures: Vec::new(),
        total_iterations: 0,
        batches_completed: 0,
        timed_out: false,
        elapsed: Duration::ZERO,
        trace: Vec::with_capacity(cfg.batches),
        workers: pool.current_num_threads(),
        init_note: source.note(),
    };

    for batch in 0..cfg.batches {
        if let Some(limit) = cfg.time_limit {
            if start.elapsed() >= limit {
                report.timed_out = true;
                break;
            }
        }
        let first = batch * cfg.batch_size;
        let outcomes: Vec<Result<RunOutcome>> = pool.install(|| {
            (first..first + cfg.batch_size)
                .into_par_iter()
                .map_init(
                    || Runner::new(g, params, cfg.alpha, cfg.adam),
                    |runner, k| runner.run(source.start(k), cfg.iterations, false),
                )
                .collect()
        });
        for (k, outcome) in (first..).zip(outcomes) {
            match outcome {
                Ok(run) => {
                    report.runs_completed += 1;
                    report.total_iterations += run.iterations_used as u64;
                    if let Some(set) = run.found {
                        report.mis_found += 1;
                        if report.best_index.is_none() || set.len() > report.best.len() {
                            report.best = set;
                            report.best_index = Some(k);
                        }
                    }
                }
                Err(e) => {
                    report.runs_failed += 1;
                    report.failures.push((k, e));
                }
            }
        }
        report.batches_completed += 1;
        report.trace.push(TracePoint {
            batch,
            iterations: report.total_iterations,
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
            best_size: report.best.len(),
        });
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RestartOutcome {
    /// Number of runs that ended on a maximal independent set.
    pub found_count: usize,
    pub best: NodeSet,
    pub iterations_used: usize,
    /// `(global iteration, best size so far)` at every hit.
    pub trace: Vec<(usize, usize)>,
}

/// Spends a fixed Adam-iteration budget on consecutive uniform restarts: each
/// time a run reaches a maximal independent set, a fresh start is drawn and
/// the optimizer state is reset.
pub fn solve_with_restarts(
    g: &Graph,
    p: &ObjectiveParams,
    alpha: f64,
    budget: usize,
    seed: u64,
) -> Result<RestartOutcome> {
    if alpha.is_nan() || alpha <= 0.0 {
        return Err(Error::InvalidConfig(format!(
            "learning rate {alpha} must be positive"
        )));
    }
    let mut runner = Runner::new(g, *p, alpha, AdamHyper::default());
    let mut out = RestartOutcome {
        found_count: 0,
        best: NodeSet::new(),
        iterations_used: 0,
        trace: Vec::new(),
    };
    let mut restart = 0;
    while out.iterations_used < budget {
        let x0 = random_start(g.n(), seed, restart);
        let run = runner.run(x0, budget - out.iterations_used, false)?;
        out.iterations_used += run.iterations_used;
        if let Some(set) = run.found {
            out.found_count += 1;
            if set.len() > out.best.len() {
                out.best = set;
            }
            out.trace.push((out.iterations_used, out.best.len()));
        }
        restart += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::figure_one;
    use crate::init::InitScheme;

    fn params(gamma: f64) -> ObjectiveParams {
        ObjectiveParams::new(gamma, true).unwrap()
    }

    #[test]
    fn maximal_indicator_is_a_fixed_point_of_one_step() {
        let g = figure_one();
        for set in [[0usize, 3, 4].as_slice(), &[2, 3, 4], &[1, 2]] {
            let s: NodeSet = set.iter().copied().collect();
            let mut x = Assignment::new(s.indicator(5)).unwrap();
            let before = x.clone();
            let mut st = AdamState::new(5);
            adam_step(&g, &params(5.0), &mut x, &mut st, 0.5).unwrap();
            assert_eq!(x, before);
            assert_eq!(st.step, 1);
        }
    }

    #[test]
    fn zero_gradient_leaves_coordinate_unchanged() {
        // Edge (0,1) plus isolated node 2 with γ = 3 at x = ½e:
        // ∂f/∂x_0 = -1 + 3·½ - ½ = 0, same for x_1, and ∂f/∂x_2 = -2.
        let g = Graph::from_edge_list(3, [(0, 1)]).unwrap();
        let p = params(3.0);
        let mut x = Assignment::new(vec![0.5; 3]).unwrap();
        let grad = crate::objective::gradient(&g, &p, &x).unwrap();
        assert_eq!(grad, vec![0.0, 0.0, -2.0]);
        let mut st = AdamState::new(3);
        adam_step(&g, &p, &mut x, &mut st, 0.1).unwrap();
        assert_eq!(x[0], 0.5);
        assert_eq!(x[1], 0.5);
        assert!(x[2] > 0.5);
    }

    #[test]
    fn single_node_hand_trace() {
        // Constant gradient -1: m̂ = -1 and v̂ = 1 every step, so each step
        // moves by α/(1 + ε) until the clamp at 1.
        let g = Graph::empty(1);
        let p = params(2.0);
        let alpha = 0.05;
        let mut x = Assignment::new(vec![0.3]).unwrap();
        let mut st = AdamState::new(1);
        let mut expected = 0.3;
        for _ in 0..10 {
            let prev = x[0];
            adam_step(&g, &p, &mut x, &mut st, alpha).unwrap();
            expected = f64::min(expected + alpha / (1.0 + 1e-8), 1.0);
            assert!((x[0] - expected).abs() < 1e-12);
            assert!(x[0] >= prev);
        }
        for _ in 0..20 {
            adam_step(&g, &p, &mut x, &mut st, alpha).unwrap();
        }
        assert_eq!(x[0], 1.0);
    }

    #[test]
    fn adam_step_rejects_mismatched_state() {
        let g = figure_one();
        let mut x = Assignment::new(vec![0.5; 5]).unwrap();
        let mut st = AdamState::new(4);
        assert!(adam_step(&g, &params(5.0), &mut x, &mut st, 0.1).is_err());
    }

    #[test]
    fn empty_graph_run_selects_everything() {
        let g = Graph::empty(4);
        let x0 = Assignment::new(vec![0.1, 0.9, 0.4, 0.0]).unwrap();
        let out = run_single(&g, &params(4.0), x0, 50, 0.3).unwrap();
        assert_eq!(out.found.unwrap().as_slice(), &[0, 1, 2, 3]);
        assert!(out.iterations_used <= 5);
    }

    #[test]
    fn complete_graph_runs_end_on_singletons() {
        let g = Graph::complete(4);
        for seed in 0..20 {
            let x0 = random_start(4, seed, 0);
            let out = run_single(&g, &params(4.0), x0, 500, 0.1).unwrap();
            let found = out.found.expect("a maximal set within budget");
            assert_eq!(found.len(), 1, "seed {seed}");
        }
    }

    #[test]
    fn maximum_indicator_stops_at_first_step() {
        let g = figure_one();
        let s: NodeSet = [0, 3, 4].into_iter().collect();
        let x0 = Assignment::new(s.indicator(5)).unwrap();
        let out = run_single(&g, &params(6.0), x0, 10, 0.5).unwrap();
        assert_eq!(out.found, Some(s));
        assert_eq!(out.iterations_used, 1);
        assert_eq!(out.trace, vec![(0, -6.0)]);
    }

    #[test]
    fn run_single_validates_inputs() {
        let g = figure_one();
        let x0 = Assignment::new(vec![0.5; 5]).unwrap();
        assert!(run_single(&g, &params(5.0), x0.clone(), 0, 0.5).is_err());
        assert!(run_single(&g, &params(5.0), x0, 5, 0.0).is_err());
        let short = Assignment::new(vec![0.5; 3]).unwrap();
        assert!(run_single(&g, &params(5.0), short, 5, 0.5).is_err());
    }

    #[test]
    fn non_finite_gradient_is_reported() {
        let g = figure_one();
        let mut x = vec![0.5; 5];
        x[2] = f64::INFINITY;
        let mut st = AdamState::new(5);
        let mut grad = vec![0.0; 5];
        let err = projected_adam_step(
            &g,
            &params(5.0),
            &AdamHyper::default(),
            0.5,
            &mut x,
            &mut st,
            &mut grad,
        );
        assert_eq!(err, Err(Error::Numerical { iteration: 1 }));
    }

    #[test]
    fn figure_one_solve_reaches_optimum() {
        let g = figure_one();
        let cfg = SolverConfig {
            gamma: crate::objective::GammaMode::StrictN,
            batch_size: 8,
            batches: 2,
            iterations: 50,
            alpha: 0.5,
            seed: 1,
            ..SolverConfig::default()
        };
        let report = solve(&g, &cfg).unwrap();
        assert_eq!(report.best_size(), 3);
        assert!(g.is_maximal_independent(&report.best));
        assert_eq!(report.trace.len(), 2);
        assert_eq!(report.runs_completed, 16);
    }

    #[test]
    fn solve_returns_supplied_maximal_set() {
        let g = figure_one();
        let s: NodeSet = [1, 2].into_iter().collect();
        let cfg = SolverConfig {
            init: InitScheme::ExternalMean(s.indicator(5)),
            iterations: 1,
            batch_size: 1,
            batches: 1,
            ..SolverConfig::default()
        };
        let report = solve(&g, &cfg).unwrap();
        assert_eq!(report.best, s);
        assert_eq!(report.best_index, Some(0));
        assert_eq!(report.mis_found, 1);
    }

    #[test]
    fn expired_time_limit_launches_nothing() {
        let g = figure_one();
        let cfg = SolverConfig {
            time_limit: Some(Duration::ZERO),
            ..SolverConfig::default()
        };
        let report = solve(&g, &cfg).unwrap();
        assert!(report.timed_out);
        assert_eq!(report.runs_completed, 0);
        assert!(report.best.is_empty());
        assert_eq!(report.best_index, None);
    }

    #[test]
    fn restarts_consume_exact_budget() {
        let g = figure_one();
        let out = solve_with_restarts(&g, &params(5.0), 0.5, 200, 3).unwrap();
        assert_eq!(out.iterations_used, 200);
        assert!(out.found_count > 0);
        assert_eq!(out.best.len(), 3);
        assert!(out.trace.windows(2).all(|w| w[0].1 <= w[1].1));
    }

    #[test]
    fn small_gamma_uses_direct_check() {
        // γ = 1.5 is far below n, where the fixed-point test could accept a
        // set with an edge. Every reported set must still be maximal.
        let g = Graph::from_edge_list(6, [(0, 1), (2, 3)]).unwrap();
        let p = params(1.5);
        for seed in 0..10 {
            let out = run_single(&g, &p, random_start(6, seed, 0), 300, 0.2).unwrap();
            if let Some(s) = out.found {
                assert!(g.is_maximal_independent(&s));
            }
        }
    }
}
