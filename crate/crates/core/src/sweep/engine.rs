use std::sync::Arc;

use rayon::prelude::*;

use super::config::SweepConfig;
use crate::error::{Error, Result};
use crate::params::ModelParams;
use crate::representation::{filtered_spectrum, Representation, RepresentationRegistry, SolveSettings};
use crate::solver::{Eigensolver, SolverRegistry};

pub const THREADS_ENV: &str = "RABI_THREADS";

/// Converged-state diagnostics at one grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct RowOutcome {
    pub converged_count: usize,
    /// Converged eigenvalues, ascending, in the representation's own frame.
    pub energies: Vec<f64>,
}

impl RowOutcome {
    pub fn collapsed(&self) -> bool {
        self.converged_count <= 1
    }

    pub fn exceptional(&self) -> bool {
        self.converged_count == 1
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub params: ModelParams,
    pub subspace: String,
    pub cutoff: usize,
    /// Solver failures are kept as messages so the table stays rectangular.
    pub outcome: std::result::Result<RowOutcome, String>,
}

impl SweepRow {
    pub fn converged_count(&self) -> Option<usize> {
        self.outcome.as_ref().ok().map(|o| o.converged_count)
    }

    pub fn collapsed(&self) -> Option<bool> {
        self.outcome.as_ref().ok().map(RowOutcome::collapsed)
    }

    pub fn exceptional(&self) -> bool {
        self.outcome.as_ref().is_ok_and(RowOutcome::exceptional)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub config: SweepConfig,
    /// Ordered by `omega0`, then `omega`, then `g2`, then subspace.
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    pub fn slice<'a>(
        &'a self,
        omega0: f64,
        omega: f64,
        subspace: &'a str,
    ) -> impl Iterator<Item = &'a SweepRow> + 'a {
        self.rows.iter().filter(move |r| {
            r.params.omega0 == omega0 && r.params.omega == omega && r.subspace == subspace
        })
    }

    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| r.outcome.is_err()).count()
    }
}

/// Worker count from `RABI_THREADS`; `None` when unset.
pub fn threads_from_env() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(Error::InvalidParameter(format!("{THREADS_ENV}: {e}"))),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(Error::InvalidParameter(format!(
                "{THREADS_ENV} must be a positive integer, got `{v}`"
            ))),
        },
    }
}

struct Task {
    params: ModelParams,
    rep: Arc<dyn Representation>,
}

pub(crate) fn settings(config: &SweepConfig) -> SolveSettings {
    SolveSettings {
        count: config.eigenpairs,
        tail_fraction: config.tail_fraction,
        tolerance: config.tolerance,
    }
}

fn tasks(config: &SweepConfig) -> Result<Vec<Task>> {
    let reps = RepresentationRegistry::default();
    let chosen = config
        .subspaces
        .iter()
        .map(|s| reps.get(s))
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for omega0 in config.omega0.points() {
        for omega in config.omega.points() {
            for g2 in config.coupling.couplings(omega) {
                let params = ModelParams::new(omega0, omega, g2)?;
                for rep in &chosen {
                    out.push(Task {
                        params,
                        rep: Arc::clone(rep),
                    });
                }
            }
        }
    }
    Ok(out)
}

fn evaluate(task: &Task, solver: &dyn Eigensolver, config: &SweepConfig) -> SweepRow {
    let outcome = filtered_spectrum(task.rep.as_ref(), solver, &task.params, config.cutoff, &settings(config))
        .map(|s| RowOutcome {
            converged_count: s.converged_count(),
            energies: s.converged_values(),
        })
        .map_err(|e| e.to_string());
    SweepRow {
        params: task.params,
        subspace: task.rep.name().to_string(),
        cutoff: config.cutoff,
        outcome,
    }
}

/// Runs the sweep on `RABI_THREADS` workers (rayon's default when unset).
pub fn run_sweep(config: &SweepConfig) -> Result<SweepResult> {
    run_sweep_with_threads(config, threads_from_env()?)
}

pub fn run_sweep_with_threads(config: &SweepConfig, threads: Option<usize>) -> Result<SweepResult> {
    config.validate()?;
    let solver = SolverRegistry::default().get(&config.solver)?;
    let tasks = tasks(config)?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    let rows = pool.install(|| {
        tasks
            .par_iter()
            .map(|t| evaluate(t, solver.as_ref(), config))
            .collect()
    });
    Ok(SweepResult {
        config: config.clone(),
        rows,
    })
}
