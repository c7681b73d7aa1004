//! Parameter surveys and collapse diagnostics.
//!
//! Collapse is read off converged-state counts: a grid point is collapsed when
//! at most one eigenpair passes the tail filter. This is a truncation proxy for
//! a continuous spectrum, not a proof of one.

mod collapse;
mod config;
mod engine;

pub use collapse::{
    collapse_from_counts, detect_collapse, exceptional_state, refine_comb, summarize,
    CollapseEstimate, ExceptionalState, SliceSummary, MIN_SLICE_POINTS, REFERENCE_FRACTION,
    REFINED_POINTS,
};
pub use config::{
    CouplingSpec, Grid, SweepConfig, DEFAULT_EIGENPAIRS, DEFAULT_SWEEP_CUTOFF, MIN_SWEEP_CUTOFF,
};
pub use engine::{
    run_sweep, run_sweep_with_threads, threads_from_env, RowOutcome, SweepResult, SweepRow,
    THREADS_ENV,
};
