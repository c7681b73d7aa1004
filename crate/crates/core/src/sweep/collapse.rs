use super::config::{CouplingSpec, Grid, SweepConfig};
use super::engine::{settings, SweepResult, SweepRow};
use crate::error::{Error, Result};
use crate::representation::{filtered_spectrum, RepresentationRegistry, SolveSettings};
use crate::solver::{EigenPair, SolverRegistry};

pub const MIN_SLICE_POINTS: usize = 10;
pub const REFINED_POINTS: usize = 200;
pub const REFINED_SPAN: (f64, f64) = (0.98, 1.02);
pub const REFERENCE_FRACTION: f64 = 0.98;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CollapseEstimate {
    /// First coupling with at most one converged state; the transition lies in
    /// `(coupling - step, coupling]`.
    Collapsed { coupling: f64, step: f64 },
    NoCollapse,
}

impl CollapseEstimate {
    pub fn coupling(&self) -> Option<f64> {
        match *self {
            CollapseEstimate::Collapsed { coupling, .. } => Some(coupling),
            CollapseEstimate::NoCollapse => None,
        }
    }
}

/// Collapse point of `(coupling, converged_count)` pairs on an increasing comb.
pub fn collapse_from_counts(points: &[(f64, usize)]) -> Result<CollapseEstimate> {
    if points.len() < MIN_SLICE_POINTS {
        return Err(Error::Rejected(format!(
            "slice has {} points, need at least {MIN_SLICE_POINTS}",
            points.len()
        )));
    }
    if points.windows(2).any(|w| !(w[1].0 > w[0].0)) {
        return Err(Error::Rejected("coupling comb is not increasing".into()));
    }
    let Some(i) = points.iter().position(|&(_, c)| c <= 1) else {
        return Ok(CollapseEstimate::NoCollapse);
    };
    let step = if i > 0 {
        points[i].0 - points[i - 1].0
    } else {
        points[1].0 - points[0].0
    };
    Ok(CollapseEstimate::Collapsed {
        coupling: points[i].0,
        step,
    })
}

/// Smallest surveyed coupling of the `(omega0, omega, subspace)` slice with
/// `converged_count <= 1`. Rows that failed to solve are skipped.
pub fn detect_collapse(
    result: &SweepResult,
    omega0: f64,
    omega: f64,
    subspace: &str,
) -> Result<CollapseEstimate> {
    let points: Vec<(f64, usize)> = result
        .slice(omega0, omega, subspace)
        .filter_map(|r| r.converged_count().map(|c| (r.params.g2, c)))
        .collect();
    collapse_from_counts(&points)
}

/// Per-slice estimate, in row order.
#[derive(Debug, Clone, PartialEq)]
pub struct SliceSummary {
    pub omega0: f64,
    pub omega: f64,
    pub subspace: String,
    pub estimate: std::result::Result<CollapseEstimate, String>,
}

pub fn summarize(result: &SweepResult) -> Vec<SliceSummary> {
    let mut out: Vec<SliceSummary> = Vec::new();
    for row in &result.rows {
        let (o0, o, s) = (row.params.omega0, row.params.omega, &row.subspace);
        if out.iter().any(|x| x.omega0 == o0 && x.omega == o && &x.subspace == s) {
            continue;
        }
        out.push(SliceSummary {
            omega0: o0,
            omega: o,
            subspace: s.clone(),
            estimate: detect_collapse(result, o0, o, s).map_err(|e| e.to_string()),
        });
    }
    out
}

/// Same survey with 200 couplings spread evenly over `[0.98, 1.02] * center`.
pub fn refine_comb(config: &SweepConfig, center: f64) -> Result<SweepConfig> {
    if !(center > 0.0 && center.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "refinement center must be > 0, got {center}"
        )));
    }
    Ok(SweepConfig {
        coupling: CouplingSpec::Absolute(Grid::Linspace {
            start: REFINED_SPAN.0 * center,
            stop: REFINED_SPAN.1 * center,
            count: REFINED_POINTS,
        }),
        ..config.clone()
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExceptionalState {
    pub pair: EigenPair,
    /// Coupling of the reference ground state, `0.98 g_c`.
    pub reference_coupling: f64,
    /// `|<reference ground state | exceptional state>|`.
    pub overlap: f64,
}

/// The single converged pair of an exceptional row and its overlap with the
/// ground state of the same representation at `0.98 g_c`.
pub fn exceptional_state(row: &SweepRow, config: &SweepConfig) -> Result<ExceptionalState> {
    if !row.exceptional() {
        return Err(Error::Rejected(format!(
            "row at g2 = {} has converged count {:?}, not exactly one",
            row.params.g2,
            row.converged_count()
        )));
    }
    let rep = RepresentationRegistry::default().get(&row.subspace)?;
    let solver = SolverRegistry::default().get(&config.solver)?;
    let s = settings(config);
    let spectrum = filtered_spectrum(rep.as_ref(), solver.as_ref(), &row.params, row.cutoff, &s)?;
    let pair = spectrum
        .converged()
        .next()
        .cloned()
        .ok_or_else(|| Error::Solver("exceptional pair did not reproduce".into()))?;

    let reference_coupling = REFERENCE_FRACTION * 0.5 * row.params.omega;
    let reference = filtered_spectrum(
        rep.as_ref(),
        solver.as_ref(),
        &row.params.with_coupling(reference_coupling),
        row.cutoff,
        &SolveSettings { count: 1, ..s },
    )?;
    let ground = &reference.pairs[0];
    Ok(ExceptionalState {
        overlap: ground.overlap(&pair),
        pair,
        reference_coupling,
    })
}
