//! Hamiltonian representations as named strategies.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::model::{
    build_full_fock, build_phase_space, build_rotated_fock, build_subspace_tridiagonal,
    MIN_FOCK_CUTOFF, MIN_SUBSPACE_CUTOFF,
};
use crate::params::{ModelParams, SubspaceLabel};
use crate::solver::{convergence_filter, BasisLayout, Eigensolver, FilteredSpectrum, Operator};

/// One way of writing the model in a truncated basis.
pub trait Representation: Send + Sync {
    fn name(&self) -> &'static str;

    fn layout(&self) -> BasisLayout;

    fn min_cutoff(&self) -> usize;

    fn build(&self, params: &ModelParams, cutoff: usize) -> Result<Operator>;

    /// Constant added to this representation's energies to land on the
    /// laboratory-frame spectrum of [`build_full_fock`].
    fn reference_offset(&self, params: &ModelParams) -> f64;
}

#[derive(Debug, Clone, Copy)]
pub struct FullFock;

impl Representation for FullFock {
    fn name(&self) -> &'static str {
        "full"
    }
    fn layout(&self) -> BasisLayout {
        BasisLayout::QubitBoson
    }
    fn min_cutoff(&self) -> usize {
        MIN_FOCK_CUTOFF
    }
    fn build(&self, params: &ModelParams, cutoff: usize) -> Result<Operator> {
        build_full_fock(params, cutoff).map(Operator::Hermitian)
    }
    fn reference_offset(&self, _params: &ModelParams) -> f64 {
        0.0
    }
}

/// Quadrature form after the qubit rotation.
#[derive(Debug, Clone, Copy)]
pub struct PhaseSpace;

impl Representation for PhaseSpace {
    fn name(&self) -> &'static str {
        "phase"
    }
    fn layout(&self) -> BasisLayout {
        BasisLayout::QubitBoson
    }
    fn min_cutoff(&self) -> usize {
        MIN_FOCK_CUTOFF
    }
    fn build(&self, params: &ModelParams, cutoff: usize) -> Result<Operator> {
        build_phase_space(params, cutoff).map(Operator::Hermitian)
    }
    fn reference_offset(&self, params: &ModelParams) -> f64 {
        -0.5 * params.omega
    }
}

#[derive(Debug, Clone, Copy)]
pub struct RotatedFock;

impl Representation for RotatedFock {
    fn name(&self) -> &'static str {
        "rotated"
    }
    fn layout(&self) -> BasisLayout {
        BasisLayout::QubitBoson
    }
    fn min_cutoff(&self) -> usize {
        MIN_FOCK_CUTOFF
    }
    fn build(&self, params: &ModelParams, cutoff: usize) -> Result<Operator> {
        build_rotated_fock(params, cutoff).map(Operator::Hermitian)
    }
    fn reference_offset(&self, params: &ModelParams) -> f64 {
        -0.5 * params.omega
    }
}

/// A parity block `H_{q,±}`; its cutoff counts sector states `m`.
#[derive(Debug, Clone, Copy)]
pub struct ParityBlock(pub SubspaceLabel);

impl Representation for ParityBlock {
    fn name(&self) -> &'static str {
        self.0.name()
    }
    fn layout(&self) -> BasisLayout {
        BasisLayout::Boson
    }
    fn min_cutoff(&self) -> usize {
        MIN_SUBSPACE_CUTOFF
    }
    fn build(&self, params: &ModelParams, cutoff: usize) -> Result<Operator> {
        build_subspace_tridiagonal(self.0, params, cutoff).map(Operator::Tridiagonal)
    }
    fn reference_offset(&self, params: &ModelParams) -> f64 {
        -0.5 * params.omega
    }
}

/// Named representations.
#[derive(Clone)]
pub struct RepresentationRegistry {
    entries: BTreeMap<&'static str, Arc<dyn Representation>>,
}

impl RepresentationRegistry {
    pub fn empty() -> Self {
        Self {
            entries: BTreeMap::new(),
        }
    }

    pub fn register(&mut self, rep: Arc<dyn Representation>) {
        self.entries.insert(rep.name(), rep);
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn Representation>> {
        self.entries.get(name).cloned().ok_or_else(|| Error::Unknown {
            kind: "representation",
            name: name.to_string(),
        })
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.keys().copied()
    }
}

impl Default for RepresentationRegistry {
    fn default() -> Self {
        let mut r = Self::empty();
        r.register(Arc::new(FullFock));
        r.register(Arc::new(PhaseSpace));
        r.register(Arc::new(RotatedFock));
        for label in SubspaceLabel::ALL {
            r.register(Arc::new(ParityBlock(label)));
        }
        r
    }
}

/// Filter settings and eigenpair budget for one diagonalization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveSettings {
    pub count: usize,
    pub tail_fraction: f64,
    pub tolerance: f64,
}

impl Default for SolveSettings {
    fn default() -> Self {
        Self {
            count: 25,
            tail_fraction: crate::solver::DEFAULT_TAIL_FRACTION,
            tolerance: crate::solver::DEFAULT_TOLERANCE,
        }
    }
}

/// Build, solve for the lowest `settings.count` pairs (capped at the
/// dimension) and filter.
pub fn filtered_spectrum(
    rep: &dyn Representation,
    solver: &dyn Eigensolver,
    params: &ModelParams,
    cutoff: usize,
    settings: &SolveSettings,
) -> Result<FilteredSpectrum> {
    let op = rep.build(params, cutoff)?;
    if !solver.supports(&op) {
        return Err(Error::Rejected(format!(
            "solver `{}` cannot handle the `{}` representation",
            solver.name(),
            rep.name()
        )));
    }
    let k = settings.count.min(op.dim());
    let pairs = solver.lowest(&op, k, rep.layout())?;
    convergence_filter(pairs, settings.tail_fraction, settings.tolerance)
}
