//! Eigensolvers, the tail-norm convergence filter and spectrum alignment.
//!
//! Solvers are strategies behind [`Eigensolver`], registered by name in a
//! [`SolverRegistry`]. `auto` dispatches on the operator: Sturm bisection for
//! tridiagonal blocks, dense Hermitian diagonalization below
//! [`DENSE_SOLVER_LIMIT`], shift-invert Lanczos above it.

mod align;
mod dense;
mod filter;
mod lanczos;
mod ql;
mod tridiagonal;

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{HermitianMatrix, TridiagonalMatrix};

pub use align::{align_spectra, Alignment};
pub use dense::DenseSolver;
pub use filter::{
    convergence_filter, tail_length, tail_norm, FilteredSpectrum, DEFAULT_TAIL_FRACTION,
    DEFAULT_TOLERANCE,
};
pub use lanczos::LanczosSolver;
pub use ql::QlSolver;
pub use tridiagonal::BisectionSolver;

/// Hermitian matrices at or above this dimension go to the Krylov solver under `auto`.
pub const DENSE_SOLVER_LIMIT: usize = 1024;

/// How amplitudes map onto boson modes, for the tail-norm rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisLayout {
    /// One amplitude per boson mode (parity blocks).
    Boson,
    /// Two amplitudes per Fock index, interleaved `2 n + s`.
    QubitBoson,
}

impl BasisLayout {
    pub fn stride(self) -> usize {
        match self {
            BasisLayout::Boson => 1,
            BasisLayout::QubitBoson => 2,
        }
    }

    pub fn modes(self, len: usize) -> usize {
        len / self.stride()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Amplitudes {
    Real(Vec<f64>),
    Complex(Vec<Complex64>),
}

impl Amplitudes {
    pub fn len(&self) -> usize {
        match self {
            Amplitudes::Real(v) => v.len(),
            Amplitudes::Complex(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn abs2(&self, i: usize) -> f64 {
        match self {
            Amplitudes::Real(v) => v[i] * v[i],
            Amplitudes::Complex(v) => v[i].norm_sqr(),
        }
    }

    pub fn get(&self, i: usize) -> Complex64 {
        match self {
            Amplitudes::Real(v) => Complex64::new(v[i], 0.0),
            Amplitudes::Complex(v) => v[i],
        }
    }

    pub fn norm(&self) -> f64 {
        (0..self.len()).map(|i| self.abs2(i)).sum::<f64>().sqrt()
    }

    /// `<self|other>`, conjugating `self`.
    pub fn inner(&self, other: &Amplitudes) -> Complex64 {
        match (self, other) {
            (Amplitudes::Real(a), Amplitudes::Real(b)) => {
                Complex64::new(a.iter().zip(b).map(|(x, y)| x * y).sum(), 0.0)
            }
            _ => (0..self.len().min(other.len()))
                .map(|i| self.get(i).conj() * other.get(i))
                .sum(),
        }
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        (0..self.len()).map(|i| self.get(i)).collect()
    }

    pub fn as_real(&self) -> Option<&[f64]> {
        match self {
            Amplitudes::Real(v) => Some(v),
            Amplitudes::Complex(_) => None,
        }
    }

    /// Rotates the global phase so the first amplitude above `1e-8` is real and positive.
    fn fix_phase(&mut self) {
        match self {
            Amplitudes::Real(v) => {
                if let Some(x) = v.iter().find(|x| x.abs() > 1e-8) {
                    if *x < 0.0 {
                        v.iter_mut().for_each(|x| *x = -*x);
                    }
                }
            }
            Amplitudes::Complex(v) => {
                if let Some(x) = v.iter().find(|x| x.norm() > 1e-8) {
                    let phase = x.conj() / x.norm();
                    v.iter_mut().for_each(|x| *x *= phase);
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub value: f64,
    pub vector: Amplitudes,
    pub layout: BasisLayout,
    /// Norm of the truncation tail, under the filter settings last applied.
    pub tail_norm: f64,
    pub converged: bool,
}

impl EigenPair {
    /// New pair with the tail norm evaluated under the default filter settings.
    pub fn new(value: f64, vector: Amplitudes, layout: BasisLayout) -> Self {
        let mut pair = Self {
            value,
            vector,
            layout,
            tail_norm: 0.0,
            converged: false,
        };
        pair.apply_filter(DEFAULT_TAIL_FRACTION, DEFAULT_TOLERANCE)
            .expect("default filter settings are valid");
        pair
    }

    pub(crate) fn apply_filter(&mut self, fraction: f64, tolerance: f64) -> Result<()> {
        self.tail_norm = tail_norm(&self.vector, self.layout, fraction)?;
        self.converged = self.tail_norm < tolerance;
        Ok(())
    }

    /// `|<self|other>|`.
    pub fn overlap(&self, other: &EigenPair) -> f64 {
        self.vector.inner(&other.vector).norm()
    }
}

/// Sorts ascending, breaks near-ties by tail norm and fixes vector phases.
pub(crate) fn finalize(mut pairs: Vec<EigenPair>) -> Vec<EigenPair> {
    for p in &mut pairs {
        p.vector.fix_phase();
    }
    pairs.sort_by(|a, b| a.value.total_cmp(&b.value));
    let tie = |a: f64, b: f64| (a - b).abs() <= 1e-10 * (1.0 + a.abs().max(b.abs()));
    let mut start = 0;
    while start < pairs.len() {
        let mut end = start + 1;
        while end < pairs.len() && tie(pairs[start].value, pairs[end].value) {
            end += 1;
        }
        pairs[start..end].sort_by(|a, b| a.tail_norm.total_cmp(&b.tail_norm));
        start = end;
    }
    pairs
}

/// Assembled Hamiltonian handed to a solver.
#[derive(Debug, Clone, PartialEq)]
pub enum Operator {
    Tridiagonal(TridiagonalMatrix),
    Hermitian(HermitianMatrix),
}

impl Operator {
    pub fn dim(&self) -> usize {
        match self {
            Operator::Tridiagonal(t) => t.dim(),
            Operator::Hermitian(h) => h.dim(),
        }
    }

    /// `H v` in complex arithmetic.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        match self {
            Operator::Tridiagonal(t) => {
                let re: Vec<f64> = v.iter().map(|c| c.re).collect();
                let im: Vec<f64> = v.iter().map(|c| c.im).collect();
                t.matvec(&re)
                    .into_iter()
                    .zip(t.matvec(&im))
                    .map(|(a, b)| Complex64::new(a, b))
                    .collect()
            }
            Operator::Hermitian(h) => h.matvec(v),
        }
    }

    /// `||H v - lambda v||_2` for a computed pair.
    pub fn residual(&self, pair: &EigenPair) -> f64 {
        let v = pair.vector.to_complex();
        self.apply(&v)
            .iter()
            .zip(&v)
            .map(|(hv, x)| (hv - pair.value * x).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

pub(crate) fn check_count(k: usize, dim: usize) -> Result<()> {
    if k == 0 || k > dim {
        Err(Error::CountOutOfRange {
            requested: k,
            dimension: dim,
        })
    } else {
        Ok(())
    }
}

/// A method for the `k` lowest eigenpairs of an [`Operator`].
pub trait Eigensolver: Send + Sync {
    fn name(&self) -> &'static str;

    fn supports(&self, op: &Operator) -> bool;

    /// The `k` lowest eigenpairs, ascending, unit-norm, phase-fixed.
    fn lowest(&self, op: &Operator, k: usize, layout: BasisLayout) -> Result<Vec<EigenPair>>;
}

/// Dispatches to the method suited to the operator's shape and size.
#[derive(Debug, Default, Clone, Copy)]
pub struct AutoSolver;

impl Eigensolver for AutoSolver {
    fn name(&self) -> &'static str {
        "auto"
    }

    fn supports(&self, _op: &Operator) -> bool {
        true
    }

    fn lowest(&self, op: &Operator, k: usize, layout: BasisLayout) -> Result<Vec<EigenPair>> {
        match op {
            Operator::Tridiagonal(_) => BisectionSolver.lowest(op, k, layout),
            Operator::Hermitian(h) if h.dim() < DENSE_SOLVER_LIMIT => {
                DenseSolver.lowest(op, k, layout)
            }
            Operator::Hermitian(_) => LanczosSolver::default().lowest(op, k, layout),
        }
    }
}

/// Named eigensolver strategies.
#[derive(Clone)]
pub struct SolverRegistry {
    entries: BTreeMap<&'static str, Arc<dyn Eigensolver>>,
}

impl SolverRegistry {
    pub fn empty() -> Self {
        Self {
            entries: BTreeMap::new(),
        }
    }

    pub fn register(&mut self, solver: Arc<dyn Eigensolver>) {
        self.entries.insert(solver.name(), solver);
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn Eigensolver>> {
        self.entries.get(name).cloned().ok_or_else(|| Error::Unknown {
            kind: "solver",
            name: name.to_string(),
        })
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.keys().copied()
    }
}

impl Default for SolverRegistry {
    fn default() -> Self {
        let mut r = Self::empty();
        r.register(Arc::new(AutoSolver));
        r.register(Arc::new(BisectionSolver));
        r.register(Arc::new(QlSolver));
        r.register(Arc::new(DenseSolver));
        r.register(Arc::new(LanczosSolver::default()));
        r
    }
}

/// The `k` lowest eigenpairs of a parity block.
pub fn solve_tridiagonal(matrix: &TridiagonalMatrix, k: usize) -> Result<Vec<EigenPair>> {
    AutoSolver.lowest(&Operator::Tridiagonal(matrix.clone()), k, BasisLayout::Boson)
}

/// The `k` lowest eigenpairs of a qubit-tensored Hamiltonian.
pub fn solve_hermitian(matrix: &HermitianMatrix, k: usize) -> Result<Vec<EigenPair>> {
    AutoSolver.lowest(&Operator::Hermitian(matrix.clone()), k, BasisLayout::QubitBoson)
}
