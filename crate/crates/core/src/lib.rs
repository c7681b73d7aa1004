//! Spectral collapse in the two-photon quantum Rabi model.
//!
//! Builders for the model's truncated-basis Hamiltonians ([`model`]),
//! eigensolvers with a tail-norm convergence filter ([`solver`]), closed-form
//! degenerate-qubit results ([`analytic`]) and parameter surveys that locate the
//! critical coupling `g_c = omega / 2` ([`sweep`]).

pub mod analytic;
pub mod error;
pub mod format;
pub mod matrix;
pub mod model;
pub mod params;
pub mod representation;
pub mod solver;
pub mod sweep;

pub use error::{Error, Result};
pub use params::{Bargmann, Branch, ModelParams, SubspaceLabel};
