//! Closed-form results for the degenerate-qubit limit `omega0 -> 0`, where the
//! boson part reduces to `H0 = (alpha_plus p^2 + alpha_minus q^2) / 2`.
//!
//! Energies are those of `H0` itself. The scaled eigenvalue `lambda = E / omega`
//! is available through [`RegimeData::scaled_eigenvalue`] for comparison with
//! tables quoted in that convention.

mod hermite;
mod kummer;
mod modes;
mod regime;

pub use hermite::{fock_to_position, hermite_gauss, oscillator_functions, sector_to_fock};
pub use kummer::kummer_1f1;
pub use modes::{
    general_solution, general_solution_standard, plane_wave, AnalyticMode, WaveDirection,
};
pub use regime::{
    classify_regime, critical_coupling, degenerate_spectrum, harmonic_levels, Regime,
    RegimeData,
};
