use num_complex::Complex64;

use super::regime::{Regime, RegimeData};
use crate::error::{Error, Result};
use crate::params::Bargmann;

pub const MAX_HERMITE_ORDER: usize = 200;

const RESCALE: f64 = 1e200;

/// Unit-width oscillator functions `phi_0(x) ..= phi_nmax(x)`, via the normalized
/// three-term recurrence. The Gaussian factor is carried as a logarithm so that
/// high orders stay finite far from the origin.
pub fn oscillator_functions(nmax: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(nmax + 1);
    let mut log_scale = -0.5 * x * x;
    let mut prev = 0.0;
    let mut cur = std::f64::consts::PI.powf(-0.25);
    out.push(cur * log_scale.exp());
    for n in 1..=nmax {
        let next = (2.0 / n as f64).sqrt() * x * cur - ((n - 1) as f64 / n as f64).sqrt() * prev;
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE {
            cur /= RESCALE;
            prev /= RESCALE;
            log_scale += RESCALE.ln();
        }
        out.push(cur * log_scale.exp());
    }
    out
}

/// Normalized `psi_n(x) = sqrt(beta) phi_n(beta x)` with width
/// `beta = (alpha_minus / alpha_plus)^(1/4)`.
pub fn hermite_gauss(n: usize, regime: &RegimeData, x: &[f64]) -> Result<Vec<f64>> {
    regime.require("hermite_gauss", Regime::Harmonic)?;
    if n > MAX_HERMITE_ORDER {
        return Err(Error::InvalidParameter(format!(
            "Hermite-Gauss order {n} exceeds {MAX_HERMITE_ORDER}"
        )));
    }
    let beta = regime.beta().expect("harmonic regime has a width");
    let scale = beta.sqrt();
    Ok(x
        .iter()
        .map(|&xi| scale * oscillator_functions(n, beta * xi)[n])
        .collect())
}

/// Spreads sector coefficients onto Fock levels: `m -> 2m` for `q = 1/4`,
/// `m -> 2m + 1` for `q = 3/4`.
pub fn sector_to_fock(bargmann: Bargmann, coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); 2 * coeffs.len()];
    for (m, c) in coeffs.iter().enumerate() {
        out[bargmann.fock_index(m)] = *c;
    }
    out
}

/// `sum_n c_n phi_n(x)` in the position representation.
pub fn fock_to_position(coeffs: &[Complex64], x: &[f64]) -> Result<Vec<Complex64>> {
    if coeffs.is_empty() {
        return Err(Error::InvalidParameter("empty coefficient vector".into()));
    }
    if coeffs.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
        return Err(Error::InvalidParameter("non-finite Fock coefficient".into()));
    }
    let nmax = coeffs.len() - 1;
    Ok(x
        .iter()
        .map(|&xi| {
            oscillator_functions(nmax, xi)
                .iter()
                .zip(coeffs)
                .map(|(phi, c)| c * phi)
                .sum()
        })
        .collect())
}
