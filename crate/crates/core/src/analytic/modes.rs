use num_complex::Complex64;

use super::hermite::hermite_gauss;
use super::kummer::kummer_1f1;
use super::regime::{Regime, RegimeData};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WaveDirection {
    Forward,
    Backward,
}

impl WaveDirection {
    pub fn sign(self) -> f64 {
        match self {
            WaveDirection::Forward => 1.0,
            WaveDirection::Backward => -1.0,
        }
    }
}

/// `(2 pi)^(-1/2) exp(+-i sqrt(lambda) x)`.
pub fn plane_wave(lambda: f64, direction: WaveDirection, x: &[f64]) -> Result<Vec<Complex64>> {
    if !(lambda >= 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "plane wave needs lambda >= 0, got {lambda}"
        )));
    }
    let amp = (2.0 * std::f64::consts::PI).sqrt().recip();
    let k = direction.sign() * lambda.sqrt();
    Ok(x.iter().map(|&xi| Complex64::from_polar(amp, k * xi)).collect())
}

/// An eigenfunction of `H0` with a closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AnalyticMode {
    HermiteGauss { n: usize, regime: RegimeData },
    /// `lambda` is the squared wavenumber.
    PlaneWave {
        lambda: f64,
        direction: WaveDirection,
        regime: RegimeData,
    },
}

impl AnalyticMode {
    pub fn hermite_gauss(n: usize, regime: RegimeData) -> Result<Self> {
        regime.require("hermite_gauss", Regime::Harmonic)?;
        Ok(Self::HermiteGauss { n, regime })
    }

    pub fn plane_wave(lambda: f64, direction: WaveDirection, regime: RegimeData) -> Result<Self> {
        regime.require("plane_wave", Regime::FreeParticle)?;
        if !(lambda >= 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "plane wave needs lambda >= 0, got {lambda}"
            )));
        }
        Ok(Self::PlaneWave {
            lambda,
            direction,
            regime,
        })
    }

    /// Energy under `H0`.
    pub fn energy(&self) -> f64 {
        match *self {
            AnalyticMode::HermiteGauss { n, regime } => {
                regime.big_omega.expect("harmonic") * (n as f64 + 0.5)
            }
            AnalyticMode::PlaneWave { lambda, regime, .. } => 0.5 * regime.alpha_plus * lambda,
        }
    }

    pub fn evaluate(&self, x: &[f64]) -> Result<Vec<Complex64>> {
        match *self {
            AnalyticMode::HermiteGauss { n, regime } => Ok(hermite_gauss(n, &regime, x)?
                .into_iter()
                .map(|v| Complex64::new(v, 0.0))
                .collect()),
            AnalyticMode::PlaneWave {
                lambda, direction, ..
            } => plane_wave(lambda, direction, x),
        }
    }
}

fn two_branch(
    nu: f64,
    regime: &RegimeData,
    c1: f64,
    c2: f64,
    x: &[f64],
    gauss: f64,
    arg: f64,
) -> Result<Vec<f64>> {
    regime.require("general_solution", Regime::Harmonic)?;
    let alpha = regime.alpha.expect("harmonic regime has alpha");
    x.iter()
        .map(|&xi| {
            if !xi.is_finite() {
                return Err(Error::InvalidParameter("non-finite grid point".into()));
            }
            let z = arg * alpha * xi * xi;
            let envelope = (-gauss * alpha * xi * xi).exp();
            let mut v = 0.0;
            if c1 != 0.0 {
                v += c1 * kummer_1f1(-nu - 0.25, 0.5, z)?;
            }
            if c2 != 0.0 {
                v += c2 * xi * kummer_1f1(-nu + 0.25, 1.5, z)?;
            }
            Ok(envelope * v)
        })
        .collect()
}

/// `c1 e^(-a x^2/4) 1F1(-nu-1/4; 1/2; a x^2/2) + c2 x e^(-a x^2/4) 1F1(-nu+1/4; 3/2; a x^2/2)`
/// with `a = sqrt(alpha_minus / alpha_plus)`, exactly as usually displayed.
///
/// This width does not solve the `H0` eigen-equation for any energy; see
/// [`general_solution_standard`].
pub fn general_solution(
    nu: f64,
    regime: &RegimeData,
    c1: f64,
    c2: f64,
    x: &[f64],
) -> Result<Vec<f64>> {
    two_branch(nu, regime, c1, c2, x, 0.25, 0.5)
}

/// Same Kummer parameters with the oscillator width: `e^(-a x^2/2)` and argument
/// `a x^2`. Solves `H0 psi = E psi` with `E = Omega (2 nu + 1)`.
pub fn general_solution_standard(
    nu: f64,
    regime: &RegimeData,
    c1: f64,
    c2: f64,
    x: &[f64],
) -> Result<Vec<f64>> {
    two_branch(nu, regime, c1, c2, x, 0.5, 1.0)
}
