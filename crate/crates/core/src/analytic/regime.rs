use crate::error::{Error, Result};
use crate::params::{ModelParams, SubspaceLabel};

/// Shape of the effective potential `alpha_minus q^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `alpha_minus > 0`: discrete, equidistant spectrum.
    Harmonic,
    /// `alpha_minus = 0`: continuous spectrum on `[0, inf)`.
    FreeParticle,
    /// `alpha_minus < 0`: continuous spectrum on the whole real line.
    Inverted,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::Harmonic => "harmonic",
            Regime::FreeParticle => "free-particle",
            Regime::Inverted => "inverted",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeData {
    pub omega: f64,
    pub alpha_plus: f64,
    pub alpha_minus: f64,
    /// `sqrt(alpha_minus / alpha_plus)`, harmonic regime only.
    pub alpha: Option<f64>,
    /// `sqrt(omega^2 - 4 g2^2)`, defined for `alpha_minus >= 0`.
    pub big_omega: Option<f64>,
    pub regime: Regime,
}

impl RegimeData {
    /// Oscillator width `(alpha_minus / alpha_plus)^(1/4)`.
    pub fn beta(&self) -> Option<f64> {
        self.alpha.map(f64::sqrt)
    }

    pub fn require(&self, operation: &'static str, required: Regime) -> Result<()> {
        if self.regime == required {
            Ok(())
        } else {
            Err(Error::Regime {
                operation,
                required: required.name(),
                found: self.regime.name(),
            })
        }
    }

    /// `E / omega`.
    pub fn scaled_eigenvalue(&self, energy: f64) -> f64 {
        energy / self.omega
    }
}

/// Classifies by the sign of `alpha_minus = omega - 2 g2`; `|alpha_minus| <= epsilon`
/// counts as the free-particle point.
pub fn classify_regime(params: &ModelParams, epsilon: f64) -> RegimeData {
    let alpha_plus = params.alpha_plus();
    let alpha_minus = params.alpha_minus();
    let regime = if alpha_minus.abs() <= epsilon {
        Regime::FreeParticle
    } else if alpha_minus > 0.0 {
        Regime::Harmonic
    } else {
        Regime::Inverted
    };
    let (alpha, big_omega) = match regime {
        Regime::Harmonic => (
            Some((alpha_minus / alpha_plus).sqrt()),
            Some((alpha_plus * alpha_minus).sqrt()),
        ),
        Regime::FreeParticle => (None, Some(0.0)),
        Regime::Inverted => (None, None),
    };
    RegimeData {
        omega: params.omega,
        alpha_plus,
        alpha_minus,
        alpha,
        big_omega,
        regime,
    }
}

/// `omega / 2`.
pub fn critical_coupling(omega: f64) -> Result<f64> {
    if omega > 0.0 && omega.is_finite() {
        Ok(0.5 * omega)
    } else {
        Err(Error::InvalidParameter(format!("omega must be > 0, got {omega}")))
    }
}

/// Levels `Omega (2 m + 2 q)` of `(alpha_plus p^2 + alpha_minus q^2)/2` restricted
/// to Fock parity `2q - 1/2`, with `Omega = sqrt(alpha_plus alpha_minus)`.
pub fn harmonic_levels(alpha_plus: f64, alpha_minus: f64, q: f64, count: usize) -> Result<Vec<f64>> {
    if !(alpha_plus > 0.0 && alpha_minus > 0.0) {
        return Err(Error::Rejected(format!(
            "spectrum is continuous for alpha_plus = {alpha_plus}, alpha_minus = {alpha_minus}"
        )));
    }
    let big_omega = (alpha_plus * alpha_minus).sqrt();
    Ok((0..count)
        .map(|m| big_omega * (2.0 * m as f64 + 2.0 * q))
        .collect())
}

/// Lowest `count` energies of the sector `label` at `omega0 = 0`.
pub fn degenerate_spectrum(
    params: &ModelParams,
    label: SubspaceLabel,
    count: usize,
) -> Result<Vec<f64>> {
    params.validate()?;
    if params.omega0 != 0.0 {
        return Err(Error::InvalidParameter(format!(
            "degenerate spectrum needs omega0 = 0, got {}",
            params.omega0
        )));
    }
    let data = classify_regime(params, 0.0);
    data.require("degenerate_spectrum", Regime::Harmonic)?;
    harmonic_levels(data.alpha_plus, data.alpha_minus, label.q(), count)
}
