use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Frequencies and coupling of the two-photon Rabi model, all dimensionless.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub omega0: f64,
    pub omega: f64,
    pub g2: f64,
}

impl ModelParams {
    pub fn new(omega0: f64, omega: f64, g2: f64) -> Result<Self> {
        let p = Self { omega0, omega, g2 };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega0.is_finite() && self.omega.is_finite() && self.g2.is_finite()) {
            return Err(Error::InvalidParameter("parameters must be finite".into()));
        }
        if self.omega <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "omega must be > 0, got {}",
                self.omega
            )));
        }
        if self.omega0 < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "omega0 must be >= 0, got {}",
                self.omega0
            )));
        }
        if self.g2 < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "g2 must be >= 0, got {}",
                self.g2
            )));
        }
        Ok(())
    }

    pub fn with_coupling(&self, g2: f64) -> Self {
        Self { g2, ..*self }
    }

    /// `omega + 2 g2`, the momentum coefficient of the quadrature form.
    pub fn alpha_plus(&self) -> f64 {
        self.omega + 2.0 * self.g2
    }

    /// `omega - 2 g2`, the curvature of the effective potential.
    pub fn alpha_minus(&self) -> f64 {
        self.omega - 2.0 * self.g2
    }
}

/// Bargmann index of the SU(1,1) sector: 1/4 is the even Fock ladder, 3/4 the odd one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bargmann {
    Quarter,
    ThreeQuarters,
}

impl Bargmann {
    pub fn value(self) -> f64 {
        match self {
            Bargmann::Quarter => 0.25,
            Bargmann::ThreeQuarters => 0.75,
        }
    }

    /// Fock number occupied by sector index `m`.
    pub fn fock_index(self, m: usize) -> usize {
        match self {
            Bargmann::Quarter => 2 * m,
            Bargmann::ThreeQuarters => 2 * m + 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

/// One of the four parity-resolved blocks `H_{q,±}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubspaceLabel {
    pub bargmann: Bargmann,
    pub branch: Branch,
}

impl SubspaceLabel {
    pub const ALL: [SubspaceLabel; 4] = [
        SubspaceLabel::new(Bargmann::Quarter, Branch::Plus),
        SubspaceLabel::new(Bargmann::Quarter, Branch::Minus),
        SubspaceLabel::new(Bargmann::ThreeQuarters, Branch::Plus),
        SubspaceLabel::new(Bargmann::ThreeQuarters, Branch::Minus),
    ];

    pub const fn new(bargmann: Bargmann, branch: Branch) -> Self {
        Self { bargmann, branch }
    }

    pub fn q(&self) -> f64 {
        self.bargmann.value()
    }

    pub fn name(&self) -> &'static str {
        match (self.bargmann, self.branch) {
            (Bargmann::Quarter, Branch::Plus) => "q14+",
            (Bargmann::Quarter, Branch::Minus) => "q14-",
            (Bargmann::ThreeQuarters, Branch::Plus) => "q34+",
            (Bargmann::ThreeQuarters, Branch::Minus) => "q34-",
        }
    }
}

impl fmt::Display for SubspaceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SubspaceLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SubspaceLabel::ALL
            .iter()
            .copied()
            .find(|l| l.name() == s)
            .ok_or_else(|| Error::Unknown {
                kind: "subspace",
                name: s.to_string(),
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_params() {
        assert!(ModelParams::new(0.0, 0.0, 0.1).is_err());
        assert!(ModelParams::new(-1.0, 1.0, 0.1).is_err());
        assert!(ModelParams::new(1.0, 1.0, -0.1).is_err());
        assert!(ModelParams::new(1.0, f64::NAN, 0.1).is_err());
        assert!(ModelParams::new(0.0, 0.5, 0.0).is_ok());
    }

    #[test]
    fn labels_parse() {
        for l in SubspaceLabel::ALL {
            assert_eq!(l.name().parse::<SubspaceLabel>().unwrap(), l);
        }
        assert!("q12+".parse::<SubspaceLabel>().is_err());
    }
}
