pub mod modes;
pub mod oracle;
pub mod spectrum;
pub mod sweep;

use clap::Args;
use rabi_core::ModelParams;

use crate::failure::Failure;

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    /// Qubit frequency.
    #[arg(long, allow_negative_numbers = true)]
    pub omega0: f64,
    /// Boson frequency.
    #[arg(long, allow_negative_numbers = true)]
    pub omega: f64,
    /// Two-photon coupling.
    #[arg(long, allow_negative_numbers = true)]
    pub g2: f64,
}

impl ModelArgs {
    pub fn params(&self) -> Result<ModelParams, Failure> {
        Ok(ModelParams::new(self.omega0, self.omega, self.g2)?)
    }
}
