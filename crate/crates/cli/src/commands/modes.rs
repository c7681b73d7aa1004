use std::path::PathBuf;

use clap::Args;
use num_complex::Complex64;
use rabi_core::analytic::{classify_regime, plane_wave, Regime, WaveDirection};
use rabi_core::format::format_g;
use rabi_core::SubspaceLabel;

use super::oracle::{match_phase, mode_profiles, numeric_profile};
use super::ModelArgs;
use crate::failure::Failure;
use crate::output::emit;

#[derive(Debug, Args)]
pub struct ModesArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Parity block: q14+, q14-, q34+ or q34-.
    #[arg(long, default_value = "q14+")]
    pub subspace: SubspaceLabel,
    /// Level index within the block.
    #[arg(long, default_value_t = 0)]
    pub level: usize,
    #[arg(long, default_value_t = 2048)]
    pub cutoff: usize,
    #[arg(long, default_value_t = -10.0, allow_negative_numbers = true)]
    pub xmin: f64,
    #[arg(long, default_value_t = 10.0, allow_negative_numbers = true)]
    pub xmax: f64,
    #[arg(long, default_value_t = 2001)]
    pub points: usize,
    /// Squared wavenumber of the plane wave at the critical coupling.
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    /// Output CSV; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn to_csv(x: &[f64], analytic: &[Complex64], numeric: &[Complex64]) -> String {
    let mut s = String::from("x,analytic_re,analytic_im,numeric_re,numeric_im,absdiff\n");
    for ((xi, a), n) in x.iter().zip(analytic).zip(numeric) {
        s.push_str(&format!(
            "{},{},{},{},{},{}\n",
            format_g(*xi),
            format_g(a.re),
            format_g(a.im),
            format_g(n.re),
            format_g(n.im),
            format_g((a - n).norm())
        ));
    }
    s
}

pub fn run(args: &ModesArgs) -> Result<(), Failure> {
    let params = args.model.params()?;
    if params.omega0 != 0.0 {
        return Err(Failure::usage("closed-form modes need --omega0 0"));
    }
    if args.points < 2 || !(args.xmin < args.xmax) || !args.xmin.is_finite() || !args.xmax.is_finite() {
        return Err(Failure::usage("grid needs --xmin < --xmax and at least 2 --points"));
    }
    if args.cutoff < 8 {
        return Err(Failure::usage(format!("--cutoff {} is below the minimum of 8", args.cutoff)));
    }
    if args.level >= args.cutoff {
        return Err(Failure::usage("--level must be below --cutoff"));
    }
    let h = (args.xmax - args.xmin) / (args.points - 1) as f64;
    let x: Vec<f64> = (0..args.points).map(|i| args.xmin + h * i as f64).collect();

    let (analytic, numeric) = match classify_regime(&params, 0.0).regime {
        Regime::Harmonic => mode_profiles(&params, args.subspace, args.level, args.cutoff, &x)?,
        Regime::FreeParticle => {
            let analytic = plane_wave(args.lambda, WaveDirection::Forward, &x)?;
            let numeric = numeric_profile(&params, args.subspace, args.level, args.cutoff, &x)?;
            let numeric = match_phase(&analytic, numeric);
            (analytic, numeric)
        }
        Regime::Inverted => {
            return Err(Failure::compute("regime III closed forms out of scope"));
        }
    };
    emit(args.out.as_deref(), &to_csv(&x, &analytic, &numeric))
}
