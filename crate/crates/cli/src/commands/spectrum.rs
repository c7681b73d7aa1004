use std::path::PathBuf;

use clap::Args;
use rabi_core::format::format_g;
use rabi_core::representation::{filtered_spectrum, RepresentationRegistry, SolveSettings};
use rabi_core::solver::{tail_length, FilteredSpectrum, SolverRegistry};

use super::ModelArgs;
use crate::failure::Failure;
use crate::output::emit;

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Sector states for a parity block, Fock levels for `full`.
    #[arg(long, default_value_t = 1024)]
    pub cutoff: usize,
    /// q14+, q14-, q34+, q34- or full.
    #[arg(long, default_value = "q14+")]
    pub subspace: String,
    /// Number of lowest eigenpairs.
    #[arg(long, default_value_t = 25)]
    pub count: usize,
    #[arg(long, default_value_t = 0.2)]
    pub tail_fraction: f64,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    /// auto, bisection, ql, dense or lanczos.
    #[arg(long, default_value = "auto")]
    pub solver: String,
    /// Output CSV; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn to_csv(spectrum: &FilteredSpectrum) -> String {
    let mut s = String::from("index,energy,tail_norm,converged\n");
    for (i, p) in spectrum.pairs.iter().enumerate() {
        s.push_str(&format!(
            "{i},{},{},{}\n",
            format_g(p.value),
            format_g(p.tail_norm),
            u8::from(p.converged)
        ));
    }
    s
}

pub fn run(args: &SpectrumArgs) -> Result<(), Failure> {
    let params = args.model.params()?;
    let rep = RepresentationRegistry::default().get(&args.subspace)?;
    let solver = SolverRegistry::default().get(&args.solver)?;
    if args.count == 0 {
        return Err(Failure::usage("--count must be positive"));
    }
    if !(args.tol > 0.0) {
        return Err(Failure::usage("--tol must be positive"));
    }
    tail_length(args.cutoff, args.tail_fraction)?;
    if args.cutoff < rep.min_cutoff() {
        return Err(Failure::usage(format!(
            "--cutoff {} is below the minimum of {} for {}",
            args.cutoff,
            rep.min_cutoff(),
            rep.name()
        )));
    }
    let settings = SolveSettings {
        count: args.count,
        tail_fraction: args.tail_fraction,
        tolerance: args.tol,
    };
    let spectrum = filtered_spectrum(rep.as_ref(), solver.as_ref(), &params, args.cutoff, &settings)
        .map_err(|e| match e {
            rabi_core::Error::Rejected(_) => Failure::from(e),
            other => Failure::compute(other.to_string()),
        })?;
    emit(args.out.as_deref(), &to_csv(&spectrum))
}
