use std::path::PathBuf;

use clap::Args;
use rabi_core::format::format_g;
use rabi_core::sweep::{run_sweep, summarize, CollapseEstimate, SliceSummary, SweepConfig, SweepResult};

use crate::failure::Failure;
use crate::output::emit;

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Config file of `key = value` lines.
    pub config: PathBuf,
    /// Output CSV; stdout when omitted, with the summary moved to stderr.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn to_csv(result: &SweepResult) -> String {
    let k = result.config.eigenpairs;
    let mut s = String::from("omega0,omega,g2,cutoff,subspace,converged_count,collapsed");
    for i in 0..k {
        s.push_str(&format!(",e{i}"));
    }
    s.push('\n');
    for row in &result.rows {
        let p = row.params;
        s.push_str(&format!(
            "{},{},{},{},{}",
            format_g(p.omega0),
            format_g(p.omega),
            format_g(p.g2),
            row.cutoff,
            row.subspace
        ));
        let energies: &[f64] = match &row.outcome {
            Ok(o) => {
                s.push_str(&format!(",{},{}", o.converged_count, u8::from(o.collapsed())));
                &o.energies
            }
            Err(_) => {
                s.push_str(",,failed");
                &[]
            }
        };
        for i in 0..k {
            s.push(',');
            if let Some(e) = energies.get(i) {
                s.push_str(&format_g(*e));
            }
        }
        s.push('\n');
    }
    s
}

pub fn summary_line(s: &SliceSummary) -> String {
    let head = format!(
        "omega0={} omega={} subspace={}:",
        format_g(s.omega0),
        format_g(s.omega),
        s.subspace
    );
    match &s.estimate {
        Ok(CollapseEstimate::Collapsed { coupling, step }) => format!(
            "{head} g_c ≈ {} (-{})",
            format_g(*coupling),
            format_g(*step)
        ),
        Ok(CollapseEstimate::NoCollapse) => format!("{head} no collapse in range"),
        Err(e) => format!("{head} {e}"),
    }
}

pub fn run(args: &SweepArgs) -> Result<(), Failure> {
    let text = std::fs::read_to_string(&args.config)
        .map_err(|e| Failure::usage(format!("{}: {e}", args.config.display())))?;
    let config = SweepConfig::parse(&text)
        .map_err(|e| Failure::usage(format!("{}: {e}", args.config.display())))?;
    let result = run_sweep(&config)?;
    emit(args.out.as_deref(), &to_csv(&result))?;
    for row in result.rows.iter() {
        if let Err(e) = &row.outcome {
            eprintln!(
                "warning: g2={} omega0={} omega={} {}: {e}",
                format_g(row.params.g2),
                format_g(row.params.omega0),
                format_g(row.params.omega),
                row.subspace
            );
        }
    }
    for s in summarize(&result) {
        if args.out.is_some() {
            println!("{}", summary_line(&s));
        } else {
            eprintln!("{}", summary_line(&s));
        }
    }
    Ok(())
}
