use clap::Args;
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rabi_core::analytic::{
    classify_regime, degenerate_spectrum, fock_to_position, hermite_gauss, sector_to_fock,
};
use rabi_core::format::format_g;
use rabi_core::representation::{
    filtered_spectrum, FullFock, ParityBlock, PhaseSpace, Representation, RotatedFock,
    SolveSettings,
};
use rabi_core::solver::{align_spectra, AutoSolver, FilteredSpectrum};
use rabi_core::{ModelParams, SubspaceLabel};

use crate::failure::Failure;

pub const DEFAULT_CUTOFF: usize = 128;
const STRICT_CUTOFF: usize = 128;
const DEGENERATE_CUTOFF: usize = 4096;
const HERMITE_CUTOFF: usize = 2048;

#[derive(Debug, Args)]
pub struct OracleArgs {
    /// Parity-block cutoff for the alignment and rotation checks; the full
    /// model uses twice as many Fock levels.
    #[arg(long, default_value_t = DEFAULT_CUTOFF)]
    pub cutoff: usize,
    /// Draw the parameter points at random from this seed instead of the
    /// fixed reference points.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub deviation: f64,
    pub tolerance: f64,
    pub detail: String,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.deviation < self.tolerance
    }

    pub fn line(&self) -> String {
        format!(
            "{} {:<14} max deviation {} tolerance {} ({})",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            format_g(self.deviation),
            format_g(self.tolerance),
            self.detail
        )
    }
}

/// Parameter points the checks run at.
#[derive(Debug, Clone)]
pub struct Points {
    pub coupled: ModelParams,
    pub degenerate: Vec<ModelParams>,
    pub hermite: ModelParams,
}

impl Points {
    pub fn reference() -> Self {
        Self {
            coupled: ModelParams { omega0: 1.0, omega: 0.5, g2: 0.1 },
            degenerate: [0.0, 0.1, 0.2]
                .iter()
                .map(|&g2| ModelParams { omega0: 0.0, omega: 0.45, g2 })
                .collect(),
            hermite: ModelParams { omega0: 0.0, omega: 0.5, g2: 0.1 },
        }
    }

    pub fn random(seed: u64) -> Self {
        let mut rng = StdRng::seed_from_u64(seed);
        let mut draw = |omega0: bool| {
            let omega = rng.random_range(0.4..0.6);
            ModelParams {
                omega0: if omega0 { rng.random_range(0.5..1.5) } else { 0.0 },
                omega,
                g2: rng.random_range(0.0..0.2 * omega),
            }
        };
        Self {
            coupled: draw(true),
            degenerate: vec![draw(false), draw(false)],
            hermite: draw(false),
        }
    }
}

fn describe(p: &ModelParams) -> String {
    format!(
        "omega0={} omega={} g2={}",
        format_g(p.omega0),
        format_g(p.omega),
        format_g(p.g2)
    )
}

fn solve(rep: &dyn Representation, p: &ModelParams, cutoff: usize, count: usize) -> Result<FilteredSpectrum, Failure> {
    let settings = SolveSettings { count, ..Default::default() };
    filtered_spectrum(rep, &AutoSolver, p, cutoff, &settings).map_err(|e| Failure::compute(e.to_string()))
}

fn nearest_distance(sorted: &[f64], x: f64) -> f64 {
    let i = sorted.partition_point(|&r| r < x);
    [i.wrapping_sub(1), i]
        .iter()
        .filter_map(|&j| sorted.get(j))
        .map(|r| (r - x).abs())
        .fold(f64::INFINITY, f64::min)
}

/// Full model against the union of the four parity blocks, at subspace cutoff
/// `m` and full cutoff `2m`. Converged levels on either side must appear in the
/// other side's computed spectrum once the offset is applied.
pub fn alignment(p: &ModelParams, m: usize) -> Result<Check, Failure> {
    let full = solve(&FullFock, p, 2 * m, 40)?;
    let mut union = Vec::new();
    for label in SubspaceLabel::ALL {
        union.extend(solve(&ParityBlock(label), p, m, 40)?.pairs);
    }
    union.sort_by(|a, b| a.value.total_cmp(&b.value));
    let union = FilteredSpectrum { pairs: union, ..full.clone() };
    let mut union_all = union.clone();
    union_all.pairs.iter_mut().for_each(|q| q.converged = true);
    let offset = align_spectra(&union_all, std::slice::from_ref(&full))
        .map_err(|e| Failure::compute(e.to_string()))?[0]
        .offset;

    let full_conv = full.converged_values();
    let full_all: Vec<f64> = full.pairs.iter().map(|q| q.value + offset).collect();
    let union_values: Vec<f64> = union_all.converged_values();
    let top = full_all[full_all.len() - 1];
    let forward = full_conv
        .iter()
        .map(|v| nearest_distance(&union_values, v + offset))
        .fold(0.0, f64::max);
    let backward = union
        .converged_values()
        .into_iter()
        .filter(|v| *v <= top)
        .map(|v| nearest_distance(&full_all, v))
        .fold(0.0, f64::max);
    Ok(Check {
        name: "alignment",
        deviation: forward.max(backward),
        tolerance: if m >= STRICT_CUTOFF { 1e-8 } else { 1e-6 },
        detail: format!(
            "{}, {} converged levels, offset {}, cutoff {}/{}",
            describe(p),
            full_conv.len(),
            format_g(offset),
            m,
            2 * m
        ),
    })
}

/// Ten lowest converged levels of every block against `Omega (2m + 2q)`.
pub fn degenerate(points: &[ModelParams]) -> Result<Check, Failure> {
    let mut worst: f64 = 0.0;
    for p in points {
        for label in SubspaceLabel::ALL {
            let exact = degenerate_spectrum(p, label, 10)?;
            let numeric = solve(&ParityBlock(label), p, DEGENERATE_CUTOFF, 12)?.converged_values();
            if numeric.len() < 10 {
                worst = f64::INFINITY;
                continue;
            }
            for (n, e) in numeric.iter().zip(&exact) {
                worst = worst.max(((n - e) / e).abs());
            }
        }
    }
    Ok(Check {
        name: "degenerate",
        deviation: worst,
        tolerance: 1e-8,
        detail: format!("{} points, relative error, cutoff {DEGENERATE_CUTOFF}", points.len()),
    })
}

fn trapezoid(f: &[f64], h: f64) -> f64 {
    h * (f.iter().sum::<f64>() - 0.5 * (f[0] + f[f.len() - 1]))
}

/// Numeric and analytic position-space profiles of one sector level, with the
/// numeric one rotated onto the analytic global phase.
pub fn mode_profiles(
    p: &ModelParams,
    label: SubspaceLabel,
    level: usize,
    cutoff: usize,
    x: &[f64],
) -> Result<(Vec<Complex64>, Vec<Complex64>), Failure> {
    let regime = classify_regime(p, 0.0);
    let order = label.bargmann.fock_index(level);
    let analytic: Vec<Complex64> = hermite_gauss(order, &regime, x)?
        .into_iter()
        .map(|v| Complex64::new(v, 0.0))
        .collect();
    let numeric = numeric_profile(p, label, level, cutoff, x)?;
    Ok((analytic.clone(), match_phase(&analytic, numeric)))
}

pub fn numeric_profile(
    p: &ModelParams,
    label: SubspaceLabel,
    level: usize,
    cutoff: usize,
    x: &[f64],
) -> Result<Vec<Complex64>, Failure> {
    let spectrum = solve(&ParityBlock(label), p, cutoff, level + 1)?;
    let coeffs = spectrum.pairs[level].vector.to_complex();
    Ok(fock_to_position(&sector_to_fock(label.bargmann, &coeffs), x)?)
}

pub fn match_phase(reference: &[Complex64], mut v: Vec<Complex64>) -> Vec<Complex64> {
    let dot: Complex64 = reference.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
    if dot.norm() > 0.0 {
        let phase = dot.conj() / dot.norm();
        v.iter_mut().for_each(|z| *z *= phase);
    }
    v
}

/// Numeric ground state in position space against the Hermite-Gauss ground state.
pub fn hermite(p: &ModelParams) -> Result<Check, Failure> {
    let x: Vec<f64> = (0..2001).map(|i| -10.0 + 0.01 * i as f64).collect();
    let label = SubspaceLabel::ALL[0];
    let (analytic, numeric) = mode_profiles(p, label, 0, HERMITE_CUTOFF, &x)?;
    let sq: Vec<f64> = analytic.iter().zip(&numeric).map(|(a, b)| (a - b).norm_sqr()).collect();
    Ok(Check {
        name: "hermite-gauss",
        deviation: trapezoid(&sq, 0.01).sqrt(),
        tolerance: 1e-6,
        detail: format!("{}, L2 error on [-10, 10], cutoff {HERMITE_CUTOFF}", describe(p)),
    })
}

/// Lowest 20 levels of the laboratory, quadrature and rotated forms.
pub fn rotation_chain(p: &ModelParams, n: usize) -> Result<Check, Failure> {
    let lab = solve(&FullFock, p, n, 20)?;
    let quad = solve(&PhaseSpace, p, n, 20)?;
    let rot = solve(&RotatedFock, p, n, 20)?;
    let shift = 0.5 * p.omega;
    let mut worst: f64 = 0.0;
    for ((a, b), c) in lab.pairs.iter().zip(&quad.pairs).zip(&rot.pairs) {
        worst = worst.max((a.value + shift - b.value).abs());
        worst = worst.max((b.value - c.value).abs());
    }
    Ok(Check {
        name: "rotation-chain",
        deviation: worst,
        tolerance: 1e-8,
        detail: format!("{}, 20 lowest levels, cutoff {n}", describe(p)),
    })
}

pub fn checks(points: &Points, cutoff: usize) -> Result<Vec<Check>, Failure> {
    Ok(vec![
        alignment(&points.coupled, cutoff)?,
        degenerate(&points.degenerate)?,
        hermite(&points.hermite)?,
        rotation_chain(&points.coupled, 2 * cutoff)?,
    ])
}

pub fn run(args: &OracleArgs) -> Result<(), Failure> {
    if args.cutoff < 8 {
        return Err(Failure::usage(format!("--cutoff {} is below the minimum of 8", args.cutoff)));
    }
    let points = match args.seed {
        Some(s) => Points::random(s),
        None => Points::reference(),
    };
    let results = checks(&points, args.cutoff)?;
    for c in &results {
        println!("{}", c.line());
    }
    let failed = results.iter().filter(|c| !c.passed()).count();
    if failed > 0 {
        return Err(Failure::compute(format!("{failed} oracle check(s) failed")));
    }
    Ok(())
}
