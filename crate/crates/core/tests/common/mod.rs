#![allow(dead_code)]

use rabi_core::representation::{filtered_spectrum, FullFock, ParityBlock, Representation, SolveSettings};
use rabi_core::solver::{align_spectra, AutoSolver, FilteredSpectrum};
use rabi_core::{ModelParams, SubspaceLabel};

pub fn params(omega0: f64, omega: f64, g2: f64) -> ModelParams {
    ModelParams::new(omega0, omega, g2).unwrap()
}

pub fn spectrum(rep: &dyn Representation, p: &ModelParams, cutoff: usize, count: usize) -> FilteredSpectrum {
    let settings = SolveSettings { count, ..Default::default() };
    filtered_spectrum(rep, &AutoSolver, p, cutoff, &settings).unwrap()
}

pub const BLOCK_LEVELS: usize = 25;

/// Outcome of comparing the union of parity-block spectra with the full model.
#[derive(Debug)]
pub struct Completeness {
    pub offsets: Vec<f64>,
    /// Largest elementwise gap between the sorted multisets.
    pub residual: f64,
    pub full_levels: usize,
    pub union_levels: usize,
}

/// Each block is aligned onto the full model's converged spectrum on its own;
/// the shifted union is then compared with the full spectrum as a multiset
/// below the highest level every side has computed.
pub fn block_completeness(p: &ModelParams, m: usize, n: usize) -> Completeness {
    let full = spectrum(&FullFock, p, n, 4 * BLOCK_LEVELS + 40);
    let blocks: Vec<FilteredSpectrum> = SubspaceLabel::ALL
        .iter()
        .map(|&l| spectrum(&ParityBlock(l), p, m, BLOCK_LEVELS))
        .collect();
    let offsets: Vec<f64> = align_spectra(&full, &blocks)
        .unwrap()
        .iter()
        .map(|a| a.offset)
        .collect();
    let top = |s: &FilteredSpectrum| s.pairs.last().unwrap().value;
    let cut = blocks
        .iter()
        .zip(&offsets)
        .map(|(b, o)| top(b) + o)
        .fold(top(&full), f64::min)
        - 1e-6;
    let reference: Vec<f64> = full.converged_values().into_iter().filter(|v| *v < cut).collect();
    let mut union: Vec<f64> = blocks
        .iter()
        .zip(&offsets)
        .flat_map(|(b, o)| b.converged_values().into_iter().map(move |v| v + o))
        .filter(|v| *v < cut)
        .collect();
    union.sort_by(f64::total_cmp);
    let residual = if union.len() == reference.len() {
        union
            .iter()
            .zip(&reference)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    } else {
        f64::INFINITY
    };
    Completeness {
        offsets,
        residual,
        full_levels: reference.len(),
        union_levels: union.len(),
    }
}

pub fn trapezoid(f: &[f64], h: f64) -> f64 {
    h * (f.iter().sum::<f64>() - 0.5 * (f[0] + f[f.len() - 1]))
}
