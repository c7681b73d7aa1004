use super::FilteredSpectrum;
use crate::error::{Error, Result};

/// Constant that carries one spectrum onto a reference.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Alignment {
    /// Added to the spectrum's converged values.
    pub offset: f64,
    /// Largest deviation from the matched reference values after the shift.
    pub residual: f64,
}

const MIN_CONVERGED: usize = 3;

fn nearest(sorted: &[f64], x: f64) -> f64 {
    let i = sorted.partition_point(|&r| r < x);
    let mut best = f64::INFINITY;
    let mut out = x;
    for j in [i.wrapping_sub(1), i] {
        if let Some(&r) = sorted.get(j) {
            if (r - x).abs() < best {
                best = (r - x).abs();
                out = r;
            }
        }
    }
    out
}

fn refine(values: &[f64], reference: &[f64], mut offset: f64) -> (f64, f64, f64) {
    for _ in 0..20 {
        let mean = values
            .iter()
            .map(|&v| nearest(reference, v + offset) - v)
            .sum::<f64>()
            / values.len() as f64;
        if mean == offset {
            break;
        }
        offset = mean;
    }
    let devs: Vec<f64> = values
        .iter()
        .map(|&v| v + offset - nearest(reference, v + offset))
        .collect();
    let ssq = devs.iter().map(|d| d * d).sum();
    let max = devs.iter().map(|d| d.abs()).fold(0.0, f64::max);
    (offset, ssq, max)
}

/// Per spectrum, the constant minimizing the squared distance of its shifted
/// converged values to their nearest converged reference values.
///
/// Candidates pin the lowest converged value onto each reference value in
/// turn; each is refined by alternating nearest matching with a mean shift.
/// Equally good candidates (ladder spectra) resolve to the smallest offset.
pub fn align_spectra(
    reference: &FilteredSpectrum,
    others: &[FilteredSpectrum],
) -> Result<Vec<Alignment>> {
    let reference_values = reference.converged_values();
    if reference_values.len() < MIN_CONVERGED {
        return Err(Error::Rejected(format!(
            "reference has {} converged values, need {MIN_CONVERGED}",
            reference_values.len()
        )));
    }
    others
        .iter()
        .map(|s| {
            let values = s.converged_values();
            if values.len() < MIN_CONVERGED {
                return Err(Error::Rejected(format!(
                    "spectrum has {} converged values, need {MIN_CONVERGED}",
                    values.len()
                )));
            }
            let base = values[0];
            let mut best: Option<(f64, f64, f64)> = None;
            for &r in &reference_values {
                let cand = refine(&values, &reference_values, r - base);
                let better = match best {
                    None => true,
                    Some(b) => {
                        let tie = (cand.1 - b.1).abs() <= 1e-12 * (values.len() as f64) * (1e-12 + b.1.max(cand.1));
                        if tie {
                            cand.0.abs() < b.0.abs()
                        } else {
                            cand.1 < b.1
                        }
                    }
                };
                if better {
                    best = Some(cand);
                }
            }
            let (offset, _, residual) = best.expect("reference is non-empty");
            Ok(Alignment { offset, residual })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{convergence_filter, Amplitudes, BasisLayout, EigenPair};

    fn spectrum(values: &[f64]) -> FilteredSpectrum {
        let pairs = values
            .iter()
            .map(|&v| EigenPair::new(v, Amplitudes::Real(vec![1.0, 0.0, 0.0, 0.0, 0.0]), BasisLayout::Boson))
            .collect();
        convergence_filter(pairs, 0.2, 1e-6).unwrap()
    }

    #[test]
    fn identical_and_shifted() {
        let a = spectrum(&[0.1, 0.7, 1.3, 2.2]);
        let b = spectrum(&[0.35, 0.95, 1.55, 2.45]);
        let out = align_spectra(&a, &[a.clone(), b]).unwrap();
        assert_eq!(out[0].offset, 0.0);
        assert_eq!(out[0].residual, 0.0);
        assert!((out[1].offset + 0.25).abs() < 1e-15);
        assert!(out[1].residual < 1e-15);
    }

    #[test]
    fn subset_aligns() {
        let a = spectrum(&[0.0, 0.5, 1.0, 1.7, 2.1, 3.3]);
        let b = spectrum(&[1.2, 1.9, 3.5]);
        let out = align_spectra(&a, &[b]).unwrap();
        assert!((out[0].offset + 0.2).abs() < 1e-14);
    }

    #[test]
    fn too_few_values() {
        let a = spectrum(&[0.0, 1.0]);
        let b = spectrum(&[0.0, 1.0, 2.0]);
        assert!(align_spectra(&a, &[b.clone()]).is_err());
        assert!(align_spectra(&b, &[a]).is_err());
    }
}
