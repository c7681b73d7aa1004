use super::{Amplitudes, BasisLayout, EigenPair};
use crate::error::{Error, Result};

pub const DEFAULT_TAIL_FRACTION: f64 = 0.2;
pub const DEFAULT_TOLERANCE: f64 = 1e-6;

/// Number of trailing boson modes, `ceil(fraction * modes)`.
pub fn tail_length(modes: usize, fraction: f64) -> Result<usize> {
    if !(fraction > 0.0 && fraction < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "tail fraction must lie in (0, 1), got {fraction}"
        )));
    }
    // Guard against 0.2 * 10 landing a hair above 2.
    let len = (fraction * modes as f64 * (1.0 - 4.0 * f64::EPSILON)).ceil() as usize;
    if len == 0 {
        return Err(Error::InvalidParameter(format!(
            "tail of {modes} modes at fraction {fraction} is empty"
        )));
    }
    Ok(len.min(modes))
}

/// L2 norm of the amplitudes on the last `ceil(fraction * modes)` boson modes,
/// pooled over qubit components for qubit-tensored vectors.
pub fn tail_norm(vector: &Amplitudes, layout: BasisLayout, fraction: f64) -> Result<f64> {
    let len = vector.len();
    let modes = layout.modes(len);
    let tail = tail_length(modes, fraction)?;
    let start = len - tail * layout.stride();
    Ok((start..len).map(|i| vector.abs2(i)).sum::<f64>().sqrt())
}

/// Eigenpairs carrying verdicts under one tail rule.
#[derive(Debug, Clone, PartialEq)]
pub struct FilteredSpectrum {
    pub pairs: Vec<EigenPair>,
    /// Number of boson modes in the truncated basis.
    pub cutoff: usize,
    pub tail_fraction: f64,
    pub tolerance: f64,
}

impl FilteredSpectrum {
    pub fn converged(&self) -> impl Iterator<Item = &EigenPair> {
        self.pairs.iter().filter(|p| p.converged)
    }

    pub fn converged_count(&self) -> usize {
        self.converged().count()
    }

    pub fn converged_values(&self) -> Vec<f64> {
        self.converged().map(|p| p.value).collect()
    }

    pub fn shifted(&self, offset: f64) -> FilteredSpectrum {
        let mut out = self.clone();
        out.pairs.iter_mut().for_each(|p| p.value += offset);
        out
    }
}

/// Marks each pair converged iff its tail norm is below `tolerance`.
pub fn convergence_filter(
    pairs: Vec<EigenPair>,
    tail_fraction: f64,
    tolerance: f64,
) -> Result<FilteredSpectrum> {
    if !(tolerance > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be positive, got {tolerance}"
        )));
    }
    if !(tail_fraction > 0.0 && tail_fraction < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "tail fraction must lie in (0, 1), got {tail_fraction}"
        )));
    }
    let cutoff = pairs
        .first()
        .map(|p| p.layout.modes(p.vector.len()))
        .unwrap_or(0);
    let mut pairs = pairs;
    for p in &mut pairs {
        p.apply_filter(tail_fraction, tolerance)?;
    }
    pairs.sort_by(|a, b| a.value.total_cmp(&b.value));
    Ok(FilteredSpectrum {
        pairs,
        cutoff,
        tail_fraction,
        tolerance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(v: Vec<f64>, layout: BasisLayout) -> EigenPair {
        EigenPair::new(0.0, Amplitudes::Real(v), layout)
    }

    #[test]
    fn unit_vector_converges() {
        let mut v = vec![0.0; 10];
        v[0] = 1.0;
        for f in [0.05, 0.2, 0.9] {
            let s = convergence_filter(vec![pair(v.clone(), BasisLayout::Boson)], f, 1e-6).unwrap();
            assert_eq!(s.pairs[0].tail_norm, 0.0);
            assert!(s.pairs[0].converged);
        }
    }

    #[test]
    fn uniform_vector_tail() {
        let v = vec![1.0 / 10f64.sqrt(); 10];
        let s = convergence_filter(vec![pair(v, BasisLayout::Boson)], 0.2, 1e-6).unwrap();
        assert!((s.pairs[0].tail_norm - (0.2f64).sqrt()).abs() < 1e-15);
        assert!(!s.pairs[0].converged);
        assert_eq!(s.cutoff, 10);
    }

    #[test]
    fn qubit_tail_pools_both_components() {
        // 5 Fock levels x 2 qubit states; tail is the last Fock level (2 amplitudes).
        let mut v = vec![0.0; 10];
        v[8] = 0.6;
        v[9] = 0.8;
        let s = convergence_filter(vec![pair(v, BasisLayout::QubitBoson)], 0.2, 1e-6).unwrap();
        assert!((s.pairs[0].tail_norm - 1.0).abs() < 1e-15);
        assert_eq!(s.cutoff, 5);
    }

    #[test]
    fn rejects_bad_settings() {
        let v = vec![1.0; 4];
        assert!(convergence_filter(vec![pair(v.clone(), BasisLayout::Boson)], 0.0, 1e-6).is_err());
        assert!(convergence_filter(vec![pair(v.clone(), BasisLayout::Boson)], 1.0, 1e-6).is_err());
        assert!(convergence_filter(vec![pair(v, BasisLayout::Boson)], 0.2, 0.0).is_err());
        assert!(convergence_filter(vec![], 0.2, 1e-6).unwrap().pairs.is_empty());
        assert_eq!(tail_length(10, 0.2).unwrap(), 2);
        assert_eq!(tail_length(1024, 0.2).unwrap(), 205);
    }
}
