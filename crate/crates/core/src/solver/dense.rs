use nalgebra::linalg::SymmetricEigen;

use super::{check_count, finalize, Amplitudes, BasisLayout, EigenPair, Eigensolver, Operator};
use crate::error::{Error, Result};

/// Full dense Hermitian diagonalization (Householder + implicit QR, via nalgebra).
#[derive(Debug, Default, Clone, Copy)]
pub struct DenseSolver;

const MAX_SWEEPS: usize = 10_000;

impl Eigensolver for DenseSolver {
    fn name(&self) -> &'static str {
        "dense"
    }

    fn supports(&self, _op: &Operator) -> bool {
        true
    }

    fn lowest(&self, op: &Operator, k: usize, layout: BasisLayout) -> Result<Vec<EigenPair>> {
        check_count(k, op.dim())?;
        let failed = || Error::Solver("dense eigensolver did not converge".into());
        let pairs: Vec<EigenPair> = match op {
            Operator::Tridiagonal(t) => {
                let eig = SymmetricEigen::try_new(t.to_dense(), f64::EPSILON, MAX_SWEEPS)
                    .ok_or_else(failed)?;
                lowest_columns(eig.eigenvalues.as_slice(), k)
                    .into_iter()
                    .map(|j| {
                        let v = eig.eigenvectors.column(j).iter().copied().collect();
                        EigenPair::new(eig.eigenvalues[j], Amplitudes::Real(v), layout)
                    })
                    .collect()
            }
            Operator::Hermitian(h) => {
                if let Some(m) = h.to_dense_real() {
                    let eig = SymmetricEigen::try_new(m, f64::EPSILON, MAX_SWEEPS)
                        .ok_or_else(failed)?;
                    lowest_columns(eig.eigenvalues.as_slice(), k)
                        .into_iter()
                        .map(|j| {
                            let v = eig.eigenvectors.column(j).iter().copied().collect();
                            EigenPair::new(eig.eigenvalues[j], Amplitudes::Real(v), layout)
                        })
                        .collect()
                } else {
                    let eig = SymmetricEigen::try_new(h.to_dense(), f64::EPSILON, MAX_SWEEPS)
                        .ok_or_else(failed)?;
                    lowest_columns(eig.eigenvalues.as_slice(), k)
                        .into_iter()
                        .map(|j| {
                            let v = eig.eigenvectors.column(j).iter().copied().collect();
                            EigenPair::new(eig.eigenvalues[j], Amplitudes::Complex(v), layout)
                        })
                        .collect()
                }
            }
        };
        Ok(finalize(pairs))
    }
}

fn lowest_columns(values: &[f64], k: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    idx.truncate(k);
    idx
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::HermitianMatrix;

    #[test]
    fn identity_spectrum() {
        let op = Operator::Hermitian(HermitianMatrix::identity(5));
        let pairs = DenseSolver.lowest(&op, 3, BasisLayout::QubitBoson).unwrap();
        assert_eq!(pairs.len(), 3);
        for p in &pairs {
            assert!((p.value - 1.0).abs() < 1e-14);
        }
    }
}
