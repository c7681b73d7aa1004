//! Truncated-basis Hamiltonians of the two-photon Rabi model.
//!
//! Qubit-tensored matrices use the interleaved ordering `2 n + s`, with `s = 0`
//! for the upper qubit state (sigma_z = +1) and `s = 1` for the lower one.
//! All energies refer to the laboratory Hamiltonian
//! `(w0/2) sz + w a'a + g2 (a'^2 + a^2) sx`; the quadrature forms sit `+w/2`
//! above it and the parity blocks `H_{q,±}` likewise sit `+w/2` above it.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{HermitianBuilder, HermitianMatrix, TridiagonalMatrix};
use crate::params::{ModelParams, SubspaceLabel};

pub const MIN_FOCK_CUTOFF: usize = 4;
pub const MIN_SUBSPACE_CUTOFF: usize = 8;

const UP: usize = 0;
const DOWN: usize = 1;

fn re(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

fn check_cutoff(got: usize, min: usize) -> Result<()> {
    if got < min {
        Err(Error::CutoffTooSmall { got, min })
    } else {
        Ok(())
    }
}

fn check_params(params: &ModelParams) -> Result<()> {
    params.validate()
}

/// `(w0/2) sz + w a'a + g2 (a'^2 + a^2) sx` on `n < cutoff`.
pub fn build_full_fock(params: &ModelParams, cutoff: usize) -> Result<HermitianMatrix> {
    check_params(params)?;
    check_cutoff(cutoff, MIN_FOCK_CUTOFF)?;
    let n_max = cutoff;
    let mut b = HermitianBuilder::new(2 * n_max, 5);
    for n in 0..n_max {
        let boson = params.omega * n as f64;
        b.set(2 * n + UP, 2 * n + UP, re(boson + 0.5 * params.omega0));
        b.set(2 * n + DOWN, 2 * n + DOWN, re(boson - 0.5 * params.omega0));
        if n + 2 < n_max {
            // <n+2| a'^2 |n> = sqrt((n+1)(n+2)), with sx flipping the qubit.
            let v = re(params.g2 * (((n + 1) * (n + 2)) as f64).sqrt());
            b.set(2 * (n + 2) + UP, 2 * n + DOWN, v);
            b.set(2 * (n + 2) + DOWN, 2 * n + UP, v);
        }
    }
    b.finish()
}

/// Squared quadratures `q^2` and `p^2` restricted to `n < cutoff`.
///
/// Assembled as products of the quadrature matrices built one level larger,
/// so the retained block of each square is exact.
#[derive(Debug, Clone)]
pub struct QuadratureSquares {
    /// `(q^2)(n, n)`; equal to `(p^2)(n, n)`.
    pub q2_diag: Vec<f64>,
    pub p2_diag: Vec<f64>,
    /// `(q^2)(n, n + 2)`.
    pub q2_skip: Vec<f64>,
    /// `(p^2)(n, n + 2)`.
    pub p2_skip: Vec<f64>,
}

impl QuadratureSquares {
    pub fn new(cutoff: usize) -> Self {
        let big = cutoff + 1;
        // Nearest-neighbour elements X(k, k+1) of q = (a' + a)/sqrt2 and p = i(a' - a)/sqrt2.
        let q_up: Vec<Complex64> = (0..big - 1)
            .map(|k| re(((k + 1) as f64).sqrt() / 2f64.sqrt()))
            .collect();
        let p_up: Vec<Complex64> = (0..big - 1)
            .map(|k| Complex64::new(0.0, -((k + 1) as f64).sqrt() / 2f64.sqrt()))
            .collect();
        let square = |up: &[Complex64]| -> (Vec<f64>, Vec<f64>) {
            // X(k+1, k) = conj(X(k, k+1)); sum over the intermediate index.
            let diag = (0..cutoff)
                .map(|n| {
                    let mut s = up[n] * up[n].conj();
                    if n > 0 {
                        s += up[n - 1].conj() * up[n - 1];
                    }
                    s.re
                })
                .collect();
            let skip = (0..cutoff.saturating_sub(2))
                .map(|n| (up[n] * up[n + 1]).re)
                .collect();
            (diag, skip)
        };
        let (q2_diag, q2_skip) = square(&q_up);
        let (p2_diag, p2_skip) = square(&p_up);
        Self {
            q2_diag,
            p2_diag,
            q2_skip,
            p2_skip,
        }
    }

    /// Adds `(a p^2 + b q^2)` into the qubit component `s` of `builder`.
    fn add_block(&self, builder: &mut HermitianBuilder, s: usize, a: f64, b: f64) {
        for n in 0..self.q2_diag.len() {
            builder.add(2 * n + s, 2 * n + s, re(a * self.p2_diag[n] + b * self.q2_diag[n]));
        }
        for n in 0..self.q2_skip.len() {
            builder.add(
                2 * n + s,
                2 * (n + 2) + s,
                re(a * self.p2_skip[n] + b * self.q2_skip[n]),
            );
        }
    }
}

/// `((w + 2 g2 sz) p^2 + (w - 2 g2 sz) q^2)/2 + (w0/2) sx`.
pub fn build_phase_space(params: &ModelParams, cutoff: usize) -> Result<HermitianMatrix> {
    check_params(params)?;
    check_cutoff(cutoff, MIN_FOCK_CUTOFF)?;
    let sq = QuadratureSquares::new(cutoff);
    let (ap, am) = (params.alpha_plus(), params.alpha_minus());
    let mut b = HermitianBuilder::new(2 * cutoff, 4);
    sq.add_block(&mut b, UP, 0.5 * ap, 0.5 * am);
    sq.add_block(&mut b, DOWN, 0.5 * am, 0.5 * ap);
    for n in 0..cutoff {
        b.set(2 * n + UP, 2 * n + DOWN, re(0.5 * params.omega0));
    }
    b.finish()
}

/// Diagonal entry `<n| R |n>` of the quarter-turn phase-space rotation,
/// `exp(-i (pi/4)(p^2 + q^2)) = exp(-i pi (n + 1/2) / 2)`.
pub fn rotation_phase(n: usize) -> Complex64 {
    Complex64::from_polar(1.0, -PI * (n as f64 + 0.5) / 2.0)
}

/// Rotated frame: `(a+ p^2 + a- q^2)/2` on both qubit states, coupled by
/// `(w0/2)(R s+ + R' s-)` with `R` from [`rotation_phase`].
pub fn build_rotated_fock(params: &ModelParams, cutoff: usize) -> Result<HermitianMatrix> {
    check_params(params)?;
    check_cutoff(cutoff, MIN_FOCK_CUTOFF)?;
    let sq = QuadratureSquares::new(cutoff);
    let (ap, am) = (params.alpha_plus(), params.alpha_minus());
    let mut b = HermitianBuilder::new(2 * cutoff, 4);
    sq.add_block(&mut b, UP, 0.5 * ap, 0.5 * am);
    sq.add_block(&mut b, DOWN, 0.5 * ap, 0.5 * am);
    for n in 0..cutoff {
        b.set(2 * n + UP, 2 * n + DOWN, 0.5 * params.omega0 * rotation_phase(n));
    }
    b.finish()
}

/// `H_{q,±} = ±(w0/2) Pi_q + 2 w K_z - 2 g2 (K_+ + K_-)` on `m < cutoff`.
pub fn build_subspace_tridiagonal(
    label: SubspaceLabel,
    params: &ModelParams,
    cutoff: usize,
) -> Result<TridiagonalMatrix> {
    check_params(params)?;
    check_cutoff(cutoff, MIN_SUBSPACE_CUTOFF)?;
    let q = label.q();
    let sign = label.branch.sign();
    let diag = (0..cutoff)
        .map(|m| {
            let parity = if m % 2 == 0 { 1.0 } else { -1.0 };
            sign * 0.5 * params.omega0 * parity + 2.0 * params.omega * (q + m as f64)
        })
        .collect();
    let offdiag = (0..cutoff - 1)
        .map(|m| {
            let m = m as f64;
            -2.0 * params.g2 * ((m + 1.0) * (m + 2.0 * q)).sqrt()
        })
        .collect();
    TridiagonalMatrix::new(diag, offdiag)
}

/// Boson parity `(-1)^n` on `n < cutoff`.
pub fn boson_parity(cutoff: usize) -> Result<HermitianMatrix> {
    check_cutoff(cutoff, 1)?;
    let mut b = HermitianBuilder::new(cutoff, 0);
    for n in 0..cutoff {
        b.set(n, n, re(if n % 2 == 0 { 1.0 } else { -1.0 }));
    }
    b.finish()
}

/// `A ⊗ I_2` in the interleaved ordering.
pub fn tensor_qubit_identity(a: &HermitianMatrix) -> Result<HermitianMatrix> {
    let n = a.dim();
    let kd = a.bandwidth();
    let mut b = HermitianBuilder::new(2 * n, 2 * kd);
    for i in 0..n {
        for j in i..(i + kd + 1).min(n) {
            let v = a.get(i, j);
            if v != re(0.0) {
                b.set(2 * i, 2 * j, v);
                b.set(2 * i + 1, 2 * j + 1, v);
            }
        }
    }
    b.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{Bargmann, Branch};

    fn p(omega0: f64, omega: f64, g2: f64) -> ModelParams {
        ModelParams::new(omega0, omega, g2).unwrap()
    }

    #[test]
    fn cutoff_checks() {
        let pp = p(1.0, 1.0, 0.1);
        assert_eq!(
            build_full_fock(&pp, 3).unwrap_err(),
            Error::CutoffTooSmall { got: 3, min: 4 }
        );
        assert!(build_phase_space(&pp, 2).is_err());
        assert!(build_rotated_fock(&pp, 1).is_err());
        let l = SubspaceLabel::new(Bargmann::Quarter, Branch::Plus);
        assert!(build_subspace_tridiagonal(l, &pp, 7).is_err());
        assert!(boson_parity(0).is_err());
    }

    #[test]
    fn number_operator_diagonal() {
        // w0 = 0, g2 = 0: pure number operator repeated on both qubit states.
        let h = build_full_fock(&p(0.0, 1.0, 0.0), 4).unwrap();
        let d: Vec<f64> = (0..8).map(|i| h.get(i, i).re).collect();
        assert_eq!(d, vec![0.0, 0.0, 1.0, 1.0, 2.0, 2.0, 3.0, 3.0]);
        for i in 0..8 {
            for j in 0..8 {
                if i != j {
                    assert_eq!(h.get(i, j), re(0.0));
                }
            }
        }
    }

    #[test]
    fn full_fock_couples_two_photon_pairs() {
        let h = build_full_fock(&p(1.0, 1.0, 0.3), 6).unwrap();
        // <2,up| H |0,down> = g2 sqrt(2)
        assert!((h.get(4, 1).re - 0.3 * 2f64.sqrt()).abs() < 1e-15);
        assert!((h.get(5, 0).re - 0.3 * 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(h.get(4, 0), re(0.0));
        assert_eq!(h.bandwidth(), 5);
        assert!(h.is_real());
    }

    #[test]
    fn quadrature_squares_match_ladder_algebra() {
        let sq = QuadratureSquares::new(10);
        for n in 0..10 {
            assert!((sq.q2_diag[n] - (n as f64 + 0.5)).abs() < 1e-14);
            assert!((sq.p2_diag[n] - (n as f64 + 0.5)).abs() < 1e-14);
        }
        for n in 0..8 {
            let s = (((n + 1) * (n + 2)) as f64).sqrt() / 2.0;
            assert!((sq.q2_skip[n] - s).abs() < 1e-14);
            assert!((sq.p2_skip[n] + s).abs() < 1e-14);
        }
    }

    #[test]
    fn phase_space_oscillator_block() {
        // (p^2 + q^2)/2 = a'a + 1/2
        let h = build_phase_space(&p(0.0, 1.0, 0.0), 4).unwrap();
        for n in 0..4 {
            for s in 0..2 {
                assert!((h.get(2 * n + s, 2 * n + s).re - (n as f64 + 0.5)).abs() < 1e-14);
            }
        }
        assert!(h.get(0, 4).norm() < 1e-15);
    }

    #[test]
    fn rotated_blocks_identical_without_qubit_gap() {
        let h = build_rotated_fock(&p(0.0, 0.7, 0.2), 16).unwrap();
        for i in 0..16 {
            for j in 0..16 {
                assert_eq!(h.get(2 * i, 2 * j), h.get(2 * i + 1, 2 * j + 1));
                assert_eq!(h.get(2 * i, 2 * j + 1), re(0.0));
            }
        }
    }

    #[test]
    fn rotated_is_complex_hermitian() {
        let h = build_rotated_fock(&p(1.0, 1.0, 0.0), 4).unwrap();
        assert!(!h.is_real());
        assert_eq!(h.max_asymmetry(), 0.0);
        assert!((h.get(0, 1) - 0.5 * Complex64::from_polar(1.0, -PI / 4.0)).norm() < 1e-15);
    }

    #[test]
    fn subspace_matrix_elements() {
        let l = SubspaceLabel::new(Bargmann::Quarter, Branch::Plus);
        let t = build_subspace_tridiagonal(l, &p(1.0, 0.5, 0.1), 8).unwrap();
        let diag = [0.75, 0.75, 2.75];
        for (a, b) in t.diag().iter().zip(diag) {
            assert!((a - b).abs() < 1e-14);
        }
        assert!((t.offdiag()[0] + 0.2 * 0.5f64.sqrt()).abs() < 1e-15);
        assert!((t.offdiag()[1] + 0.2 * 3f64.sqrt()).abs() < 1e-15);

        let t = build_subspace_tridiagonal(l, &p(0.0, 1.0, 0.0), 8).unwrap();
        assert_eq!(&t.diag()[..4], &[0.5, 2.5, 4.5, 6.5]);
        assert!(t.offdiag().iter().all(|&e| e == 0.0));
    }

    #[test]
    fn subspace_parity_alternation() {
        // omega = 0 is not a valid model point; check the parity term directly.
        let l = SubspaceLabel::new(Bargmann::ThreeQuarters, Branch::Minus);
        let t = build_subspace_tridiagonal(l, &p(2.0, 1e-300, 0.0), 8).unwrap();
        assert!((t.diag()[0] + 1.0).abs() < 1e-12);
        assert!((t.diag()[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn parity_involution() {
        let par = boson_parity(4).unwrap();
        let d: Vec<f64> = (0..4).map(|i| par.get(i, i).re).collect();
        assert_eq!(d, vec![1.0, -1.0, 1.0, -1.0]);
        let dense = par.to_dense();
        assert_eq!(&dense * &dense, nalgebra::DMatrix::identity(4, 4));
    }
}
