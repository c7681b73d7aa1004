//! Shift-invert Lanczos for the lowest eigenpairs of a banded Hermitian matrix.
//!
//! The shift is placed just below the ground state, located by bisection on the
//! inertia of a banded `L D L^H` factorization. The same inertia counts verify
//! that no eigenvalue below the highest accepted one was skipped; missed copies
//! of degenerate levels are recovered by restarting against the locked vectors.

use num_complex::Complex64;

use super::{check_count, finalize, ql, Amplitudes, BasisLayout, EigenPair, Eigensolver, Operator};
use crate::error::{Error, Result};
use crate::matrix::BandStorage;

#[derive(Debug, Clone, Copy)]
pub struct LanczosSolver {
    /// Largest Krylov dimension per restart.
    pub max_basis: usize,
    /// Relative Ritz-residual threshold in the inverted spectrum.
    pub tolerance: f64,
    pub max_restarts: usize,
}

impl Default for LanczosSolver {
    fn default() -> Self {
        Self {
            max_basis: 600,
            tolerance: 1e-13,
            max_restarts: 12,
        }
    }
}

impl Eigensolver for LanczosSolver {
    fn name(&self) -> &'static str {
        "lanczos"
    }

    fn supports(&self, op: &Operator) -> bool {
        matches!(op, Operator::Hermitian(_))
    }

    fn lowest(&self, op: &Operator, k: usize, layout: BasisLayout) -> Result<Vec<EigenPair>> {
        let Operator::Hermitian(h) = op else {
            return Err(Error::Solver("lanczos needs a Hermitian matrix".into()));
        };
        check_count(k, h.dim())?;
        let band = h.to_band();
        let found = self.run(&band, k, h.gershgorin())?;
        let real = h.is_real();
        let pairs = found
            .into_iter()
            .map(|(value, v)| {
                let amps = if real {
                    Amplitudes::Real(v.iter().map(|c| c.re).collect())
                } else {
                    Amplitudes::Complex(v)
                };
                EigenPair::new(value, amps, layout)
            })
            .collect();
        Ok(finalize(pairs))
    }
}

/// `A - shift = L D L^H` without pivoting; `L` unit lower with bandwidth `kd`.
struct BandLdl {
    n: usize,
    kd: usize,
    /// `l[k * (kd + 1) + (i - k)] = L(i, k)`.
    l: Vec<Complex64>,
    d: Vec<f64>,
}

impl BandLdl {
    fn new(a: &BandStorage, shift: f64, pivmin: f64) -> Self {
        let n = a.dim();
        let kd = a.bandwidth();
        let w = kd + 1;
        let mut l = vec![Complex64::new(0.0, 0.0); n * w];
        let mut d = vec![0.0; n];
        for j in 0..n {
            let k0 = j.saturating_sub(kd);
            let mut dj = a.upper(j, 0).re - shift;
            for k in k0..j {
                dj -= l[k * w + (j - k)].norm_sqr() * d[k];
            }
            if dj.abs() < pivmin {
                dj = -pivmin;
            }
            d[j] = dj;
            for i in j + 1..(j + kd + 1).min(n) {
                // A(i, j) = conj(A(j, i))
                let mut s = a.upper(j, i - j).conj();
                for k in i.saturating_sub(kd)..j {
                    s -= l[k * w + (i - k)] * d[k] * l[k * w + (j - k)].conj();
                }
                l[j * w + (i - j)] = s / dj;
            }
        }
        Self { n, kd, l, d }
    }

    fn negative_pivots(&self) -> usize {
        self.d.iter().filter(|&&v| v < 0.0).count()
    }

    fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let (n, kd, w) = (self.n, self.kd, self.kd + 1);
        let mut y = b.to_vec();
        for i in 0..n {
            let mut s = y[i];
            for k in i.saturating_sub(kd)..i {
                s -= self.l[k * w + (i - k)] * y[k];
            }
            y[i] = s;
        }
        for i in 0..n {
            y[i] /= self.d[i];
        }
        for i in (0..n).rev() {
            let mut s = y[i];
            for k in i + 1..(i + kd + 1).min(n) {
                s -= self.l[i * w + (k - i)].conj() * y[k];
            }
            y[i] = s;
        }
        y
    }
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

fn project_out(x: &mut [Complex64], basis: &[Vec<Complex64>]) {
    for _ in 0..2 {
        for b in basis {
            let c = dot(b, x);
            x.iter_mut().zip(b).for_each(|(xi, bi)| *xi -= c * bi);
        }
    }
}

fn start_vector(n: usize, seed: u64) -> Vec<Complex64> {
    let mut s = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) | 1;
    (0..n)
        .map(|_| {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            Complex64::new((s >> 11) as f64 / (1u64 << 52) as f64 - 1.0, 0.0)
        })
        .collect()
}

impl LanczosSolver {
    fn run(
        &self,
        band: &BandStorage,
        k: usize,
        (glo, ghi): (f64, f64),
    ) -> Result<Vec<(f64, Vec<Complex64>)>> {
        let n = band.dim();
        let scale = glo.abs().max(ghi.abs()).max(f64::MIN_POSITIVE);
        let pivmin = f64::MIN_POSITIVE.sqrt() * scale;
        let count_below = |x: f64| BandLdl::new(band, x, pivmin).negative_pivots();

        // Bracket the ground state.
        let mut lo = glo - 1e-12 * scale;
        let mut hi = ghi + 1e-12 * scale;
        for _ in 0..200 {
            if hi - lo <= 1e-9 * (1.0 + lo.abs()) {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if count_below(mid) == 0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let shift = lo - 1e-3 * (1.0 + lo.abs());
        let ldl = BandLdl::new(band, shift, pivmin);
        if ldl.negative_pivots() != 0 {
            return Err(Error::Solver("shift is not below the spectrum".into()));
        }
        let apply = |x: &[Complex64]| super::super::matrix::band_matvec(band, x);

        let mut locked: Vec<(f64, Vec<Complex64>)> = Vec::new();
        for round in 0..self.max_restarts {
            let locked_vecs: Vec<Vec<Complex64>> = locked.iter().map(|(_, v)| v.clone()).collect();
            let free = n - locked.len();
            if free == 0 {
                break;
            }
            let want = k.saturating_sub(locked.len()).max(1);
            let mut v = start_vector(n, round as u64 + 1);
            project_out(&mut v, &locked_vecs);
            let nv = norm(&v);
            if nv == 0.0 {
                break;
            }
            v.iter_mut().for_each(|x| *x /= nv);

            let max_m = self.max_basis.min(free);
            let mut basis: Vec<Vec<Complex64>> = vec![v];
            let mut alpha: Vec<f64> = Vec::new();
            let mut beta: Vec<f64> = Vec::new();
            let mut accepted: Vec<(f64, Vec<Complex64>)> = Vec::new();
            loop {
                let j = basis.len() - 1;
                let mut w = ldl.solve(&basis[j]);
                project_out(&mut w, &locked_vecs);
                let a = dot(&basis[j], &w).re;
                alpha.push(a);
                project_out(&mut w, &basis);
                let b = norm(&w);
                let m = alpha.len();
                let invariant = b <= 1e-14 * a.abs().max(f64::MIN_POSITIVE);
                let exhausted = invariant || m >= max_m;
                if m >= want.min(max_m) && (m % 8 == 0 || exhausted) {
                    let (theta, s) = ql::tql2(&alpha, &beta)?;
                    // Largest Ritz values of the inverse are the lowest eigenvalues.
                    let mut conv = Vec::new();
                    for idx in (0..m).rev().take(want) {
                        let resid = b * s[idx][m - 1].abs();
                        if resid <= self.tolerance * theta[idx].abs() || invariant {
                            conv.push(idx);
                        } else {
                            break;
                        }
                    }
                    if conv.len() >= want.min(m) || exhausted {
                        accepted = conv
                            .into_iter()
                            .map(|idx| {
                                let mut y = vec![Complex64::new(0.0, 0.0); n];
                                for (q, c) in basis.iter().zip(&s[idx]) {
                                    y.iter_mut().zip(q).for_each(|(yi, qi)| *yi += qi * *c);
                                }
                                project_out(&mut y, &locked_vecs);
                                let ny = norm(&y);
                                y.iter_mut().for_each(|x| *x /= ny);
                                let rq = dot(&y, &apply(&y)).re;
                                (rq, y)
                            })
                            .collect();
                        break;
                    }
                }
                if exhausted {
                    break;
                }
                beta.push(b);
                w.iter_mut().for_each(|x| *x /= b);
                basis.push(w);
            }
            for (value, y) in accepted {
                // Orthogonalize against vectors locked earlier in this round.
                let mut y = y;
                let prior: Vec<Vec<Complex64>> = locked.iter().map(|(_, v)| v.clone()).collect();
                project_out(&mut y, &prior);
                let ny = norm(&y);
                if ny < 0.5 {
                    continue;
                }
                y.iter_mut().for_each(|x| *x /= ny);
                locked.push((value, y));
            }
            locked.sort_by(|a, b| a.0.total_cmp(&b.0));
            if locked.len() >= k {
                let top = locked[k - 1].0;
                let eta = 1e-9 * (1.0 + top.abs());
                let below = count_below(top + eta);
                let have = locked.iter().filter(|(v, _)| *v < top + eta).count();
                if below <= have {
                    locked.truncate(k);
                    return Ok(locked);
                }
            }
        }
        Err(Error::Solver(format!(
            "lanczos located {} of {k} eigenpairs",
            locked.len()
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::HermitianBuilder;
    use crate::solver::DenseSolver;

    fn banded_test_matrix(n: usize, degenerate: bool) -> crate::matrix::HermitianMatrix {
        let mut b = HermitianBuilder::new(n, 3);
        for i in 0..n {
            let level = if degenerate { (i / 2) as f64 } else { i as f64 };
            b.set(i, i, Complex64::new(level, 0.0));
            if i + 3 < n && !degenerate {
                b.set(i, i + 3, Complex64::new(0.3, 0.1 * (i % 5) as f64));
            }
        }
        b.finish_with(false).unwrap()
    }

    #[test]
    fn matches_dense_on_complex_band() {
        let h = banded_test_matrix(300, false);
        let op = Operator::Hermitian(h);
        let lz = LanczosSolver::default().lowest(&op, 12, BasisLayout::Boson).unwrap();
        let de = DenseSolver.lowest(&op, 12, BasisLayout::Boson).unwrap();
        for (a, b) in lz.iter().zip(&de) {
            assert!((a.value - b.value).abs() < 1e-10, "{} {}", a.value, b.value);
            assert!(op.residual(a) < 1e-8);
        }
    }

    #[test]
    fn recovers_degenerate_levels() {
        let h = banded_test_matrix(200, true);
        let op = Operator::Hermitian(h);
        let lz = LanczosSolver::default().lowest(&op, 6, BasisLayout::Boson).unwrap();
        let values: Vec<f64> = lz.iter().map(|p| p.value).collect();
        for (a, b) in values.iter().zip([0.0, 0.0, 1.0, 1.0, 2.0, 2.0]) {
            assert!((a - b).abs() < 1e-10, "{values:?}");
        }
    }
}
