//! Sturm-sequence bisection for eigenvalues, inverse iteration for vectors.

use super::{check_count, finalize, Amplitudes, BasisLayout, EigenPair, Eigensolver, Operator};
use crate::error::{Error, Result};
use crate::matrix::TridiagonalMatrix;

#[derive(Debug, Default, Clone, Copy)]
pub struct BisectionSolver;

impl Eigensolver for BisectionSolver {
    fn name(&self) -> &'static str {
        "bisection"
    }

    fn supports(&self, op: &Operator) -> bool {
        matches!(op, Operator::Tridiagonal(_))
    }

    fn lowest(&self, op: &Operator, k: usize, layout: BasisLayout) -> Result<Vec<EigenPair>> {
        let Operator::Tridiagonal(t) = op else {
            return Err(Error::Solver("bisection needs a tridiagonal matrix".into()));
        };
        check_count(k, t.dim())?;
        let values = lowest_eigenvalues(t, k);
        let vectors = inverse_iteration(t, &values)?;
        Ok(finalize(
            values
                .into_iter()
                .zip(vectors)
                .map(|(v, x)| EigenPair::new(v, Amplitudes::Real(x), layout))
                .collect(),
        ))
    }
}

struct Sturm<'a> {
    d: &'a [f64],
    e2: Vec<f64>,
    pivmin: f64,
}

impl<'a> Sturm<'a> {
    fn new(t: &'a TridiagonalMatrix) -> Self {
        let e2: Vec<f64> = t.offdiag().iter().map(|e| e * e).collect();
        let emax = e2.iter().copied().fold(1.0, f64::max);
        Self {
            d: t.diag(),
            e2,
            pivmin: f64::MIN_POSITIVE * emax,
        }
    }

    /// Number of eigenvalues strictly below `x`.
    fn count(&self, x: f64) -> usize {
        let mut q = self.d[0] - x;
        if q.abs() < self.pivmin {
            q = -self.pivmin;
        }
        let mut c = usize::from(q < 0.0);
        for i in 1..self.d.len() {
            q = self.d[i] - x - self.e2[i - 1] / q;
            if q.abs() < self.pivmin {
                q = -self.pivmin;
            }
            c += usize::from(q < 0.0);
        }
        c
    }
}

/// The `k` smallest eigenvalues, ascending, each bisected to machine precision.
pub(crate) fn lowest_eigenvalues(t: &TridiagonalMatrix, k: usize) -> Vec<f64> {
    let sturm = Sturm::new(t);
    let (glo, ghi) = t.gershgorin();
    let pad = 2.0 * f64::EPSILON * (glo.abs().max(ghi.abs())) + sturm.pivmin;
    let (glo, ghi) = (glo - pad, ghi + pad);
    let mut out = Vec::with_capacity(k);
    let mut lower = glo;
    for j in 0..k {
        let mut lo = lower;
        let mut hi = ghi;
        for _ in 0..256 {
            let width = hi - lo;
            let tol = 2.0 * f64::EPSILON * lo.abs().max(hi.abs()) + sturm.pivmin;
            if width <= tol {
                break;
            }
            let mid = lo + 0.5 * width;
            if mid <= lo || mid >= hi {
                break;
            }
            if sturm.count(mid) > j {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let value = lo + 0.5 * (hi - lo);
        out.push(value);
        lower = lo;
    }
    out
}

/// Gaussian elimination with partial pivoting of `T - shift`.
struct ShiftedLu {
    /// Rows of U: diagonal, first and second superdiagonal.
    u0: Vec<f64>,
    u1: Vec<f64>,
    u2: Vec<f64>,
    mult: Vec<f64>,
    swapped: Vec<bool>,
}

impl ShiftedLu {
    fn new(t: &TridiagonalMatrix, shift: f64, tiny: f64) -> Self {
        let n = t.dim();
        let d = t.diag();
        let e = t.offdiag();
        let mut u0 = vec![0.0; n];
        let mut u1 = vec![0.0; n];
        let mut u2 = vec![0.0; n];
        let mut mult = vec![0.0; n.saturating_sub(1)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        // Current pivot-candidate row restricted to columns i, i+1, i+2.
        let mut row = [d[0] - shift, if n > 1 { e[0] } else { 0.0 }, 0.0];
        for i in 0..n - 1 {
            let next = [e[i], d[i + 1] - shift, if i + 2 < n { e[i + 1] } else { 0.0 }];
            let (pivot, other) = if next[0].abs() > row[0].abs() {
                swapped[i] = true;
                (next, row)
            } else {
                (row, next)
            };
            let p0 = if pivot[0] == 0.0 { tiny } else { pivot[0] };
            let m = other[0] / p0;
            mult[i] = m;
            u0[i] = p0;
            u1[i] = pivot[1];
            u2[i] = pivot[2];
            row = [other[1] - m * pivot[1], other[2] - m * pivot[2], 0.0];
        }
        u0[n - 1] = if row[0] == 0.0 { tiny } else { row[0] };
        Self {
            u0,
            u1,
            u2,
            mult,
            swapped,
        }
    }

    fn solve(&self, b: &mut [f64]) {
        let n = b.len();
        for i in 0..n - 1 {
            if self.swapped[i] {
                b.swap(i, i + 1);
            }
            b[i + 1] -= self.mult[i] * b[i];
        }
        for i in (0..n).rev() {
            let mut s = b[i];
            if i + 1 < n {
                s -= self.u1[i] * b[i + 1];
            }
            if i + 2 < n {
                s -= self.u2[i] * b[i + 2];
            }
            b[i] = s / self.u0[i];
        }
    }
}

fn normalize(x: &mut [f64]) -> f64 {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm > 0.0 {
        x.iter_mut().for_each(|v| *v /= norm);
    }
    norm
}

fn orthogonalize(x: &mut [f64], basis: &[&Vec<f64>]) {
    for _ in 0..2 {
        for b in basis {
            let dot: f64 = x.iter().zip(b.iter()).map(|(a, c)| a * c).sum();
            x.iter_mut().zip(b.iter()).for_each(|(a, c)| *a -= dot * c);
        }
    }
}

/// Deterministic start vector in `[-1, 1)`.
fn start_vector(n: usize, seed: u64) -> Vec<f64> {
    let mut s = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ 0xD1B5_4A32_D192_ED03;
    (0..n)
        .map(|_| {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            (s >> 11) as f64 / (1u64 << 52) as f64 - 1.0
        })
        .collect()
}

/// Eigenvectors for known eigenvalues; vectors of close eigenvalues are
/// re-orthogonalized against each other on every sweep.
pub(crate) fn inverse_iteration(t: &TridiagonalMatrix, values: &[f64]) -> Result<Vec<Vec<f64>>> {
    let n = t.dim();
    let norm = t.norm_inf().max(f64::MIN_POSITIVE);
    let eps = f64::EPSILON;
    let cluster = 1e-3 * norm;
    let mut vectors: Vec<Vec<f64>> = Vec::with_capacity(values.len());
    for (j, &lambda) in values.iter().enumerate() {
        if n == 1 {
            vectors.push(vec![1.0]);
            continue;
        }
        let shift = lambda + 10.0 * eps * norm;
        let lu = ShiftedLu::new(t, shift, eps * norm);
        let neighbours: Vec<&Vec<f64>> = values[..j]
            .iter()
            .zip(&vectors)
            .filter(|(v, _)| (lambda - **v).abs() < cluster)
            .map(|(_, x)| x)
            .collect();
        let mut x = start_vector(n, j as u64 + 1);
        orthogonalize(&mut x, &neighbours);
        normalize(&mut x);
        for _ in 0..5 {
            lu.solve(&mut x);
            orthogonalize(&mut x, &neighbours);
            if normalize(&mut x) == 0.0 || x.iter().any(|v| !v.is_finite()) {
                return Err(Error::Solver(format!(
                    "inverse iteration broke down at eigenvalue {lambda}"
                )));
            }
        }
        vectors.push(x);
    }
    Ok(vectors)
}
