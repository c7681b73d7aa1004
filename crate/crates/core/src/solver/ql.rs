//! Implicit-shift QL on a symmetric tridiagonal matrix (EISPACK `tql2`).
//!
//! Produces the whole spectrum with eigenvectors, O(n^3); intended as an
//! independent route for modest dimensions and for Lanczos projections.

use super::{check_count, finalize, Amplitudes, BasisLayout, EigenPair, Eigensolver, Operator};
use crate::error::{Error, Result};

#[derive(Debug, Default, Clone, Copy)]
pub struct QlSolver;

impl Eigensolver for QlSolver {
    fn name(&self) -> &'static str {
        "ql"
    }

    fn supports(&self, op: &Operator) -> bool {
        matches!(op, Operator::Tridiagonal(_))
    }

    fn lowest(&self, op: &Operator, k: usize, layout: BasisLayout) -> Result<Vec<EigenPair>> {
        let Operator::Tridiagonal(t) = op else {
            return Err(Error::Solver("ql needs a tridiagonal matrix".into()));
        };
        check_count(k, t.dim())?;
        let (values, vectors) = tql2(t.diag(), t.offdiag())?;
        let pairs = values
            .into_iter()
            .zip(vectors)
            .take(k)
            .map(|(v, x)| EigenPair::new(v, Amplitudes::Real(x), layout))
            .collect();
        Ok(finalize(pairs))
    }
}

/// All eigenpairs of the tridiagonal `(diag, offdiag)`, ascending.
/// Eigenvectors are returned as columns.
pub(crate) fn tql2(diag: &[f64], offdiag: &[f64]) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let n = diag.len();
    let mut d = diag.to_vec();
    let mut e = offdiag.to_vec();
    e.push(0.0);
    let mut z: Vec<Vec<f64>> = (0..n)
        .map(|j| {
            let mut c = vec![0.0; n];
            c[j] = 1.0;
            c
        })
        .collect();

    let eps = f64::EPSILON;
    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > 60 {
                    return Err(Error::Solver(format!("QL failed to converge at index {l}")));
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    let (left, right) = z.split_at_mut(i + 1);
                    let zi = &mut left[i];
                    let zi1 = &mut right[0];
                    for (a, b) in zi.iter_mut().zip(zi1.iter_mut()) {
                        let h = *b;
                        *b = s * *a + c * h;
                        *a = c * *a - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let values = order.iter().map(|&i| d[i]).collect();
    let vectors = order.iter().map(|&i| std::mem::take(&mut z[i])).collect();
    Ok((values, vectors))
}

#[cfg(test)]
fn eigen(t: &crate::matrix::TridiagonalMatrix) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    tql2(t.diag(), t.offdiag())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::TridiagonalMatrix;

    #[test]
    fn small_known_spectrum() {
        // Path graph P3: eigenvalues -sqrt2, 0, sqrt2.
        let t = TridiagonalMatrix::new(vec![0.0; 3], vec![1.0, 1.0]).unwrap();
        let (vals, vecs) = eigen(&t).unwrap();
        let s = 2f64.sqrt();
        for (a, b) in vals.iter().zip([-s, 0.0, s]) {
            assert!((a - b).abs() < 1e-14);
        }
        let dot: f64 = vecs[0].iter().zip(&vecs[2]).map(|(a, b)| a * b).sum();
        assert!(dot.abs() < 1e-14);
    }

    #[test]
    fn agrees_with_bisection() {
        let n = 60;
        let d: Vec<f64> = (0..n).map(|i| (i as f64 * 0.37).sin() * 3.0).collect();
        let e: Vec<f64> = (0..n - 1).map(|i| 1.0 + (i as f64 * 0.11).cos()).collect();
        let t = TridiagonalMatrix::new(d, e).unwrap();
        let (vals, _) = eigen(&t).unwrap();
        let bis = super::super::tridiagonal::lowest_eigenvalues(&t, n);
        for (a, b) in vals.iter().zip(&bis) {
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
    }
}
