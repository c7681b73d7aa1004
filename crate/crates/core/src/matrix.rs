use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Real symmetric tridiagonal matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalMatrix {
    diag: Vec<f64>,
    offdiag: Vec<f64>,
}

impl TridiagonalMatrix {
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::InvalidParameter("empty tridiagonal matrix".into()));
        }
        if offdiag.len() + 1 != diag.len() {
            return Err(Error::InvalidParameter(format!(
                "off-diagonal length {} does not match dimension {}",
                offdiag.len(),
                diag.len()
            )));
        }
        if let Some(i) = diag.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { row: i, col: i });
        }
        if let Some(i) = offdiag.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { row: i, col: i + 1 });
        }
        Ok(Self { diag, offdiag })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[f64] {
        &self.offdiag
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        let n = self.dim();
        let mut y: Vec<f64> = self.diag.iter().zip(x).map(|(d, v)| d * v).collect();
        for i in 0..n - 1 {
            y[i] += self.offdiag[i] * x[i + 1];
            y[i + 1] += self.offdiag[i] * x[i];
        }
        y
    }

    /// Largest absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i].abs();
                if i > 0 {
                    s += self.offdiag[i - 1].abs();
                }
                if i + 1 < n {
                    s += self.offdiag[i].abs();
                }
                s
            })
            .fold(0.0, f64::max)
    }

    /// Gershgorin enclosure of the spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.dim();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let mut r = 0.0;
            if i > 0 {
                r += self.offdiag[i - 1].abs();
            }
            if i + 1 < n {
                r += self.offdiag[i].abs();
            }
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = self.diag[i];
        }
        for i in 0..n - 1 {
            m[(i, i + 1)] = self.offdiag[i];
            m[(i + 1, i)] = self.offdiag[i];
        }
        m
    }
}

/// Upper band of a Hermitian matrix: `data[i * (kd + 1) + d] = H(i, i + d)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BandStorage {
    n: usize,
    kd: usize,
    data: Vec<Complex64>,
}

impl BandStorage {
    pub fn zeros(n: usize, kd: usize) -> Self {
        Self {
            n,
            kd,
            data: vec![Complex64::new(0.0, 0.0); n * (kd + 1)],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn bandwidth(&self) -> usize {
        self.kd
    }

    /// Entry `H(i, i + d)` for `d <= kd`.
    #[inline]
    pub fn upper(&self, i: usize, d: usize) -> Complex64 {
        self.data[i * (self.kd + 1) + d]
    }

    #[inline]
    fn upper_mut(&mut self, i: usize, d: usize) -> &mut Complex64 {
        &mut self.data[i * (self.kd + 1) + d]
    }

    fn get(&self, i: usize, j: usize) -> Complex64 {
        if j >= i {
            if j - i <= self.kd {
                self.upper(i, j - i)
            } else {
                Complex64::new(0.0, 0.0)
            }
        } else if i - j <= self.kd {
            self.upper(j, i - j).conj()
        } else {
            Complex64::new(0.0, 0.0)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum HermitianStorage {
    Dense(DMatrix<Complex64>),
    Banded(BandStorage),
}

/// Hermitian matrix with dense or banded storage.
///
/// Entries are written through [`HermitianBuilder`], which sets `(i, j)` and
/// `(j, i)` from the same value so Hermiticity holds exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    storage: HermitianStorage,
    real: bool,
}

/// Below this dimension builders produce dense storage.
pub const DENSE_STORAGE_LIMIT: usize = 1024;

impl HermitianMatrix {
    pub fn identity(n: usize) -> Self {
        let mut b = HermitianBuilder::new(n, 0);
        for i in 0..n {
            b.set(i, i, Complex64::new(1.0, 0.0));
        }
        b.finish().expect("identity is finite")
    }

    /// Wraps an arbitrary dense matrix, rejecting it unless exactly Hermitian and finite.
    pub fn from_dense(m: DMatrix<Complex64>) -> Result<Self> {
        if m.nrows() != m.ncols() || m.nrows() == 0 {
            return Err(Error::InvalidParameter("matrix must be square and non-empty".into()));
        }
        let n = m.nrows();
        for i in 0..n {
            for j in 0..n {
                let v = m[(i, j)];
                if !(v.re.is_finite() && v.im.is_finite()) {
                    return Err(Error::NonFinite { row: i, col: j });
                }
                if v != m[(j, i)].conj() {
                    return Err(Error::InvalidParameter(format!(
                        "matrix is not Hermitian at ({i}, {j})"
                    )));
                }
            }
        }
        let real = m.iter().all(|v| v.im == 0.0);
        Ok(Self {
            storage: HermitianStorage::Dense(m),
            real,
        })
    }

    pub fn dim(&self) -> usize {
        match &self.storage {
            HermitianStorage::Dense(m) => m.nrows(),
            HermitianStorage::Banded(b) => b.dim(),
        }
    }

    pub fn storage(&self) -> &HermitianStorage {
        &self.storage
    }

    pub fn is_banded(&self) -> bool {
        matches!(self.storage, HermitianStorage::Banded(_))
    }

    /// True when every entry has zero imaginary part.
    pub fn is_real(&self) -> bool {
        self.real
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        match &self.storage {
            HermitianStorage::Dense(m) => m[(i, j)],
            HermitianStorage::Banded(b) => b.get(i, j),
        }
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        match &self.storage {
            HermitianStorage::Dense(m) => m.clone(),
            HermitianStorage::Banded(b) => {
                let n = b.dim();
                DMatrix::from_fn(n, n, |i, j| b.get(i, j))
            }
        }
    }

    pub fn to_dense_real(&self) -> Option<DMatrix<f64>> {
        if !self.real {
            return None;
        }
        let n = self.dim();
        Some(DMatrix::from_fn(n, n, |i, j| self.get(i, j).re))
    }

    /// Smallest `kd` such that all entries with `|i - j| > kd` vanish.
    pub fn bandwidth(&self) -> usize {
        match &self.storage {
            HermitianStorage::Banded(b) => b.bandwidth(),
            HermitianStorage::Dense(m) => {
                let n = m.nrows();
                let mut kd = 0;
                for i in 0..n {
                    for j in i + 1..n {
                        if m[(i, j)] != Complex64::new(0.0, 0.0) {
                            kd = kd.max(j - i);
                        }
                    }
                }
                kd
            }
        }
    }

    /// Band view of this matrix, copying when stored dense.
    pub fn to_band(&self) -> BandStorage {
        match &self.storage {
            HermitianStorage::Banded(b) => b.clone(),
            HermitianStorage::Dense(m) => {
                let n = m.nrows();
                let kd = self.bandwidth();
                let mut b = BandStorage::zeros(n, kd);
                for i in 0..n {
                    for d in 0..=kd.min(n - 1 - i) {
                        *b.upper_mut(i, d) = m[(i, i + d)];
                    }
                }
                b
            }
        }
    }

    pub fn matvec(&self, x: &[Complex64]) -> Vec<Complex64> {
        match &self.storage {
            HermitianStorage::Dense(m) => {
                let n = m.nrows();
                (0..n)
                    .map(|i| (0..n).map(|j| m[(i, j)] * x[j]).sum())
                    .collect()
            }
            HermitianStorage::Banded(b) => band_matvec(b, x),
        }
    }

    /// `max |H(i,j) - conj(H(j,i))|`.
    pub fn max_asymmetry(&self) -> f64 {
        let n = self.dim();
        match &self.storage {
            HermitianStorage::Dense(m) => {
                let mut worst: f64 = 0.0;
                for i in 0..n {
                    for j in 0..n {
                        worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
                    }
                }
                worst
            }
            HermitianStorage::Banded(b) => (0..n)
                .map(|i| 2.0 * b.upper(i, 0).im.abs())
                .fold(0.0, f64::max),
        }
    }

    /// Gershgorin enclosure of the (real) spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.dim();
        let kd = self.bandwidth();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let j0 = i.saturating_sub(kd);
            let j1 = (i + kd + 1).min(n);
            let r: f64 = (j0..j1).filter(|&j| j != i).map(|j| self.get(i, j).norm()).sum();
            let d = self.get(i, i).re;
            lo = lo.min(d - r);
            hi = hi.max(d + r);
        }
        (lo, hi)
    }
}

pub(crate) fn band_matvec(b: &BandStorage, x: &[Complex64]) -> Vec<Complex64> {
    let n = b.dim();
    let kd = b.bandwidth();
    let mut y = vec![Complex64::new(0.0, 0.0); n];
    for i in 0..n {
        y[i] += b.upper(i, 0) * x[i];
        for d in 1..=kd.min(n - 1 - i) {
            let h = b.upper(i, d);
            y[i] += h * x[i + d];
            y[i + d] += h.conj() * x[i];
        }
    }
    y
}

/// Accumulates entries of a Hermitian matrix of known bandwidth.
pub struct HermitianBuilder {
    n: usize,
    kd: usize,
    band: BandStorage,
}

impl HermitianBuilder {
    pub fn new(n: usize, kd: usize) -> Self {
        let kd = kd.min(n.saturating_sub(1));
        Self {
            n,
            kd,
            band: BandStorage::zeros(n, kd),
        }
    }

    /// Adds `v` at `(i, j)` and `conj(v)` at `(j, i)`. Diagonal entries must be real.
    pub fn add(&mut self, i: usize, j: usize, v: Complex64) {
        let (r, c, v) = if i <= j { (i, j, v) } else { (j, i, v.conj()) };
        assert!(c - r <= self.kd, "entry ({i}, {j}) outside bandwidth {}", self.kd);
        if r == c {
            assert!(v.im == 0.0, "diagonal entry ({i}, {i}) must be real");
        }
        *self.band.upper_mut(r, c - r) += v;
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        let (r, c, v) = if i <= j { (i, j, v) } else { (j, i, v.conj()) };
        assert!(c - r <= self.kd, "entry ({i}, {j}) outside bandwidth {}", self.kd);
        *self.band.upper_mut(r, c - r) = v;
    }

    /// Dense storage below [`DENSE_STORAGE_LIMIT`], banded at and above it.
    pub fn finish(self) -> Result<HermitianMatrix> {
        let dense = self.n < DENSE_STORAGE_LIMIT;
        self.finish_with(dense)
    }

    pub fn finish_with(self, dense: bool) -> Result<HermitianMatrix> {
        let b = self.band;
        for i in 0..self.n {
            for d in 0..=self.kd.min(self.n - 1 - i) {
                let v = b.upper(i, d);
                if !(v.re.is_finite() && v.im.is_finite()) {
                    return Err(Error::NonFinite { row: i, col: i + d });
                }
            }
        }
        let real = b.data.iter().all(|v| v.im == 0.0);
        let storage = if dense {
            let n = self.n;
            HermitianStorage::Dense(DMatrix::from_fn(n, n, |i, j| b.get(i, j)))
        } else {
            HermitianStorage::Banded(b)
        };
        Ok(HermitianMatrix { storage, real })
    }
}
