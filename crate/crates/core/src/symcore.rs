//! Dense real symmetric matrices.
//!
//! [`SymMat`] is the atom every pencil is built from. Storage is a full
//! row-major `k × k` buffer that is kept exactly symmetric: constructors
//! average `M` with its transpose and reject inputs that were not symmetric
//! to begin with (beyond [`SYMMETRY_TOLERANCE`]).
//!
//! The eigensolver is the classical Householder tridiagonalization followed
//! by implicit QL iterations with Wilkinson-style shifts.

use std::fmt;
use std::ops::{Add, Index, Sub};

use crate::error::{Error, Result};

/// Largest `|M[i][j] - M[j][i]|` accepted by the checked constructors.
pub const SYMMETRY_TOLERANCE: f64 = 1e-12;

#[derive(Clone, PartialEq)]
pub struct SymMat {
    dim: usize,
    data: Vec<f64>,
}

impl fmt::Debug for SymMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

impl SymMat {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "SymMat dimension must be at least 1");
        SymMat {
            dim,
            data: vec![0.0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = 1.0;
        }
        m
    }

    pub fn diag(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m.data[i * values.len() + i] = v;
        }
        m
    }

    /// Symmetric unit matrix `E_ij + E_ji` (or `E_ii` on the diagonal).
    pub fn unit(dim: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(dim);
        m.data[i * dim + j] = 1.0;
        m.data[j * dim + i] = 1.0;
        m
    }

    /// Builds a matrix from `f(i, j)` evaluated on the upper triangle.
    pub fn from_upper_fn(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in i..dim {
                let v = f(i, j);
                m.data[i * dim + j] = v;
                m.data[j * dim + i] = v;
            }
        }
        m
    }

    /// Checked constructor from rows. Rejects ragged or empty input,
    /// non-finite entries, and asymmetry above [`SYMMETRY_TOLERANCE`];
    /// the result is symmetrized exactly.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::EmptyMatrix);
        }
        let mut data = Vec::with_capacity(dim * dim);
        for (row, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != dim {
                return Err(Error::NotSquare {
                    row,
                    len: r.len(),
                    expected: dim,
                });
            }
            data.extend_from_slice(r);
        }
        Self::from_row_major(dim, data)
    }

    pub fn from_row_major(dim: usize, data: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyMatrix);
        }
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                what: "row-major buffer length",
                expected: dim * dim,
                found: data.len(),
            });
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("matrix entries"));
        }
        let mut asymmetry = 0.0_f64;
        for i in 0..dim {
            for j in (i + 1)..dim {
                asymmetry = asymmetry.max((data[i * dim + j] - data[j * dim + i]).abs());
            }
        }
        if asymmetry > SYMMETRY_TOLERANCE {
            return Err(Error::Asymmetric {
                asymmetry,
                tolerance: SYMMETRY_TOLERANCE,
            });
        }
        let mut m = SymMat { dim, data };
        m.symmetrize();
        Ok(m)
    }

    fn symmetrize(&mut self) {
        let n = self.dim;
        for i in 0..n {
            for j in (i + 1)..n {
                let a = self.data[i * n + j];
                let b = self.data[j * n + i];
                if a != b {
                    let v = 0.5 * (a + b);
                    self.data[i * n + j] = v;
                    self.data[j * n + i] = v;
                }
            }
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    /// Row-major view of all `k²` entries.
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks(self.dim)
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.rows().map(|r| r.to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0.0)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Frobenius inner product `tr(self · other)`.
    pub fn dot(&self, other: &SymMat) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch in dot");
        self.data.iter().zip(&other.data).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, s: f64) -> SymMat {
        SymMat {
            dim: self.dim,
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }

    /// `self += s * other`
    pub fn axpy(&mut self, s: f64, other: &SymMat) {
        assert_eq!(self.dim, other.dim, "dimension mismatch in axpy");
        if s == 0.0 {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += s * b;
        }
    }

    pub fn shift_diagonal(&self, t: f64) -> SymMat {
        let mut m = self.clone();
        for i in 0..self.dim {
            m.data[i * self.dim + i] += t;
        }
        m
    }

    /// Copy of the principal submatrix on rows/columns `start..start + len`.
    pub fn principal_block(&self, start: usize, len: usize) -> SymMat {
        SymMat::from_upper_fn(len, |i, j| self.get(start + i, start + j))
    }

    /// Smallest eigenvalue.
    pub fn lambda_min(&self) -> f64 {
        self.eigenvalues()[0]
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut work = Tridiagonal::reduce(self, false);
        work.diagonalize(false);
        work.sort();
        work.d
    }

    /// Full eigendecomposition, eigenvalues ascending.
    pub fn eigen(&self) -> SymEigen {
        let mut work = Tridiagonal::reduce(self, true);
        work.diagonalize(true);
        work.sort();
        SymEigen {
            dim: self.dim,
            values: work.d,
            vectors: work.v,
        }
    }

    pub fn is_psd(&self, tol: f64) -> bool {
        is_psd(self, tol)
    }
}

impl Index<(usize, usize)> for SymMat {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.dim + j]
    }
}

impl Add for &SymMat {
    type Output = SymMat;
    fn add(self, rhs: &SymMat) -> SymMat {
        let mut out = self.clone();
        out.axpy(1.0, rhs);
        out
    }
}

impl Sub for &SymMat {
    type Output = SymMat;
    fn sub(self, rhs: &SymMat) -> SymMat {
        let mut out = self.clone();
        out.axpy(-1.0, rhs);
        out
    }
}

/// Smallest eigenvalue of `m`.
pub fn lambda_min(m: &SymMat) -> f64 {
    m.lambda_min()
}

/// `true` iff `lambda_min(m) >= -tol`.
pub fn is_psd(m: &SymMat, tol: f64) -> bool {
    debug_assert!(tol >= 0.0);
    m.lambda_min() >= -tol
}

/// Direct sum of `blocks`; off-block entries are zero.
pub fn block_diag(blocks: &[SymMat]) -> Result<SymMat> {
    if blocks.is_empty() {
        return Err(Error::NoBlocks);
    }
    let dim: usize = blocks.iter().map(SymMat::dim).sum();
    let mut out = SymMat::zeros(dim);
    let mut offset = 0;
    for b in blocks {
        let k = b.dim();
        for i in 0..k {
            let row = (offset + i) * dim + offset;
            out.data[row..row + k].copy_from_slice(&b.data[i * k..(i + 1) * k]);
        }
        offset += k;
    }
    Ok(out)
}

/// Eigendecomposition `M = V diag(values) Vᵀ`.
#[derive(Debug, Clone)]
pub struct SymEigen {
    dim: usize,
    /// Ascending.
    pub values: Vec<f64>,
    /// Row-major; column `j` is the eigenvector of `values[j]`.
    vectors: Vec<f64>,
}

impl SymEigen {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vector(&self, j: usize) -> Vec<f64> {
        (0..self.dim)
            .map(|i| self.vectors[i * self.dim + j])
            .collect()
    }

    #[inline]
    pub fn vector_entry(&self, i: usize, j: usize) -> f64 {
        self.vectors[i * self.dim + j]
    }

    /// `Σ_j w_j v_j v_jᵀ`.
    pub fn weighted_projector(&self, weights: &[f64]) -> SymMat {
        let n = self.dim;
        SymMat::from_upper_fn(n, |a, b| {
            (0..n)
                .filter(|&j| weights[j] != 0.0)
                .map(|j| weights[j] * self.vector_entry(a, j) * self.vector_entry(b, j))
                .sum()
        })
    }

    /// `Vᵀ M V`, the matrix `m` expressed in the eigenbasis.
    pub fn rotate(&self, m: &SymMat) -> SymMat {
        let n = self.dim;
        // tmp = M V
        let mut tmp = vec![0.0; n * n];
        for i in 0..n {
            for l in 0..n {
                let mil = m.get(i, l);
                if mil == 0.0 {
                    continue;
                }
                let vrow = &self.vectors[l * n..(l + 1) * n];
                let trow = &mut tmp[i * n..(i + 1) * n];
                for (t, v) in trow.iter_mut().zip(vrow) {
                    *t += mil * v;
                }
            }
        }
        // Vᵀ tmp, upper triangle only
        SymMat::from_upper_fn(n, |a, b| {
            (0..n)
                .map(|i| self.vectors[i * n + a] * tmp[i * n + b])
                .sum()
        })
    }
}

/// Working storage for the tridiagonal reduction and QL sweeps.
struct Tridiagonal {
    n: usize,
    d: Vec<f64>,
    e: Vec<f64>,
    /// Row-major accumulated orthogonal transform (only meaningful when
    /// vectors were requested).
    v: Vec<f64>,
}

// Index loops mirror the textbook algorithm.
#[allow(clippy::needless_range_loop)]
impl Tridiagonal {
    /// Householder reduction to symmetric tridiagonal form.
    fn reduce(m: &SymMat, want_vectors: bool) -> Self {
        let n = m.dim;
        let mut v = m.data.clone();
        let mut d = vec![0.0; n];
        let mut e = vec![0.0; n];
        let idx = |i: usize, j: usize| i * n + j;

        for j in 0..n {
            d[j] = v[idx(n - 1, j)];
        }

        for i in (1..n).rev() {
            let mut scale = 0.0;
            let mut h = 0.0;
            for k in 0..i {
                scale += d[k].abs();
            }
            if scale == 0.0 {
                e[i] = d[i - 1];
                for j in 0..i {
                    d[j] = v[idx(i - 1, j)];
                    v[idx(i, j)] = 0.0;
                    v[idx(j, i)] = 0.0;
                }
            } else {
                for k in 0..i {
                    d[k] /= scale;
                    h += d[k] * d[k];
                }
                let mut f = d[i - 1];
                let mut g = h.sqrt();
                if f > 0.0 {
                    g = -g;
                }
                e[i] = scale * g;
                h -= f * g;
                d[i - 1] = f - g;
                for ej in e.iter_mut().take(i) {
                    *ej = 0.0;
                }

                for j in 0..i {
                    f = d[j];
                    v[idx(j, i)] = f;
                    g = e[j] + v[idx(j, j)] * f;
                    for k in (j + 1)..i {
                        g += v[idx(k, j)] * d[k];
                        e[k] += v[idx(k, j)] * f;
                    }
                    e[j] = g;
                }
                f = 0.0;
                for j in 0..i {
                    e[j] /= h;
                    f += e[j] * d[j];
                }
                let hh = f / (h + h);
                for j in 0..i {
                    e[j] -= hh * d[j];
                }
                for j in 0..i {
                    f = d[j];
                    g = e[j];
                    for k in j..i {
                        v[idx(k, j)] -= f * e[k] + g * d[k];
                    }
                    d[j] = v[idx(i - 1, j)];
                    v[idx(i, j)] = 0.0;
                }
            }
            d[i] = h;
        }

        if want_vectors {
            for i in 0..n.saturating_sub(1) {
                v[idx(n - 1, i)] = v[idx(i, i)];
                v[idx(i, i)] = 1.0;
                let h = d[i + 1];
                if h != 0.0 {
                    for k in 0..=i {
                        d[k] = v[idx(k, i + 1)] / h;
                    }
                    for j in 0..=i {
                        let mut g = 0.0;
                        for k in 0..=i {
                            g += v[idx(k, i + 1)] * v[idx(k, j)];
                        }
                        for k in 0..=i {
                            v[idx(k, j)] -= g * d[k];
                        }
                    }
                }
                for k in 0..=i {
                    v[idx(k, i + 1)] = 0.0;
                }
            }
        } else {
            // The diagonal still has to be recovered from the last row.
            for i in 0..n.saturating_sub(1) {
                v[idx(n - 1, i)] = v[idx(i, i)];
            }
        }
        for j in 0..n {
            d[j] = v[idx(n - 1, j)];
            v[idx(n - 1, j)] = 0.0;
        }
        if want_vectors {
            v[idx(n - 1, n - 1)] = 1.0;
        }
        e[0] = 0.0;

        Tridiagonal { n, d, e, v }
    }

    /// Implicit QL iterations on the tridiagonal form.
    fn diagonalize(&mut self, want_vectors: bool) {
        let n = self.n;
        let (d, e, v) = (&mut self.d, &mut self.e, &mut self.v);
        for i in 1..n {
            e[i - 1] = e[i];
        }
        e[n - 1] = 0.0;

        let mut f = 0.0;
        let mut tst1 = 0.0_f64;
        let eps = f64::EPSILON;
        for l in 0..n {
            tst1 = tst1.max(d[l].abs() + e[l].abs());
            let mut m = l;
            while m < n {
                if e[m].abs() <= eps * tst1 {
                    break;
                }
                m += 1;
            }
            let m = m.min(n - 1);

            if m > l {
                let mut sweeps = 0;
                loop {
                    sweeps += 1;
                    let mut g = d[l];
                    let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                    let mut r = p.hypot(1.0);
                    if p < 0.0 {
                        r = -r;
                    }
                    d[l] = e[l] / (p + r);
                    d[l + 1] = e[l] * (p + r);
                    let dl1 = d[l + 1];
                    let mut h = g - d[l];
                    for di in d.iter_mut().take(n).skip(l + 2) {
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
                        g = c * e[i];
                        h = c * p;
                        r = p.hypot(e[i]);
                        e[i + 1] = s * r;
                        s = e[i] / r;
                        c = p / r;
                        p = c * d[i] - s * g;
                        d[i + 1] = h + s * (c * g + s * d[i]);
                        if want_vectors {
                            for k in 0..n {
                                let h = v[k * n + i + 1];
                                v[k * n + i + 1] = s * v[k * n + i] + c * h;
                                v[k * n + i] = c * v[k * n + i] - s * h;
                            }
                        }
                    }
                    p = -s * s2 * c3 * el1 * e[l] / dl1;
                    e[l] = s * p;
                    d[l] = c * p;

                    if e[l].abs() <= eps * tst1 || sweeps > 60 {
                        break;
                    }
                }
            }
            d[l] += f;
            e[l] = 0.0;
        }
    }

    fn sort(&mut self) {
        let n = self.n;
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| self.d[a].total_cmp(&self.d[b]));
        if order.iter().enumerate().all(|(i, &o)| i == o) {
            return;
        }
        let d: Vec<f64> = order.iter().map(|&o| self.d[o]).collect();
        let mut v = vec![0.0; n * n];
        for (newj, &oldj) in order.iter().enumerate() {
            for i in 0..n {
                v[i * n + newj] = self.v[i * n + oldj];
            }
        }
        self.d = d;
        self.v = v;
    }
}
