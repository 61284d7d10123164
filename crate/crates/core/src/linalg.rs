//! Minimal dense-matrix and banded-solve support.
//!
//! Problem sizes here are small (a few hundred rows at most), so everything
//! is a plain row-major `Vec<f64>` with deterministic, allocation-light
//! routines: matrix/vector products, a Thomas factorization for tridiagonal
//! systems, and a power iteration for the largest singular value.

use crate::{Error, Result};

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    n_rows: usize,
    n_cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        Self { n_rows, n_cols, data: vec![0.0; n_rows * n_cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n_cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.n_cols + j] = value;
    }

    #[inline]
    pub fn add_to(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.n_cols + j] += value;
    }

    pub fn matvec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.n_cols, "matvec dimension mismatch");
        let mut out = vec![0.0; self.n_rows];
        for (i, out_i) in out.iter_mut().enumerate() {
            let row = &self.data[i * self.n_cols..(i + 1) * self.n_cols];
            let mut acc = 0.0;
            for (a, b) in row.iter().zip(v.iter()) {
                acc += a * b;
            }
            *out_i = acc;
        }
        out
    }

    /// Transposed product `Aᵀ v` without forming the transpose.
    pub fn matvec_t(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.n_rows, "matvec_t dimension mismatch");
        let mut out = vec![0.0; self.n_cols];
        for (i, vi) in v.iter().enumerate() {
            let row = &self.data[i * self.n_cols..(i + 1) * self.n_cols];
            for (out_j, a) in out.iter_mut().zip(row.iter()) {
                *out_j += a * vi;
            }
        }
        out
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n_cols, other.n_rows, "matmul dimension mismatch");
        let mut out = Matrix::zeros(self.n_rows, other.n_cols);
        for i in 0..self.n_rows {
            for k in 0..self.n_cols {
                let aik = self.get(i, k);
                if aik == 0.0 {
                    continue;
                }
                for j in 0..other.n_cols {
                    out.add_to(i, j, aik * other.get(k, j));
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n_rows, other.n_rows);
        assert_eq!(self.n_cols, other.n_cols);
        let data = self
            .data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| a - b)
            .collect();
        Matrix { n_rows: self.n_rows, n_cols: self.n_cols, data }
    }

    /// Largest singular value, by power iteration on `AᵀA`.
    ///
    /// Deterministic all-ones start vector, relative tolerance `1e-10`,
    /// at most 10 000 iterations.
    pub fn operator_norm(&self) -> f64 {
        let tol = 1e-10;
        let max_iter = 10_000;
        let mut v = vec![1.0; self.n_cols];
        normalize(&mut v);
        let mut sigma = 0.0_f64;
        for _ in 0..max_iter {
            let u = self.matvec_t(&self.matvec(&v));
            let norm_u = euclidean_norm(&u);
            if norm_u == 0.0 {
                return 0.0;
            }
            let sigma_new = norm_u.sqrt();
            v = u;
            for x in v.iter_mut() {
                *x /= norm_u;
            }
            if (sigma_new - sigma).abs() <= tol * sigma_new {
                return sigma_new;
            }
            sigma = sigma_new;
        }
        sigma
    }
}

pub fn euclidean_norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn normalize(v: &mut [f64]) {
    let n = euclidean_norm(v);
    if n > 0.0 {
        for x in v.iter_mut() {
            *x /= n;
        }
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len(), "dot dimension mismatch");
    a.iter().zip(b.iter()).map(|(x, y)| x * y).sum()
}

/// Cached Thomas factorization of a tridiagonal system.
///
/// The forward-elimination coefficients are computed once, so repeated
/// solves against the same matrix are bit-identical.
#[derive(Debug, Clone)]
pub struct TridiagFactor {
    sub: Vec<f64>,     // length n-1, sub[i] multiplies x[i] in row i+1
    c_prime: Vec<f64>, // swept superdiagonal, length n-1
    denom: Vec<f64>,   // length n, pivots after elimination
}

impl TridiagFactor {
    /// Factor the matrix with diagonals `(sub, diag, sup)`.
    pub fn new(sub: &[f64], diag: &[f64], sup: &[f64]) -> Result<Self> {
        let n = diag.len();
        assert!(n >= 1, "empty tridiagonal system");
        assert_eq!(sub.len(), n - 1);
        assert_eq!(sup.len(), n - 1);
        let mut c_prime = vec![0.0; n - 1];
        let mut denom = vec![0.0; n];
        denom[0] = diag[0];
        check_pivot(denom[0], 0)?;
        if n > 1 {
            c_prime[0] = sup[0] / denom[0];
        }
        for i in 1..n {
            denom[i] = diag[i] - sub[i - 1] * c_prime[i - 1];
            check_pivot(denom[i], i)?;
            if i < n - 1 {
                c_prime[i] = sup[i] / denom[i];
            }
        }
        Ok(Self { sub: sub.to_vec(), c_prime, denom })
    }

    pub fn len(&self) -> usize {
        self.denom.len()
    }

    pub fn is_empty(&self) -> bool {
        self.denom.is_empty()
    }

    pub fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        let n = self.denom.len();
        assert_eq!(rhs.len(), n, "tridiagonal solve dimension mismatch");
        let mut x = vec![0.0; n];
        x[0] = rhs[0] / self.denom[0];
        for i in 1..n {
            x[i] = (rhs[i] - self.sub[i - 1] * x[i - 1]) / self.denom[i];
        }
        for i in (0..n - 1).rev() {
            x[i] -= self.c_prime[i] * x[i + 1];
        }
        x
    }
}

fn check_pivot(p: f64, row: usize) -> Result<()> {
    if !p.is_finite() || p.abs() < 1e-300 {
        return Err(Error::Singular(format!("vanishing pivot {p:e} at row {row}")));
    }
    Ok(())
}
