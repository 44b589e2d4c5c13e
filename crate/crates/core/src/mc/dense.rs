//! Small dense column-major matrices over f64 or Complex64.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Mul, Sub};

use num_complex::Complex64;

pub trait Scalar:
    Copy + Debug + PartialEq + Send + Sync + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + AddAssign
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_f64(v: f64) -> Self;
    fn conj(self) -> Self;
    /// |x|²
    fn abs2(self) -> f64;
    fn re(self) -> f64;
    fn scale(self, s: f64) -> Self;
    fn is_finite(self) -> bool;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_f64(v: f64) -> Self {
        v
    }
    fn conj(self) -> Self {
        self
    }
    fn abs2(self) -> f64 {
        self * self
    }
    fn re(self) -> f64 {
        self
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_f64(v: f64) -> Self {
        Complex64::new(v, 0.0)
    }
    fn conj(self) -> Self {
        Complex64::conj(&self)
    }
    fn abs2(self) -> f64 {
        self.norm_sqr()
    }
    fn re(self) -> f64 {
        self.re
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn is_finite(self) -> bool {
        Complex64::is_finite(self)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    /// First `cols` columns of the identity.
    pub fn eye(rows: usize, cols: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows.min(cols) {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for j in 0..cols {
            for i in 0..rows {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn col(&self, j: usize) -> &[T] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn col_mut(&mut self, j: usize) -> &mut [T] {
        &mut self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn adjoint(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn matmul(&self, rhs: &Mat<T>) -> Mat<T> {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for j in 0..rhs.cols {
            for l in 0..self.cols {
                let b = rhs[(l, j)];
                let a_col = self.col(l);
                let o_col = out.col_mut(j);
                for i in 0..self.rows {
                    o_col[i] += a_col[i] * b;
                }
            }
        }
        out
    }

    /// Row i multiplied by s[i].
    pub fn scale_rows(&mut self, s: &[f64]) {
        assert_eq!(s.len(), self.rows);
        for j in 0..self.cols {
            for (x, si) in self.col_mut(j).iter_mut().zip(s) {
                *x = x.scale(*si);
            }
        }
    }

    pub fn scaled(&self, s: f64) -> Self {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.scale(s)).collect(),
        }
    }

    pub fn add(&self, rhs: &Mat<T>) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| *a + *b).collect(),
        }
    }

    pub fn sub(&self, rhs: &Mat<T>) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| *a - *b).collect(),
        }
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|x| x.abs2()).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }

    /// In-place modified Gram–Schmidt. The columns become orthonormal and
    /// the return value is Σ_j log r_jj, or `None` if a column is
    /// numerically dependent on the previous ones or not finite.
    pub fn orthonormalize(&mut self) -> Option<f64> {
        let mut log_volume = 0.0;
        for j in 0..self.cols {
            let raw = norm(self.col(j));
            if !(raw.is_finite() && raw > f64::MIN_POSITIVE) {
                return None;
            }
            for l in 0..j {
                let (head, tail) = self.data.split_at_mut(j * self.rows);
                let q = &head[l * self.rows..(l + 1) * self.rows];
                let v = &mut tail[..self.rows];
                let r = dot(q, v);
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi = *vi - *qi * r;
                }
            }
            let r_jj = norm(self.col(j));
            if !(r_jj.is_finite() && r_jj > raw * COLLAPSE_RATIO) {
                return None;
            }
            let inv = 1.0 / r_jj;
            self.col_mut(j).iter_mut().for_each(|x| *x = x.scale(inv));
            log_volume += r_jj.ln();
        }
        Some(log_volume)
    }

    /// ½ log det(M) for Hermitian positive definite M via Cholesky.
    /// `None` if M is not numerically positive definite.
    pub fn half_log_det_hpd(&self) -> Option<f64> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut l = Mat::<T>::zeros(n, n);
        let mut half_log_det = 0.0;
        for j in 0..n {
            let mut diag = self[(j, j)];
            for p in 0..j {
                diag = diag - l[(j, p)] * l[(j, p)].conj();
            }
            // real up to rounding
            let re = diag.re();
            if !(re.is_finite() && re > 0.0) {
                return None;
            }
            let ljj = re.sqrt();
            l[(j, j)] = T::from_f64(ljj);
            half_log_det += ljj.ln();
            for i in j + 1..n {
                let mut s = self[(i, j)];
                for p in 0..j {
                    s = s - l[(i, p)] * l[(j, p)].conj();
                }
                l[(i, j)] = s.scale(1.0 / ljj);
            }
        }
        Some(half_log_det)
    }
}

/// Below this ratio r_jj / ‖v_j‖ a column is treated as lying in the span
/// of the earlier ones.
const COLLAPSE_RATIO: f64 = 1.0 / (1u64 << 50) as f64;

/// ⟨a, b⟩ = Σ conj(a_i) b_i
pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (x, y)| acc + x.conj() * *y)
}

pub fn norm<T: Scalar>(a: &[T]) -> f64 {
    a.iter().map(|x| x.abs2()).sum::<f64>().sqrt()
}

impl<T> std::ops::Index<(usize, usize)> for Mat<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[j * self.rows + i]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[j * self.rows + i]
    }
}
