//! Dense linear algebra over MPFR floats: partial-pivoting LU, determinants
//! and solves. Sized for the Vandermonde systems of the exact formulas.

use rug::{Assign, Float};

use crate::error::{Error, Result};

/// Row-major square matrix of `Float`s.
#[derive(Debug, Clone)]
pub struct BigMatrix {
    n: usize,
    data: Vec<Float>,
}

impl BigMatrix {
    pub fn from_fn(n: usize, bits: u32, mut f: impl FnMut(usize, usize) -> Float) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(Float::with_val(bits, f(i, j)));
            }
        }
        BigMatrix { n, data }
    }

    /// Vandermonde matrix with row i = (y_j^i)_j, i = 0..n.
    pub fn vandermonde(y: &[Float]) -> Self {
        let n = y.len();
        let bits = y.first().map_or(64, Float::prec);
        let mut rows: Vec<Vec<Float>> = Vec::with_capacity(n);
        rows.push(vec![Float::with_val(bits, 1); n]);
        for i in 1..n {
            let next = rows[i - 1]
                .iter()
                .zip(y)
                .map(|(p, yj)| Float::with_val(bits, p * yj))
                .collect();
            rows.push(next);
        }
        BigMatrix {
            n,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Float {
        &self.data[i * self.n + j]
    }

    pub fn set_row(&mut self, i: usize, row: &[Float]) {
        let n = self.n;
        for (dst, src) in self.data[i * n..(i + 1) * n].iter_mut().zip(row) {
            dst.assign(src);
        }
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let bits = self.data.first().map_or(64, Float::prec);
        BigMatrix::from_fn(n, bits, |i, j| self.get(j, i).clone())
    }

    pub fn lu(&self) -> Result<Lu> {
        Lu::factor(self.clone())
    }

    pub fn det(&self) -> Float {
        match self.lu() {
            Ok(lu) => lu.det(),
            Err(_) => Float::with_val(self.data.first().map_or(64, Float::prec), 0),
        }
    }
}

/// PA = LU with unit lower-triangular L stored below the diagonal.
#[derive(Debug, Clone)]
pub struct Lu {
    n: usize,
    a: Vec<Float>,
    perm: Vec<usize>,
    swaps: usize,
}

impl Lu {
    fn factor(m: BigMatrix) -> Result<Self> {
        let n = m.n;
        let mut a = m.data;
        let mut perm: Vec<usize> = (0..n).collect();
        let mut swaps = 0;
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&r, &s| {
                    a[r * n + col]
                        .cmp_abs(&a[s * n + col])
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
                .expect("nonempty pivot range");
            if a[pivot * n + col].is_zero() {
                return Err(Error::domain(format!("singular matrix at column {col}")));
            }
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                }
                perm.swap(pivot, col);
                swaps += 1;
            }
            let (head, tail) = a.split_at_mut((col + 1) * n);
            let pivot_row = &head[col * n..];
            for row in tail.chunks_mut(n) {
                if row[col].is_zero() {
                    continue;
                }
                row[col] /= &pivot_row[col];
                let factor = row[col].clone();
                for j in col + 1..n {
                    row[j] -= &factor * &pivot_row[j];
                }
            }
        }
        Ok(Lu { n, a, perm, swaps })
    }

    pub fn det(&self) -> Float {
        let n = self.n;
        let bits = self.a.first().map_or(64, Float::prec);
        let mut det = Float::with_val(bits, if self.swaps.is_multiple_of(2) { 1 } else { -1 });
        for i in 0..n {
            det *= &self.a[i * n + i];
        }
        det
    }

    /// Solve A x = b.
    pub fn solve(&self, b: &[Float]) -> Vec<Float> {
        let n = self.n;
        let mut x: Vec<Float> = self.perm.iter().map(|&p| b[p].clone()).collect();
        for i in 0..n {
            for j in 0..i {
                let t = Float::with_val(x[i].prec(), &self.a[i * n + j] * &x[j]);
                x[i] -= t;
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let t = Float::with_val(x[i].prec(), &self.a[i * n + j] * &x[j]);
                x[i] -= t;
            }
            x[i] /= &self.a[i * n + i];
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BITS: u32 = 256;

    fn floats(v: &[f64]) -> Vec<Float> {
        v.iter().map(|x| Float::with_val(BITS, *x)).collect()
    }

    #[test]
    fn vandermonde_determinant_matches_product_formula() {
        let y = floats(&[0.3, 1.0, 2.5, 4.0, 7.25]);
        let det = BigMatrix::vandermonde(&y).det();
        let mut prod = Float::with_val(BITS, 1);
        for i in 0..y.len() {
            for j in i + 1..y.len() {
                prod *= Float::with_val(BITS, &y[j] - &y[i]);
            }
        }
        let rel = Float::with_val(BITS, (det - &prod) / prod).abs();
        assert!(rel < 1e-70, "relative error {rel}");
    }

    #[test]
    fn solve_recovers_known_vector() {
        let m = BigMatrix::from_fn(3, BITS, |i, j| Float::with_val(BITS, [[2, 1, 0], [1, 3, 1], [0, 1, 4]][i][j]));
        let x_true = floats(&[1.0, -2.0, 0.5]);
        let b: Vec<Float> = (0..3)
            .map(|i| {
                (0..3).fold(Float::with_val(BITS, 0), |acc, j| acc + Float::with_val(BITS, m.get(i, j) * &x_true[j]))
            })
            .collect();
        let x = m.lu().unwrap().solve(&b);
        for (a, e) in x.iter().zip(&x_true) {
            assert!(Float::with_val(BITS, a - e).abs() < 1e-70);
        }
    }

    #[test]
    fn singular_matrix_is_reported() {
        let m = BigMatrix::from_fn(2, BITS, |_, _| Float::with_val(BITS, 1));
        assert!(m.lu().is_err());
        assert!(m.det().is_zero());
    }
}
