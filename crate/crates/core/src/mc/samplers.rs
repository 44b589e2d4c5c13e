use num_complex::Complex64;

use super::dense::Mat;
use super::rng::GaussianRng;

/// d×k matrix of i.i.d. complex normals, density ∝ e^{−|z|²}.
pub fn sample_complex_ginibre(d: usize, k: usize, rng: &mut GaussianRng) -> Mat<Complex64> {
    Mat::from_fn(d, k, |_, _| rng.complex_normal())
}

/// d×k matrix of i.i.d. standard real normals.
pub fn sample_real_ginibre(d: usize, k: usize, rng: &mut GaussianRng) -> Mat<f64> {
    Mat::from_fn(d, k, |_, _| rng.std_normal())
}

/// Hermitian d×d matrix with density ∝ exp(−Tr H²/σ²):
/// diagonal N(0, σ²/2), off-diagonal real and imaginary parts N(0, σ²/4).
pub fn sample_gue(d: usize, sigma: f64, rng: &mut GaussianRng) -> Mat<Complex64> {
    let mut h = Mat::zeros(d, d);
    let diag_sd = sigma / std::f64::consts::SQRT_2;
    let off_sd = sigma / 2.0;
    for j in 0..d {
        h[(j, j)] = Complex64::new(diag_sd * rng.std_normal(), 0.0);
        for i in 0..j {
            let z = Complex64::new(off_sd * rng.std_normal(), off_sd * rng.std_normal());
            h[(i, j)] = z;
            h[(j, i)] = z.conj();
        }
    }
    h
}

/// Haar-distributed unitary from the QR factor of a complex Ginibre matrix.
/// Gram–Schmidt already yields a positive R diagonal, which is what makes
/// the Q factor Haar.
pub fn sample_haar_unitary(d: usize, rng: &mut GaussianRng) -> Mat<Complex64> {
    loop {
        let mut q = sample_complex_ginibre(d, d, rng);
        if q.orthonormalize().is_some() {
            return q;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mc::rng::RngStream;

    #[test]
    fn gue_is_hermitian() {
        let mut g = RngStream::new(1, 0).rng();
        let h = sample_gue(5, 1.3, &mut g);
        assert_eq!(h.sub(&h.adjoint()).frobenius(), 0.0);
    }

    #[test]
    fn haar_unitary_is_unitary() {
        let mut g = RngStream::new(2, 0).rng();
        let u = sample_haar_unitary(4, &mut g);
        let err = u.adjoint().matmul(&u).sub(&Mat::eye(4, 4)).frobenius();
        assert!(err < 1e-13);
    }
}
