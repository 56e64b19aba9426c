//! Haar-random unitaries and random states.
//!
//! All samplers take any [`RngCore`]; seeding is the caller's business.

use alloc::vec::Vec;
use core::f64::consts::PI;

use rand_core::RngCore;

use crate::linalg::{CMatrix, C64};

/// Uniform sample in `[0, 1)` with 53 random bits.
pub fn uniform<R: RngCore + ?Sized>(rng: &mut R) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Standard normal sample (Box-Muller).
pub fn standard_normal<R: RngCore + ?Sized>(rng: &mut R) -> f64 {
    let u1 = 1.0 - uniform(rng); // (0, 1]
    let u2 = uniform(rng);
    libm::sqrt(-2.0 * libm::log(u1)) * libm::cos(2.0 * PI * u2)
}

/// Complex Gaussian with independent standard normal real and imaginary parts.
pub fn complex_normal<R: RngCore + ?Sized>(rng: &mut R) -> C64 {
    C64::new(standard_normal(rng), standard_normal(rng))
}

/// `rows × cols` matrix of i.i.d. complex Gaussians.
pub fn ginibre<R: RngCore + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| complex_normal(rng))
}

/// Haar-distributed `n × n` unitary.
///
/// Gram-Schmidt on the columns of a Ginibre matrix is the QR factorization with a
/// positive real diagonal in `R`, which is the phase fixing that makes `Q` Haar.
pub fn haar_unitary<R: RngCore + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    let g = ginibre(n, n, rng);
    let mut cols: Vec<Vec<C64>> = (0..n).map(|j| (0..n).map(|i| g[(i, j)]).collect()).collect();
    for j in 0..n {
        // two passes of modified Gram-Schmidt keep the columns orthogonal to roundoff
        for _ in 0..2 {
            for k in 0..j {
                let (done, rest) = cols.split_at_mut(j);
                let qk = &done[k];
                let proj: C64 = qk.iter().zip(rest[0].iter()).map(|(a, b)| a.conj() * b).sum();
                for (x, q) in rest[0].iter_mut().zip(qk) {
                    *x -= proj * q;
                }
            }
        }
        let norm = libm::sqrt(cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>());
        for x in cols[j].iter_mut() {
            *x /= norm;
        }
    }
    CMatrix::from_fn(n, n, |i, j| cols[j][i])
}

/// Haar-random unit vector in `C^n`.
pub fn random_pure_state<R: RngCore + ?Sized>(n: usize, rng: &mut R) -> Vec<C64> {
    loop {
        let v: Vec<C64> = (0..n).map(|_| complex_normal(rng)).collect();
        let norm = libm::sqrt(v.iter().map(|z| z.norm_sqr()).sum::<f64>());
        if norm > 1e-12 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

/// Projector onto a Haar-random pure state.
pub fn random_pure_density<R: RngCore + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    CMatrix::outer(&random_pure_state(n, rng))
}

/// Reduced state of a Haar-random pure state on `C^n ⊗ C^ancilla`.
///
/// `ancilla = 1` gives a pure state; larger ancillas give full-rank mixed states with rank
/// at most `ancilla`.
pub fn random_mixed_density<R: RngCore + ?Sized>(n: usize, ancilla: usize, rng: &mut R) -> CMatrix {
    let psi = random_pure_state(n * ancilla.max(1), rng);
    CMatrix::outer(&psi).partial_trace_second(n, ancilla.max(1))
}

/// Random Hermitian matrix with i.i.d. Gaussian entries (GUE up to scale).
pub fn random_hermitian<R: RngCore + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    let g = ginibre(n, n, rng);
    CMatrix::from_fn(n, n, |i, j| (g[(i, j)] + g[(j, i)].conj()) * 0.5)
}

/// Random traceless Hermitian matrix.
pub fn random_traceless_hermitian<R: RngCore + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    let mut h = random_hermitian(n, rng);
    let shift = h.trace().re / n as f64;
    for i in 0..n {
        h[(i, i)] -= shift;
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::SplitMix;

    #[test]
    fn haar_unitary_is_unitary() {
        let mut rng = SplitMix(7);
        for n in 1..7 {
            assert!(haar_unitary(n, &mut rng).unitarity_deviation() < 1e-13);
        }
    }

    #[test]
    fn mixed_density_has_unit_trace() {
        let mut rng = SplitMix(11);
        let rho = random_mixed_density(3, 2, &mut rng);
        assert!((rho.trace().re - 1.0).abs() < 1e-14);
        assert!(rho.hermitian_deviation() < 1e-15);
        let pure = random_mixed_density(3, 1, &mut rng);
        assert!((&(&pure * &pure) - &pure).max_abs() < 1e-14);
    }

    #[test]
    fn normal_moments_are_sane() {
        let mut rng = SplitMix(3);
        let n = 20_000;
        let xs: Vec<f64> = (0..n).map(|_| standard_normal(&mut rng)).collect();
        let mean = xs.iter().sum::<f64>() / n as f64;
        let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n as f64;
        assert!(mean.abs() < 0.05);
        assert!((var - 1.0).abs() < 0.05);
    }
}
