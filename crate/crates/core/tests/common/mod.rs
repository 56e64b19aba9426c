#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use qudit_core::CMatrix;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const TOL: f64 = 1e-9;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Eigenvalues from nalgebra's Hermitian solver, ascending.
pub fn oracle_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let n = m.rows();
    let a = DMatrix::<Complex64>::from_fn(n, n, |i, j| m[(i, j)]);
    let mut v: Vec<f64> = a.symmetric_eigen().eigenvalues.iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

/// Unit-trace Hermitian matrix whose spectrum may be negative: a random Hermitian matrix
/// shifted to trace one, blended with a PSD state.
pub fn unit_trace_hermitian(n: usize, weight: f64, rng: &mut ChaCha8Rng) -> CMatrix {
    let psd = qudit_core::random::random_mixed_density(n, n, rng);
    let h = qudit_core::random::random_traceless_hermitian(n, rng);
    let mut m = psd.scale(1.0);
    m.add_scaled(Complex64::new(weight, 0.0), &h);
    m
}
