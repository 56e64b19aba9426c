//! Cyclic Jacobi eigensolver for small Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq` with a diagonal unitary and
//! then applies the real Jacobi rotation, so the iteration is the textbook real algorithm
//! run on a phase-adjusted matrix. Sweeps stop once the off-diagonal Frobenius norm drops
//! below `1e-15` of the total norm.

use alloc::vec::Vec;

use crate::linalg::{CMatrix, C64};

const MAX_SWEEPS: usize = 64;

/// Eigen-decomposition `A = V diag(values) V†`, values ascending.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    /// Eigenvectors stored as columns, in the order of `values`.
    pub vectors: CMatrix,
}

/// Eigenvalues of a Hermitian matrix, ascending. Only the Hermitian part is used.
pub fn eigvalsh(a: &CMatrix) -> Vec<f64> {
    jacobi(a, false).values
}

/// Eigenvalues and eigenvectors of a Hermitian matrix.
pub fn eigh(a: &CMatrix) -> HermitianEigen {
    jacobi(a, true)
}

fn off_norm_sqr(a: &CMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s
}

fn jacobi(input: &CMatrix, want_vectors: bool) -> HermitianEigen {
    assert!(input.is_square(), "eigensolver needs a square matrix");
    let n = input.rows();
    // symmetrize so roundoff asymmetry never feeds the iteration
    let mut a = CMatrix::from_fn(n, n, |i, j| (input[(i, j)] + input[(j, i)].conj()) * 0.5);
    for i in 0..n {
        a[(i, i)] = C64::new(a[(i, i)].re, 0.0);
    }
    let mut v = CMatrix::identity(n);
    let total = a.frobenius_norm().max(f64::MIN_POSITIVE);
    let threshold = (1e-15 * total) * (1e-15 * total);

    for _ in 0..MAX_SWEEPS {
        if off_norm_sqr(&a) <= threshold {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag == 0.0 {
                    continue;
                }
                let phase = apq / mag; // e^{iφ}
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let theta = (aqq - app) / (2.0 * mag);
                let t = if theta >= 0.0 {
                    1.0 / (theta + libm::sqrt(1.0 + theta * theta))
                } else {
                    -1.0 / (-theta + libm::sqrt(1.0 + theta * theta))
                };
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = t * c;
                // J = [[c, s], [-s e^{-iφ}, c e^{-iφ}]] on (p, q); A <- J† A J
                let ph_conj = phase.conj();
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * c - akq * ph_conj * s;
                    a[(k, q)] = akp * s + akq * ph_conj * c;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = apk * c - aqk * phase * s;
                    a[(q, k)] = apk * s + aqk * phase * c;
                }
                a[(p, q)] = C64::new(0.0, 0.0);
                a[(q, p)] = C64::new(0.0, 0.0);
                a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
                if want_vectors {
                    for k in 0..n {
                        let vkp = v[(k, p)];
                        let vkq = v[(k, q)];
                        v[(k, p)] = vkp * c - vkq * ph_conj * s;
                        v[(k, q)] = vkp * s + vkq * ph_conj * c;
                    }
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = if want_vectors {
        CMatrix::from_fn(n, n, |r, c| v[(r, order[c])])
    } else {
        CMatrix::zeros(0, 0)
    };
    HermitianEigen { values, vectors }
}
