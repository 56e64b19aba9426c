//! Power sums and elementary symmetric polynomials of density-matrix eigenvalues.
//!
//! A Hermitian matrix is positive semidefinite exactly when every elementary symmetric
//! polynomial `e_k` of its eigenvalues is non-negative, and the `e_k` follow from the
//! traces `p_k = Tr M^k` through Newton's identities, so the test needs no
//! diagonalization. [`positivity_check`] still runs an eigensolver next to it and
//! insists that both verdicts agree.

use alloc::vec;
use alloc::vec::Vec;

use crate::eigen::eigvalsh;
use crate::linalg::CMatrix;
use crate::{Error, Result};

/// `p_k = Tr M^k` for `k = 1..=max_power`, by repeated multiplication.
pub fn power_sums(m: &CMatrix, max_power: usize, tolerance: f64) -> Result<Vec<f64>> {
    let deviation = m.hermitian_deviation();
    if deviation > tolerance {
        return Err(Error::NotHermitian { deviation });
    }
    let mut out = Vec::with_capacity(max_power);
    let mut power = m.clone();
    for k in 1..=max_power {
        if k > 1 {
            power = &power * m;
        }
        out.push(power.trace().re);
    }
    Ok(out)
}

/// `e_1..e_K` from `p_1..p_K` by `k e_k = Σ_{i=1}^{k} (-1)^{i-1} e_{k-i} p_i`, `e_0 = 1`.
pub fn elementary_from_power(p: &[f64]) -> Vec<f64> {
    let mut e = vec![1.0];
    for k in 1..=p.len() {
        let mut acc = 0.0;
        for i in 1..=k {
            let term = e[k - i] * p[i - 1];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        e.push(acc / k as f64);
    }
    e.remove(0);
    e
}

/// Explicit `e_1..e_6` for unit trace, in terms of `p_2..p_6` (`p[0]` is ignored and taken
/// to be 1). Missing power sums count as zero.
pub fn elementary_closed_form_unit_trace(p: &[f64]) -> [f64; 6] {
    let g = |k: usize| if k <= p.len() { p[k - 1] } else { 0.0 };
    let (p2, p3, p4, p5, p6) = (g(2), g(3), g(4), g(5), g(6));
    [
        1.0,
        0.5 - 0.5 * p2,
        1.0 / 6.0 - 0.5 * p2 + p3 / 3.0,
        (1.0 - 6.0 * p2 + 3.0 * p2 * p2 + 8.0 * p3 - 6.0 * p4) / 24.0,
        (1.0 - 10.0 * p2 + 15.0 * p2 * p2 + 20.0 * p3 - 20.0 * p2 * p3 - 30.0 * p4 + 24.0 * p5) / 120.0,
        (1.0 - 15.0 * p2 + 45.0 * p2 * p2 - 15.0 * p2 * p2 * p2 + 40.0 * p3 - 120.0 * p2 * p3
            + 40.0 * p3 * p3
            - 90.0 * p4
            + 90.0 * p2 * p4
            + 144.0 * p5
            - 120.0 * p6)
            / 720.0,
    ]
}

/// Elementary symmetric polynomials of `x_i + t` given those of `x_i` (`e[k-1] = e_k`) for
/// `dim` values: `e_k(x + t) = Σ_{j=0}^{k} C(dim-j, k-j) t^{k-j} e_j(x)`.
pub fn shifted_elementary(e: &[f64], dim: usize, t: f64) -> Vec<f64> {
    (1..=dim)
        .map(|k| {
            (0..=k)
                .map(|j| {
                    let ej = if j == 0 { 1.0 } else { e.get(j - 1).copied().unwrap_or(0.0) };
                    binomial(dim - j, k - j) * libm::pow(t, (k - j) as f64) * ej
                })
                .sum()
        })
        .collect()
}

pub(crate) fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Power sums, elementary symmetric polynomials and the positivity verdict for one matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SymPolyReport {
    pub dim: usize,
    /// `p_1..p_dim`
    pub power_sums: Vec<f64>,
    /// `e_1..e_dim`; higher `e_k` vanish identically.
    pub elementary: Vec<f64>,
    pub psd: bool,
    pub min_eigenvalue: f64,
}

/// Positivity verdict for a unit-trace Hermitian matrix.
///
/// The symmetric-polynomial verdict asks that every `e_k` of the shifted spectrum
/// `x_i + tolerance` be non-negative, which is exactly `min x_i ≥ -tolerance`; the
/// eigenvalue verdict checks `min x_i ≥ -tolerance` directly. When they disagree and the
/// smallest eigenvalue is not within `tolerance` of the threshold the result is
/// [`Error::NumericalBreakdown`]; inside that band the eigenvalue verdict is reported.
pub fn positivity_check(rho: &CMatrix, tolerance: f64) -> Result<SymPolyReport> {
    let dim = rho.rows();
    let trace = rho.trace().re;
    if (trace - 1.0).abs() > tolerance {
        return Err(Error::TraceNotOne { trace });
    }
    let power_sums = power_sums(rho, dim, tolerance)?;
    let elementary = elementary_from_power(&power_sums);
    let shifted = shifted_elementary(&elementary, dim, tolerance);
    let poly_psd = shifted.iter().all(|&e| e >= 0.0);
    let min_eigenvalue = eigvalsh(rho).first().copied().unwrap_or(0.0);
    let eig_psd = min_eigenvalue >= -tolerance;
    if poly_psd != eig_psd && (min_eigenvalue + tolerance).abs() > tolerance {
        return Err(Error::NumericalBreakdown { min_eigenvalue });
    }
    Ok(SymPolyReport { dim, power_sums, elementary, psd: eig_psd, min_eigenvalue })
}

/// `Tr ρ^k` for `ρ = (1 + A)/N` from `Tr A^0..Tr A^k`:
/// `N^{-k} Σ_m C(k, m) Tr A^m`.
///
/// `a_traces[m] = Tr A^m` (so `a_traces[0] = N`); rejects `|Tr A| > tolerance`.
pub fn trace_powers_from_traceless(a_traces: &[f64], dim: usize, k: usize, tolerance: f64) -> Result<f64> {
    if a_traces.len() < k + 1 {
        return Err(Error::LengthMismatch { expected: k + 1, found: a_traces.len() });
    }
    if let Some(&t1) = a_traces.get(1) {
        if t1.abs() > tolerance {
            return Err(Error::NotTraceless { trace: t1 });
        }
    }
    let n = dim as f64;
    let sum: f64 = (0..=k).map(|m| binomial(k, m) * a_traces[m]).sum();
    Ok(sum / libm::pow(n, k as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::C64;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn maximally_mixed_power_sums() {
        for n in 2..=5 {
            let rho = CMatrix::identity(n).scale(1.0 / n as f64);
            let p = power_sums(&rho, 3, 1e-9).unwrap();
            for (k, pk) in p.iter().enumerate() {
                assert!(close(*pk, libm::pow(n as f64, -(k as f64)), 1e-15));
            }
        }
    }

    #[test]
    fn projector_power_sums_are_one() {
        let psi = [C64::new(0.6, 0.0), C64::new(0.0, 0.8)];
        let p = power_sums(&CMatrix::outer(&psi), 5, 1e-9).unwrap();
        assert!(p.iter().all(|v| close(*v, 1.0, 1e-14)));
    }

    #[test]
    fn diagonal_example() {
        let rho = CMatrix::from_real_diagonal(&[0.5, 0.3, 0.2]);
        let p = power_sums(&rho, 3, 1e-9).unwrap();
        assert!(close(p[1], 0.25 + 0.09 + 0.04, 1e-15));
        let e = elementary_from_power(&p);
        // direct: e2 = .15 + .1 + .06, e3 = .03
        assert!(close(e[0], 1.0, 1e-15));
        assert!(close(e[1], 0.31, 1e-15));
        assert!(close(e[2], 0.03, 1e-15));
    }

    #[test]
    fn pure_state_elementary() {
        let e = elementary_from_power(&[1.0, 1.0, 1.0, 1.0]);
        assert_eq!(e[0], 1.0);
        assert!(e[1..].iter().all(|v| v.abs() < 1e-15));
    }

    #[test]
    fn epsilon_delta_boundary() {
        // Tr ρ² = 1 - ε, Tr ρ³ = 1 - δ with ε = 0.3, δ = 0.45 puts e_3 = ε/2 - δ/3 at zero
        let e = elementary_from_power(&[1.0, 0.7, 0.55]);
        assert!(e[2].abs() < 1e-15);
        let closed = elementary_closed_form_unit_trace(&[1.0, 0.7, 0.55]);
        assert!(closed[2].abs() < 1e-15);
    }

    #[test]
    fn closed_forms_match_newton_on_a_spectrum() {
        let x = [0.31, 0.22, 0.17, 0.12, 0.1, 0.08];
        let p: Vec<f64> = (1..=6).map(|k| x.iter().map(|v| libm::pow(*v, k as f64)).sum()).collect();
        let newton = elementary_from_power(&p);
        let closed = elementary_closed_form_unit_trace(&p);
        // brute force over subsets
        let mut brute = [0.0; 7];
        for mask in 0u32..64 {
            let prod: f64 = (0..6).filter(|i| mask & (1 << i) != 0).map(|i| x[i]).product();
            brute[mask.count_ones() as usize] += prod;
        }
        for k in 0..6 {
            assert!(close(newton[k], brute[k + 1], 1e-15), "k={}", k + 1);
            assert!(close(closed[k], brute[k + 1], 1e-15), "k={}", k + 1);
        }
    }

    #[test]
    fn shifted_matches_direct_shift() {
        let x = [0.5, -0.1, 0.6];
        let e = |v: &[f64]| {
            let p: Vec<f64> = (1..=3).map(|k| v.iter().map(|a| libm::pow(*a, k as f64)).sum()).collect();
            elementary_from_power(&p)
        };
        let t = 0.25;
        let direct = e(&[x[0] + t, x[1] + t, x[2] + t]);
        let shifted = shifted_elementary(&e(&x), 3, t);
        for k in 0..3 {
            assert!(close(direct[k], shifted[k], 1e-14));
        }
    }

    #[test]
    fn positivity_verdicts() {
        let mixed = CMatrix::identity(3).scale(1.0 / 3.0);
        let r = positivity_check(&mixed, 1e-9).unwrap();
        assert!(r.psd);
        for (k, ek) in r.elementary.iter().enumerate() {
            let expected = binomial(3, k + 1) / libm::pow(3.0, (k + 1) as f64);
            assert!(close(*ek, expected, 1e-15));
        }

        let bad = CMatrix::from_real_diagonal(&[1.2, -0.2]);
        let r = positivity_check(&bad, 1e-9).unwrap();
        assert!(!r.psd);
        assert!(close(r.elementary[1], -0.24, 1e-15));
        assert!(close(r.min_eigenvalue, -0.2, 1e-15));
    }

    #[test]
    fn positivity_rejects_bad_input() {
        let rho = CMatrix::from_real_diagonal(&[0.5, 0.3]);
        assert!(matches!(positivity_check(&rho, 1e-9), Err(Error::TraceNotOne { .. })));
        let mut m = CMatrix::from_real_diagonal(&[0.5, 0.5]);
        m[(0, 1)] = C64::new(0.1, 0.0);
        assert!(matches!(positivity_check(&m, 1e-9), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn binomial_trace_expansion() {
        // A = 0
        for k in 1..5 {
            let mut t = vec![0.0; k + 1];
            t[0] = 3.0;
            let v = trace_powers_from_traceless(&t, 3, k, 1e-9).unwrap();
            assert!(close(v, 3.0 / libm::pow(3.0, k as f64), 1e-16));
        }
        // qutrit: Tr A² = 2|P|², Tr A³ = 2Q
        let (p2, q) = (1.7, 0.4);
        let v = trace_powers_from_traceless(&[3.0, 0.0, 2.0 * p2, 2.0 * q], 3, 3, 1e-9).unwrap();
        assert!(close(v, (3.0 + 6.0 * p2 + 2.0 * q) / 27.0, 1e-15));
        assert!(matches!(
            trace_powers_from_traceless(&[3.0, 0.1, 1.0], 3, 2, 1e-9),
            Err(Error::NotTraceless { .. })
        ));
    }
}
