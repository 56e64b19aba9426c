//! Single qudit in Bloch form `ρ = (1 + λ_a P_a) / N`.
//!
//! `P` is kept unrescaled, so a pure state has `|P|² = N(N-1)/2`. States need not be
//! physical: anything with the right length is representable, and the operations that only
//! make sense for positive matrices (entropy) check for themselves.

use alloc::vec::Vec;

use crate::eigen::eigvalsh;
use crate::linalg::{dot, max_abs, norm_sqr, CMatrix, C64};
use crate::sun_basis::{AdjointMatrix, GellMannBasis, StructureTensors};
use crate::sym_poly::{positivity_check, SymPolyReport};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct QuditState {
    dim: usize,
    bloch: Vec<f64>,
    rho: CMatrix,
}

/// Bloch vector `P_a = (N/2) Tr(ρ λ_a)` of a unit-trace matrix.
pub fn to_bloch(rho: &CMatrix, basis: &GellMannBasis, tolerance: f64) -> Result<Vec<f64>> {
    let n = basis.dim();
    if rho.rows() != n || rho.cols() != n {
        return Err(Error::LengthMismatch { expected: n, found: rho.rows() });
    }
    let deviation = rho.hermitian_deviation();
    if deviation > tolerance {
        return Err(Error::NotHermitian { deviation });
    }
    let trace = rho.trace().re;
    if (trace - 1.0).abs() > tolerance {
        return Err(Error::TraceNotOne { trace });
    }
    Ok(basis.project(rho).into_iter().map(|c| c * n as f64).collect())
}

impl QuditState {
    pub fn from_bloch(basis: &GellMannBasis, bloch: Vec<f64>) -> Result<Self> {
        if bloch.len() != basis.len() {
            return Err(Error::LengthMismatch { expected: basis.len(), found: bloch.len() });
        }
        let n = basis.dim();
        let mut rho = basis.combine(&bloch);
        for i in 0..n {
            rho[(i, i)] += C64::new(1.0, 0.0);
        }
        Ok(QuditState { dim: n, bloch, rho: rho.scale(1.0 / n as f64) })
    }

    /// State whose Bloch vector is extracted from `rho`. The stored matrix is rebuilt from
    /// the Bloch vector, so it is exactly Hermitian with unit trace.
    pub fn from_density(rho: &CMatrix, basis: &GellMannBasis, tolerance: f64) -> Result<Self> {
        Self::from_bloch(basis, to_bloch(rho, basis, tolerance)?)
    }

    pub fn maximally_mixed(basis: &GellMannBasis) -> Self {
        let n = basis.dim();
        QuditState { dim: n, bloch: alloc::vec![0.0; basis.len()], rho: CMatrix::identity(n).scale(1.0 / n as f64) }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bloch(&self) -> &[f64] {
        &self.bloch
    }

    pub fn rho(&self) -> &CMatrix {
        &self.rho
    }

    pub fn invariants(&self, tensors: &StructureTensors) -> Result<InvariantSet> {
        self.check_tensors(tensors)?;
        let p = &self.bloch;
        let q = tensors.d_contract(p, p);
        Ok(InvariantSet { p2: norm_sqr(p), cubic: dot(&q, p), quartic: norm_sqr(&q), q })
    }

    /// Distance from the pure-state conditions `|P|² = N(N-1)/2` and
    /// `(1 - 2/N) P_a = (1/N) d_abc P_b P_c`.
    pub fn purity_residuals(&self, tensors: &StructureTensors) -> Result<QuditPurityResiduals> {
        self.check_tensors(tensors)?;
        let n = self.dim as f64;
        let p = &self.bloch;
        let q = tensors.d_contract(p, p);
        let vector: Vec<f64> = p.iter().zip(&q).map(|(pa, qa)| (1.0 - 2.0 / n) * pa - qa / n).collect();
        Ok(QuditPurityResiduals { norm: norm_sqr(p) - n * (n - 1.0) / 2.0, vector: max_abs(&vector) })
    }

    pub fn positivity(&self, tolerance: f64) -> Result<SymPolyReport> {
        positivity_check(&self.rho, tolerance)
    }

    /// Eigenvalues of `ρ`, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        eigvalsh(&self.rho)
    }

    /// Von Neumann entropy `-Σ x ln x` in nats.
    ///
    /// Rejects states with an eigenvalue below `-tolerance`; eigenvalues are then clamped
    /// into `[0, 1]` and `0 ln 0 = 0`.
    pub fn entropy(&self, tolerance: f64) -> Result<f64> {
        entropy_of_spectrum(&self.eigenvalues(), tolerance)
    }

    /// `U ρ U†`, re-expanded in the basis.
    pub fn transform(&self, u: &CMatrix, basis: &GellMannBasis, tolerance: f64) -> Result<QuditState> {
        if basis.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: basis.dim() });
        }
        if u.rows() != self.dim || u.cols() != self.dim {
            return Err(Error::LengthMismatch { expected: self.dim, found: u.rows() });
        }
        let deviation = u.unitarity_deviation();
        if deviation > tolerance {
            return Err(Error::NotUnitary { deviation });
        }
        let rotated = &(u * &self.rho) * &u.adjoint();
        // re-expansion only needs the traceless part, so skip the Hermitian/trace guards
        let bloch = basis.project(&rotated).into_iter().map(|c| c * self.dim as f64).collect();
        Self::from_bloch(basis, bloch)
    }

    /// `P ↦ R P` for an adjoint matrix.
    pub fn rotate(&self, r: &AdjointMatrix, basis: &GellMannBasis) -> Result<QuditState> {
        if r.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: r.dim() });
        }
        Self::from_bloch(basis, r.apply(&self.bloch))
    }

    fn check_tensors(&self, tensors: &StructureTensors) -> Result<()> {
        if tensors.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: tensors.dim() });
        }
        Ok(())
    }
}

/// `-Σ x ln x` of a spectrum; rejects values below `-tolerance`.
pub fn entropy_of_spectrum(values: &[f64], tolerance: f64) -> Result<f64> {
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    if min < -tolerance {
        return Err(Error::NotPositive { min_eigenvalue: min });
    }
    Ok(values
        .iter()
        .map(|&x| x.clamp(0.0, 1.0))
        .filter(|&x| x > 0.0)
        .map(|x| -x * libm::log(x))
        .sum())
}

/// Residuals of the single-qudit pure-state conditions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuditPurityResiduals {
    /// `|P|² - N(N-1)/2`, signed.
    pub norm: f64,
    /// `max_a |(1 - 2/N) P_a - (1/N) d_abc P_b P_c|`
    pub vector: f64,
}

impl QuditPurityResiduals {
    pub fn is_pure(&self, tolerance: f64) -> bool {
        self.norm.abs() <= tolerance && self.vector <= tolerance
    }
}

/// SU(N)-invariant combinations of the Bloch vector.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantSet {
    /// `|P|²`
    pub p2: f64,
    /// `Q = d_abc P_a P_b P_c`
    pub cubic: f64,
    /// `q_a = d_abc P_b P_c`
    pub q: Vec<f64>,
    /// `d_abc d_aef P_b P_c P_e P_f = q_a q_a`
    pub quartic: f64,
}

impl InvariantSet {
    /// `e_2`, `e_3`, `e_4` of the spectrum of `ρ`, written through `|P|²`, `Q` and `q_a q_a`.
    pub fn elementary(&self, dim: usize) -> [f64; 3] {
        let n = dim as f64;
        let (p2, q, qq) = (self.p2, self.cubic, self.quartic);
        let n2 = n * n;
        let n3 = n2 * n;
        let n4 = n3 * n;
        let e2 = (n - 1.0) / (2.0 * n) - p2 / n2;
        let e3 = (n - 1.0) * (n - 2.0) / (6.0 * n2) - (n - 2.0) / n3 * p2 + 2.0 / (3.0 * n3) * q;
        let e4 = (n - 1.0) * (n - 2.0) * (n - 3.0) / (24.0 * n3) - (n - 2.0) * (n - 3.0) / (2.0 * n4) * p2
            + 2.0 * (n - 3.0) / (3.0 * n4) * q
            + p2 * p2 / (2.0 * n4)
            - (2.0 / n * p2 * p2 + qq) / (2.0 * n4);
        [e2, e3, e4]
    }
}
