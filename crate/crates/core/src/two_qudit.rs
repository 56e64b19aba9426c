//! Two qudits in component form
//!
//! ```text
//! ρ = (1/N²) [1⊗1 + x_i λ_i⊗1 + y_i 1⊗λ_i + ω_ij λ_i⊗λ_j]
//! ```
//!
//! with `x`, `y` of length `N² - 1` and `ω` an `(N²-1)×(N²-1)` real matrix. For `N = 2` the
//! generators are the Pauli matrices and this is the usual two-qubit form.
//!
//! Purity residuals are written as `lhs - rhs` of the conditions obtained from `ρ² = ρ`:
//!
//! ```text
//! N² = 1 + (2/N)(|x|² + |y|²) + (4/N²) ω:ω
//! (N²-2) x_i = d_kji x_k x_j + (4/N) ω_ij y_j + (2/N) d_mki ω_ml ω_kl
//! (N²-2) y_i = d_kji y_k y_j + (4/N) x_j ω_ji + (2/N) d_mki ω_lm ω_lk
//! (N²-2) ω_ij = 2 x_i y_j + 2 d_kli x_k ω_lj + 2 d_klj y_k ω_il + C_ij
//! C_ij = ω_mn ω_kl (d_nlj d_mki - f_nlj f_mki)
//! ```
//!
//! For qubits `d = 0` and the last three reduce to twice `x = ω y`, `y = ωᵀ x`,
//! `ω = x yᵀ + Z`.

use alloc::vec;
use alloc::vec::Vec;

use crate::eigen::eigvalsh;
use crate::linalg::{dot, max_abs, norm_sqr, CMatrix, RMatrix, C64};
use crate::qudit_state::{entropy_of_spectrum, QuditState};
use crate::sun_basis::{GellMannBasis, StructureTensors, Tensor3};
use crate::sym_poly::{elementary_from_power, power_sums};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct BipartiteState {
    dim: usize,
    x: Vec<f64>,
    y: Vec<f64>,
    omega: RMatrix,
    rho: CMatrix,
}

impl BipartiteState {
    pub fn from_components(basis: &GellMannBasis, x: Vec<f64>, y: Vec<f64>, omega: RMatrix) -> Result<Self> {
        let n = basis.len();
        for v in [&x, &y] {
            if v.len() != n {
                return Err(Error::LengthMismatch { expected: n, found: v.len() });
            }
        }
        if omega.rows() != n || omega.cols() != n {
            return Err(Error::LengthMismatch { expected: n, found: omega.rows() });
        }
        let dim = basis.dim();
        let id = CMatrix::identity(dim);
        let mut rho = CMatrix::identity(dim * dim);
        rho.add_scaled(C64::new(1.0, 0.0), &basis.combine(&x).kron(&id));
        rho.add_scaled(C64::new(1.0, 0.0), &id.kron(&basis.combine(&y)));
        for i in 0..n {
            let row = omega.row(i);
            if row.iter().all(|&w| w == 0.0) {
                continue;
            }
            rho.add_scaled(C64::new(1.0, 0.0), &basis.generator(i).kron(&basis.combine(row)));
        }
        let rho = rho.scale(1.0 / (dim * dim) as f64);
        Ok(BipartiteState { dim, x, y, omega, rho })
    }

    /// Components of a Hermitian unit-trace `N²×N²` matrix:
    /// `x_i = (N/2) Tr(ρ λ_i⊗1)`, `y_i = (N/2) Tr(ρ 1⊗λ_i)`, `ω_ij = (N²/4) Tr(ρ λ_i⊗λ_j)`.
    ///
    /// The stored matrix is rebuilt from the components.
    pub fn from_density(rho: &CMatrix, basis: &GellMannBasis, tolerance: f64) -> Result<Self> {
        let (x, y, omega) = to_components(rho, basis, tolerance)?;
        Self::from_components(basis, x, y, omega)
    }

    /// `ρ_a ⊗ ρ_b`, i.e. `x = P_a`, `y = P_b`, `ω = P_a P_bᵀ`.
    pub fn product(a: &QuditState, b: &QuditState, basis: &GellMannBasis) -> Result<Self> {
        if a.dim() != basis.dim() || b.dim() != basis.dim() {
            return Err(Error::DimensionMismatch { expected: basis.dim(), found: a.dim().max(b.dim()) });
        }
        let omega = RMatrix::outer(a.bloch(), b.bloch());
        Self::from_components(basis, a.bloch().to_vec(), b.bloch().to_vec(), omega)
    }

    /// `x = y = 0`, `ω = α·1`.
    pub fn werner(basis: &GellMannBasis, alpha: f64) -> Self {
        let n = basis.len();
        Self::from_components(basis, vec![0.0; n], vec![0.0; n], RMatrix::identity(n).scale(alpha))
            .expect("component lengths follow the basis")
    }

    pub fn maximally_mixed(basis: &GellMannBasis) -> Self {
        Self::werner(basis, 0.0)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }

    pub fn omega(&self) -> &RMatrix {
        &self.omega
    }

    pub fn rho(&self) -> &CMatrix {
        &self.rho
    }

    /// Eigenvalues of `ρ`, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        eigvalsh(&self.rho)
    }

    /// Von Neumann entropy of the joint state in nats.
    pub fn entropy(&self, tolerance: f64) -> Result<f64> {
        entropy_of_spectrum(&self.eigenvalues(), tolerance)
    }

    /// `(Tr_2 ρ, Tr_1 ρ)` as single-qudit states; their Bloch vectors are `x` and `y`.
    pub fn reduced_states(&self, basis: &GellMannBasis, tolerance: f64) -> Result<(QuditState, QuditState)> {
        self.check_basis(basis)?;
        let n = self.dim;
        let first = QuditState::from_density(&self.rho.partial_trace_second(n, n), basis, tolerance)?;
        let second = QuditState::from_density(&self.rho.partial_trace_first(n, n), basis, tolerance)?;
        Ok((first, second))
    }

    /// Left-minus-right of the four qudit pure-state conditions, component by component.
    pub fn purity_terms(&self, tensors: &StructureTensors) -> Result<PurityTerms> {
        self.check_tensors(tensors)?;
        let nf = self.dim as f64;
        let n2 = nf * nf;
        let (x, y, w) = (&self.x, &self.y, &self.omega);
        let wt = w.transpose();

        let sum = 1.0 + 2.0 / nf * (norm_sqr(x) + norm_sqr(y)) + 4.0 / n2 * symmetric_sum_sqr(w) - n2;
        let rx = vector_condition(x, y, w, tensors, nf);
        let ry = vector_condition(y, x, &wt, tensors, nf);

        let d = tensors.d_dense();
        let hx = d_mix(d, x, w);
        let hy = d_mix(d, y, &wt);
        // C is accumulated in both index orders so the x↔y, ω↔ωᵀ symmetry holds bit for bit
        let c = correlation_term(w, tensors);
        let ct = correlation_term(&wt, tensors);
        let len = x.len();
        let omega = RMatrix::from_fn(len, len, |i, j| {
            let rhs = 2.0 * x[i] * y[j] + (2.0 * hx[(i, j)] + 2.0 * hy[(j, i)]) + 0.5 * (c[(i, j)] + ct[(j, i)]);
            (n2 - 2.0) * w[(i, j)] - rhs
        });
        Ok(PurityTerms { sum, x: rx, y: ry, omega })
    }

    pub fn purity_residuals(&self, tensors: &StructureTensors) -> Result<PurityResiduals> {
        Ok(self.purity_terms(tensors)?.residuals())
    }

    /// `|lhs - rhs|` of the trace identity
    ///
    /// ```text
    /// (N²-2) Tr ω = 2 x·y + 2 (x+y)·z + ½ d_imk d_inl S_mn S_kl - (2/N)((Tr ω)² - Tr ω²) - z·z
    /// ```
    ///
    /// with `z_i = d_imk ω_mk` and `S = ω + ωᵀ`. It follows from the purity conditions, so it
    /// only vanishes on pure states.
    pub fn omega_trace_residual(&self, tensors: &StructureTensors) -> Result<f64> {
        self.check_tensors(tensors)?;
        let nf = self.dim as f64;
        let (x, y, w) = (&self.x, &self.y, &self.omega);
        let len = x.len();
        let d = tensors.d_dense();
        let mut z = vec![0.0; len];
        for e in tensors.d_entries() {
            z[e.a] += e.value * w[(e.b, e.c)];
        }
        let s = w + &w.transpose();
        let mut dd = 0.0;
        for i in 0..len {
            let di = RMatrix::from_fn(len, len, |m, k| d.get(i, m, k));
            let sds = &(&s * &di) * &s.transpose();
            dd += di.dot(&sds);
        }
        let tr = w.trace();
        let tr_sq = (w * w).trace();
        let xy: Vec<f64> = x.iter().zip(y).map(|(a, b)| a + b).collect();
        let rhs = 2.0 * dot(x, y) + 2.0 * dot(&xy, &z) + 0.5 * dd - 2.0 / nf * (tr * tr - tr_sq) - norm_sqr(&z);
        Ok(((nf * nf - 2.0) * tr - rhs).abs())
    }

    /// Residuals of the two-qubit conditions
    /// `1 + |x|² + |y|² + ω:ω = 4`, `x = ω y`, `y = ωᵀ x`, `ω = x yᵀ + Z`.
    pub fn purity_residuals_qubit(&self) -> Result<PurityResiduals> {
        self.require_qubits()?;
        let (x, y, w) = (&self.x, &self.y, &self.omega);
        let sum = 1.0 + norm_sqr(x) + norm_sqr(y) + symmetric_sum_sqr(w) - 4.0;
        let wy = w.mul_vec(y);
        let wtx = w.transpose().mul_vec(x);
        let rx: Vec<f64> = x.iter().zip(&wy).map(|(a, b)| a - b).collect();
        let ry: Vec<f64> = y.iter().zip(&wtx).map(|(a, b)| a - b).collect();
        let z = z_of(w);
        let r_omega = &(w - &RMatrix::outer(x, y)) - &z;
        Ok(PurityResiduals { r_sum: sum, r_x: max_abs(&rx), r_y: max_abs(&ry), r_omega: r_omega.max_abs() })
    }

    /// Identities implied by two-qubit purity. Refuses states whose purity residuals exceed
    /// `tolerance`.
    pub fn qubit_identities(&self, tolerance: f64) -> Result<QubitIdentities> {
        let purity = self.purity_residuals_qubit()?;
        if !purity.is_pure(tolerance) {
            return Err(Error::NotPure { residual: purity.total() });
        }
        let (x, y, w) = (&self.x, &self.y, &self.omega);
        let det = w.det3();
        let x2 = norm_sqr(x);
        let y2 = norm_sqr(y);
        let tr = w.trace();
        let tr_sq = (w * w).trace();
        let trace_relation = (tr - (dot(x, y) - 0.5 * (tr * tr - tr_sq))).abs();
        let norms_equal = (x2 - y2).abs();
        let gram = ((w * &w.transpose()).trace() - (x2 - 3.0 * det)).abs();
        let det_relation = (x2 - (1.0 + det)).abs().max((y2 - (1.0 + det)).abs());
        let worst = trace_relation.max(norms_equal).max(gram).max(det_relation);
        Ok(QubitIdentities {
            det_omega: det,
            x_norm_sqr: x2,
            y_norm_sqr: y2,
            trace_relation,
            norms_equal,
            gram,
            det_relation,
            holds: worst <= tolerance,
        })
    }

    /// `Z_ij = -½ δ_ij ((Tr ω)² - Tr ω²) + ω_ji Tr ω - (ω²)_ji`, the negated transposed
    /// adjugate of `ω`.
    pub fn z_matrix(&self) -> Result<ZMatrix> {
        self.require_qubits()?;
        let w = &self.omega;
        let z = z_of(w);
        let det = w.det3();
        let adjugate_residual = (&(w * &z.transpose()) + &RMatrix::identity(3).scale(det)).max_abs();
        Ok(ZMatrix { z, det_omega: det, adjugate_residual })
    }

    /// The three necessary two-qubit positivity inequalities, with `s = |x|² + |y|² + ω:ω`:
    ///
    /// ```text
    /// (a) 3 - s ≥ 0
    /// (b) 1 + 2 (xᵀ ω y - det ω) - s ≥ 0
    /// (c) 1 - 2s + s² + 8 (xᵀ ω y - det ω) - 4 xᵀ ω ωᵀ x - 4 yᵀ ωᵀ ω y
    ///       - 4 (|x|²|y|² + 2 xᵀ Z y + Z:Z) ≥ 0
    /// ```
    ///
    /// These are `8 e_2`, `16 e_3` and `256 e_4` of the spectrum of `ρ`.
    pub fn mixed_positivity_qubit(&self, tolerance: f64) -> Result<MixedPositivity> {
        self.require_qubits()?;
        let (x, y, w) = (&self.x, &self.y, &self.omega);
        let wt = w.transpose();
        let x2 = norm_sqr(x);
        let y2 = norm_sqr(y);
        let s = x2 + y2 + symmetric_sum_sqr(w);
        let cross = w.bilinear(x, y) - w.det3();
        let z = z_of(w);
        let a = 3.0 - s;
        let b = 1.0 + 2.0 * cross - s;
        let c = 1.0 - 2.0 * s + s * s + 8.0 * cross
            - 4.0 * (w * &wt).bilinear(x, x)
            - 4.0 * (&wt * w).bilinear(y, y)
            - 4.0 * (x2 * y2 + 2.0 * z.bilinear(x, y) + z.dot(&z));
        let margins = [a, b, c];

        let p = power_sums(&self.rho, 4, tolerance)?;
        let e = elementary_from_power(&p);
        let elementary = [e[1], e[2], e[3]];
        let scaled = [8.0 * e[1], 16.0 * e[2], 256.0 * e[3]];
        let reconciliation = margins.iter().zip(scaled).map(|(m, s)| (m - s).abs()).fold(0.0, f64::max);
        let min_eigenvalue = self.eigenvalues()[0];
        Ok(MixedPositivity {
            margins,
            satisfied: margins.map(|m| m >= -tolerance),
            equality: margins.map(|m| m.abs() <= tolerance),
            elementary,
            reconciliation,
            min_eigenvalue,
            psd: min_eigenvalue >= -tolerance,
        })
    }

    fn require_qubits(&self) -> Result<()> {
        if self.dim != 2 {
            return Err(Error::QubitsOnly { dim: self.dim });
        }
        Ok(())
    }

    fn check_basis(&self, basis: &GellMannBasis) -> Result<()> {
        if basis.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: basis.dim() });
        }
        Ok(())
    }

    fn check_tensors(&self, tensors: &StructureTensors) -> Result<()> {
        if tensors.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: tensors.dim() });
        }
        Ok(())
    }
}

/// `(x, y, ω)` of a Hermitian unit-trace `N²×N²` matrix.
pub fn to_components(rho: &CMatrix, basis: &GellMannBasis, tolerance: f64) -> Result<(Vec<f64>, Vec<f64>, RMatrix)> {
    let dim = basis.dim();
    let big = dim * dim;
    if rho.rows() != big || rho.cols() != big {
        return Err(Error::LengthMismatch { expected: big, found: rho.rows() });
    }
    let deviation = rho.hermitian_deviation();
    if deviation > tolerance {
        return Err(Error::NotHermitian { deviation });
    }
    let trace = rho.trace().re;
    if (trace - 1.0).abs() > tolerance {
        return Err(Error::TraceNotOne { trace });
    }
    let nf = dim as f64;
    let scale_vec = |v: Vec<f64>| v.into_iter().map(|c| c * nf).collect::<Vec<f64>>();
    let x = scale_vec(basis.project(&rho.partial_trace_second(dim, dim)));
    let y = scale_vec(basis.project(&rho.partial_trace_first(dim, dim)));
    let n = basis.len();
    let mut omega = RMatrix::zeros(n, n);
    for i in 0..n {
        // K_{bb'} = Σ_{a,a'} ρ_{(a,b),(a',b')} (λ_i)_{a'a}, so Tr(K λ_j) = Tr(ρ λ_i⊗λ_j)
        let li = basis.generator(i);
        let k = CMatrix::from_fn(dim, dim, |b, bp| {
            let mut acc = C64::new(0.0, 0.0);
            for a in 0..dim {
                for ap in 0..dim {
                    acc += rho[(a * dim + b, ap * dim + bp)] * li[(ap, a)];
                }
            }
            acc
        });
        for (j, v) in basis.project(&k).into_iter().enumerate() {
            omega[(i, j)] = v * nf * nf / 2.0;
        }
    }
    Ok((x, y, omega))
}

/// `Σ ω_ij²`, summed so that `ω` and `ωᵀ` give identical results.
fn symmetric_sum_sqr(w: &RMatrix) -> f64 {
    let n = w.rows();
    let mut acc = 0.0;
    for i in 0..n {
        acc += w[(i, i)] * w[(i, i)];
        for j in (i + 1)..n {
            acc += w[(i, j)] * w[(i, j)] + w[(j, i)] * w[(j, i)];
        }
    }
    acc
}

/// `(N²-2) u_i - d_kji u_k u_j - (4/N) w_ij v_j - (2/N) d_mki (w wᵀ)_mk`.
fn vector_condition(u: &[f64], v: &[f64], w: &RMatrix, tensors: &StructureTensors, nf: f64) -> Vec<f64> {
    let quad = tensors.d_contract(u, u);
    let wv = w.mul_vec(v);
    let gram = w * &w.transpose();
    let mut dg = vec![0.0; u.len()];
    for e in tensors.d_entries() {
        dg[e.c] += e.value * gram[(e.a, e.b)];
    }
    (0..u.len()).map(|i| (nf * nf - 2.0) * u[i] - quad[i] - 4.0 / nf * wv[i] - 2.0 / nf * dg[i]).collect()
}

/// `H_ij = Σ_k Σ_l d_kli u_k w_lj`.
fn d_mix(d: &Tensor3, u: &[f64], w: &RMatrix) -> RMatrix {
    let n = u.len();
    // M_li = Σ_k u_k d_kli
    let mut m = RMatrix::zeros(n, n);
    for (k, &uk) in u.iter().enumerate() {
        if uk == 0.0 {
            continue;
        }
        for l in 0..n {
            for (i, dv) in d.fiber(k, l).iter().enumerate() {
                m[(l, i)] += uk * dv;
            }
        }
    }
    &m.transpose() * w
}

/// `C_ij = ω_mn ω_kl (d_nlj d_mki - f_nlj f_mki)`, evaluated as
/// `Σ_mk (ω T_j ωᵀ)_mk T_i[m,k]` with `T_j[n,l] = t_nlj` for `t ∈ {d, f}`.
fn correlation_term(w: &RMatrix, tensors: &StructureTensors) -> RMatrix {
    let n = w.rows();
    let wt = w.transpose();
    let slices = |t: &Tensor3| -> Vec<RMatrix> { (0..n).map(|j| RMatrix::from_fn(n, n, |a, b| t.get(a, b, j))).collect() };
    let ds = slices(tensors.d_dense());
    let fs = slices(tensors.f_dense());
    let sandwiched = |s: &[RMatrix]| -> Vec<RMatrix> { s.iter().map(|t| &(w * t) * &wt).collect() };
    let dw = sandwiched(&ds);
    let fw = sandwiched(&fs);
    RMatrix::from_fn(n, n, |i, j| ds[i].dot(&dw[j]) - fs[i].dot(&fw[j]))
}

fn z_of(w: &RMatrix) -> RMatrix {
    let tr = w.trace();
    let w2 = w * w;
    let e2 = 0.5 * (tr * tr - w2.trace());
    RMatrix::from_fn(3, 3, |i, j| if i == j { -e2 } else { 0.0 } + w[(j, i)] * tr - w2[(j, i)])
}

/// Per-component residuals of the pure-state conditions.
#[derive(Clone, Debug, PartialEq)]
pub struct PurityTerms {
    pub sum: f64,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub omega: RMatrix,
}

impl PurityTerms {
    pub fn residuals(&self) -> PurityResiduals {
        PurityResiduals { r_sum: self.sum, r_x: max_abs(&self.x), r_y: max_abs(&self.y), r_omega: self.omega.max_abs() }
    }
}

/// Scalar summaries of the pure-state conditions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PurityResiduals {
    /// Normalization condition, signed.
    pub r_sum: f64,
    /// Max abs of the `x` condition.
    pub r_x: f64,
    /// Max abs of the `y` condition.
    pub r_y: f64,
    /// Max abs of the `ω` condition.
    pub r_omega: f64,
}

impl PurityResiduals {
    /// `|r_sum| + r_x + r_y + r_omega`
    pub fn total(&self) -> f64 {
        self.r_sum.abs() + self.r_x + self.r_y + self.r_omega
    }

    pub fn max(&self) -> f64 {
        self.r_sum.abs().max(self.r_x).max(self.r_y).max(self.r_omega)
    }

    pub fn is_pure(&self, tolerance: f64) -> bool {
        self.max() <= tolerance
    }
}

/// Consequences of two-qubit purity, as absolute residuals.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QubitIdentities {
    pub det_omega: f64,
    pub x_norm_sqr: f64,
    pub y_norm_sqr: f64,
    /// `Tr ω = x·y - ½((Tr ω)² - Tr ω²)`
    pub trace_relation: f64,
    /// `|x|² = |y|²`
    pub norms_equal: f64,
    /// `Tr(ω ωᵀ) = |x|² - 3 det ω`
    pub gram: f64,
    /// `|x|² = |y|² = 1 + det ω`
    pub det_relation: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZMatrix {
    pub z: RMatrix,
    pub det_omega: f64,
    /// `max |ω Zᵀ + det ω · 1|`
    pub adjugate_residual: f64,
}

impl ZMatrix {
    /// Non-zero `Z`, the entanglement flag for pure two-qubit states.
    pub fn is_entangled(&self, tolerance: f64) -> bool {
        self.z.max_abs() > tolerance
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MixedPositivity {
    /// Left side minus right side of inequalities (a), (b), (c).
    pub margins: [f64; 3],
    pub satisfied: [bool; 3],
    /// `|margin| ≤ tolerance`; all three hold together only for pure states.
    pub equality: [bool; 3],
    /// `e_2`, `e_3`, `e_4` of the spectrum, from power sums.
    pub elementary: [f64; 3],
    /// `max |margins - (8 e_2, 16 e_3, 256 e_4)|`
    pub reconciliation: f64,
    pub min_eigenvalue: f64,
    pub psd: bool,
}

impl MixedPositivity {
    pub fn all_satisfied(&self) -> bool {
        self.satisfied.iter().all(|&s| s)
    }
}

/// A `U⊗U`-invariant state: `x = y = 0`, `ω = α·1`.
#[derive(Clone, Debug, PartialEq)]
pub struct WernerState {
    pub alpha: f64,
    pub state: BipartiteState,
}

impl WernerState {
    pub fn new(basis: &GellMannBasis, alpha: f64) -> Self {
        WernerState { alpha, state: BipartiteState::werner(basis, alpha) }
    }

    pub fn dim(&self) -> usize {
        self.state.dim()
    }
}

/// Spectrum of the Werner state: `(symmetric, antisymmetric)` eigenvalues with
/// multiplicities `N(N+1)/2` and `N(N-1)/2`.
pub fn werner_eigenvalues(dim: usize, alpha: f64) -> (f64, f64) {
    let n = dim as f64;
    ((1.0 + alpha * (2.0 - 2.0 / n)) / (n * n), (1.0 - alpha * (2.0 + 2.0 / n)) / (n * n))
}

/// `N/2`: the `e_2 ≥ 0` condition on Werner states is `|α| ≤ N/2`.
pub fn werner_e2_bound(dim: usize) -> f64 {
    dim as f64 / 2.0
}

/// `(N²-2) - 12 (N²-2)(α/N)² - 32 (α/N)³`, a positive multiple of `e_3` for Werner states.
pub fn werner_e3_condition(dim: usize, alpha: f64) -> f64 {
    let n = dim as f64;
    let r = alpha / n;
    (n * n - 2.0) - 12.0 * (n * n - 2.0) * r * r - 32.0 * r * r * r
}

/// `α² = N²/4`, from the normalization condition.
pub fn werner_alpha_norm(dim: usize) -> f64 {
    dim as f64 / 2.0
}

/// `α = -N(N²-2)/4`, from the `ω` condition.
pub fn werner_alpha_omega(dim: usize) -> f64 {
    let n = dim as f64;
    -n * (n * n - 2.0) / 4.0
}

/// Purity residuals of the Werner family as exact quadratics in `α`, fitted from three
/// evaluations of the general residuals.
#[derive(Clone, Debug, PartialEq)]
pub struct WernerFamily {
    dim: usize,
    // coefficients of α⁰, α¹, α² for each residual component
    sum: [f64; 3],
    x: [Vec<f64>; 3],
    y: [Vec<f64>; 3],
    omega: [RMatrix; 3],
}

impl WernerFamily {
    pub fn new(basis: &GellMannBasis, tensors: &StructureTensors) -> Result<Self> {
        if tensors.dim() != basis.dim() {
            return Err(Error::DimensionMismatch { expected: basis.dim(), found: tensors.dim() });
        }
        let at = |a: f64| BipartiteState::werner(basis, a).purity_terms(tensors);
        let (m, z, p) = (at(-1.0)?, at(0.0)?, at(1.0)?);
        let fit = |lo: f64, mid: f64, hi: f64| [mid, 0.5 * (hi - lo), 0.5 * (hi + lo) - mid];
        let fit_vec = |lo: &[f64], mid: &[f64], hi: &[f64]| -> [Vec<f64>; 3] {
            let parts: Vec<[f64; 3]> = (0..mid.len()).map(|i| fit(lo[i], mid[i], hi[i])).collect();
            [0, 1, 2].map(|k| parts.iter().map(|c| c[k]).collect())
        };
        let fit_mat = |lo: &RMatrix, mid: &RMatrix, hi: &RMatrix| -> [RMatrix; 3] {
            let v = fit_vec(lo.as_slice(), mid.as_slice(), hi.as_slice());
            let n = mid.rows();
            v.map(|c| RMatrix::from_fn(n, n, |i, j| c[i * n + j]))
        };
        Ok(WernerFamily {
            dim: basis.dim(),
            sum: fit(m.sum, z.sum, p.sum),
            x: fit_vec(&m.x, &z.x, &p.x),
            y: fit_vec(&m.y, &z.y, &p.y),
            omega: fit_mat(&m.omega, &z.omega, &p.omega),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn residuals(&self, alpha: f64) -> PurityResiduals {
        let q = |c: [f64; 3]| c[0] + alpha * (c[1] + alpha * c[2]);
        let vmax = |v: &[Vec<f64>; 3]| (0..v[0].len()).map(|i| q([v[0][i], v[1][i], v[2][i]]).abs()).fold(0.0, f64::max);
        let o = &self.omega;
        let omax = (0..o[0].as_slice().len())
            .map(|i| q([o[0].as_slice()[i], o[1].as_slice()[i], o[2].as_slice()[i]]).abs())
            .fold(0.0, f64::max);
        PurityResiduals { r_sum: q(self.sum), r_x: vmax(&self.x), r_y: vmax(&self.y), r_omega: omax }
    }

    pub fn total_residual(&self, alpha: f64) -> f64 {
        self.residuals(alpha).total()
    }

    /// Positive root of the fitted normalization condition, if it has one.
    pub fn alpha_from_norm(&self) -> Option<f64> {
        let [c0, _, c2] = self.sum;
        let r = -c0 / c2;
        (c2 != 0.0 && r >= 0.0).then(|| libm::sqrt(r))
    }

    /// Non-zero root of the fitted `ω` condition on the diagonal.
    pub fn alpha_from_omega(&self) -> Option<f64> {
        let a1 = self.omega[1][(0, 0)];
        let a2 = self.omega[2][(0, 0)];
        (a2 != 0.0).then(|| -a1 / a2)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WernerConsistency {
    pub dim: usize,
    /// `|α|` solving the normalization condition.
    pub alpha_norm: f64,
    /// Non-zero `α` solving the `ω` condition.
    pub alpha_omega: f64,
    /// Whether `α_omega = ±α_norm` within tolerance.
    pub consistent: bool,
    /// Minimum over `α ∈ [-N, N]` of the total purity residual.
    pub min_residual: f64,
    pub argmin: f64,
}

/// Compares the two determinations of `α` for a pure Werner state and minimizes the
/// total purity residual over `α ∈ [-N, N]` (grid of `grid` points, then golden-section
/// refinement around the best one).
pub fn werner_consistency(
    basis: &GellMannBasis,
    tensors: &StructureTensors,
    grid: usize,
    tolerance: f64,
) -> Result<WernerConsistency> {
    let family = WernerFamily::new(basis, tensors)?;
    let dim = basis.dim();
    let alpha_norm = family.alpha_from_norm().unwrap_or(f64::NAN);
    let alpha_omega = family.alpha_from_omega().unwrap_or(f64::NAN);
    let consistent = (alpha_omega.abs() - alpha_norm).abs() <= tolerance;

    let f = |a: f64| family.total_residual(a);
    let limit = dim as f64;
    let grid = grid.max(3);
    let h = 2.0 * limit / (grid - 1) as f64;
    let mut best = (-limit, f(-limit));
    for k in 1..grid {
        let a = -limit + h * k as f64;
        let v = f(a);
        if v < best.1 {
            best = (a, v);
        }
    }
    let refined = golden_section(&f, (best.0 - h).max(-limit), (best.0 + h).min(limit), 200);
    for a in [refined, alpha_norm, -alpha_norm, alpha_omega] {
        if a.is_finite() && a.abs() <= limit {
            let v = f(a);
            if v < best.1 {
                best = (a, v);
            }
        }
    }
    Ok(WernerConsistency { dim, alpha_norm, alpha_omega, consistent, min_residual: best.1, argmin: best.0 })
}

fn golden_section(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, iterations: usize) -> f64 {
    let ratio = 0.5 * (libm::sqrt(5.0) - 1.0);
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..iterations {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = f(d);
        }
    }
    if fc < fd {
        c
    } else {
        d
    }
}

/// One row of a Werner positivity scan.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WernerScanRow {
    pub alpha: f64,
    pub e2: f64,
    pub e3: f64,
    pub e2_ok: bool,
    pub e3_ok: bool,
    pub min_eigenvalue: f64,
    pub psd: bool,
    pub purity_residual: f64,
}

/// `e_2`, `e_3` verdicts against the full eigenvalue verdict on `steps` evenly spaced
/// values of `α` from `alpha_min` to `alpha_max`.
pub fn werner_positivity_scan(
    basis: &GellMannBasis,
    tensors: &StructureTensors,
    alpha_min: f64,
    alpha_max: f64,
    steps: usize,
    tolerance: f64,
) -> Result<Vec<WernerScanRow>> {
    if steps < 2 {
        return Err(Error::LengthMismatch { expected: 2, found: steps });
    }
    let family = WernerFamily::new(basis, tensors)?;
    let mut rows = Vec::with_capacity(steps);
    for k in 0..steps {
        let alpha = if k + 1 == steps {
            alpha_max
        } else {
            alpha_min + (alpha_max - alpha_min) * k as f64 / (steps - 1) as f64
        };
        let state = BipartiteState::werner(basis, alpha);
        let e = elementary_from_power(&power_sums(state.rho(), 3, tolerance)?);
        let min_eigenvalue = state.eigenvalues()[0];
        rows.push(WernerScanRow {
            alpha,
            e2: e[1],
            e3: e[2],
            e2_ok: e[1] >= -tolerance,
            e3_ok: e[2] >= -tolerance,
            min_eigenvalue,
            psd: min_eigenvalue >= -tolerance,
            purity_residual: family.total_residual(alpha),
        });
    }
    Ok(rows)
}
