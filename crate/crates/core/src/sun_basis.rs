//! Generalized Gell-Mann generators of SU(N), the structure tensors `f_abc`, `d_abc`, and
//! the adjoint representation `R` induced by conjugation `λ_j ↦ U λ_j U†`.
//!
//! Generators are normalized to `Tr(λ_a λ_b) = 2 δ_ab` and obey
//! `λ_a λ_b = (2/N) δ_ab 1 + (d_abc + i f_abc) λ_c`.

use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::{CMatrix, RMatrix, C64, I, ONE, ZERO};
use crate::{Error, Result};

/// Entries of `f` and `d` with magnitude at or below this are not stored.
pub const SPARSITY_THRESHOLD: f64 = 1e-12;

/// Position of each generator type in the basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Ordering {
    /// All symmetric `Λ^{jk}_s` (lexicographic `j < k`), then all antisymmetric `Λ^{jk}_a`
    /// in the same order, then the diagonal `Λ^l`, `l = 1..N-1`.
    #[default]
    SymAntisymDiag,
    /// Textbook Gell-Mann order: for `k = 2..N`, the pairs `Λ^{jk}_s, Λ^{jk}_a` for
    /// `j < k` followed by `Λ^{k-1}`. For `N = 3` this is `λ_1 … λ_8`.
    GellMann,
}

impl Ordering {
    /// Name used in exported headers.
    pub fn name(self) -> &'static str {
        match self {
            Ordering::SymAntisymDiag => "sym-antisym-diag",
            Ordering::GellMann => "gell-mann",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "sym-antisym-diag" => Some(Ordering::SymAntisymDiag),
            "gell-mann" => Some(Ordering::GellMann),
            _ => None,
        }
    }
}

/// Which generator sits at a basis index. Row/column labels are 1-based, as in `Λ^{jk}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    /// `E_jk + E_kj`
    Symmetric { j: usize, k: usize },
    /// `-i E_jk + i E_kj`
    Antisymmetric { j: usize, k: usize },
    /// `sqrt(2/(l(l+1))) (Σ_{m≤l} E_mm - l E_{l+1,l+1})`
    Diagonal { l: usize },
}

impl GeneratorKind {
    fn matrix(self, n: usize) -> CMatrix {
        let mut m = CMatrix::zeros(n, n);
        match self {
            GeneratorKind::Symmetric { j, k } => {
                m[(j - 1, k - 1)] = ONE;
                m[(k - 1, j - 1)] = ONE;
            }
            GeneratorKind::Antisymmetric { j, k } => {
                m[(j - 1, k - 1)] = -I;
                m[(k - 1, j - 1)] = I;
            }
            GeneratorKind::Diagonal { l } => {
                let norm = libm::sqrt(2.0 / (l * (l + 1)) as f64);
                for i in 0..l {
                    m[(i, i)] = C64::new(norm, 0.0);
                }
                m[(l, l)] = C64::new(-(l as f64) * norm, 0.0);
            }
        }
        m
    }
}

fn kinds_for(n: usize, ordering: Ordering) -> Vec<GeneratorKind> {
    let mut kinds = Vec::with_capacity(n * n - 1);
    match ordering {
        Ordering::SymAntisymDiag => {
            for j in 1..=n {
                for k in (j + 1)..=n {
                    kinds.push(GeneratorKind::Symmetric { j, k });
                }
            }
            for j in 1..=n {
                for k in (j + 1)..=n {
                    kinds.push(GeneratorKind::Antisymmetric { j, k });
                }
            }
            kinds.extend((1..n).map(|l| GeneratorKind::Diagonal { l }));
        }
        Ordering::GellMann => {
            for k in 2..=n {
                for j in 1..k {
                    kinds.push(GeneratorKind::Symmetric { j, k });
                    kinds.push(GeneratorKind::Antisymmetric { j, k });
                }
                kinds.push(GeneratorKind::Diagonal { l: k - 1 });
            }
        }
    }
    kinds
}

/// The `N² - 1` generalized Gell-Mann matrices in a fixed ordering.
#[derive(Clone, Debug, PartialEq)]
pub struct GellMannBasis {
    dim: usize,
    ordering: Ordering,
    kinds: Vec<GeneratorKind>,
    generators: Vec<CMatrix>,
}

/// Generators for SU(`dim`) in the canonical [`Ordering::SymAntisymDiag`] order.
pub fn generate_basis(dim: usize) -> Result<GellMannBasis> {
    GellMannBasis::new(dim)
}

impl GellMannBasis {
    pub fn new(dim: usize) -> Result<Self> {
        Self::with_ordering(dim, Ordering::default())
    }

    pub fn with_ordering(dim: usize, ordering: Ordering) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidDimension { dim });
        }
        let kinds = kinds_for(dim, ordering);
        let generators = kinds.iter().map(|k| k.matrix(dim)).collect();
        Ok(GellMannBasis { dim, ordering, kinds, generators })
    }

    /// Copy of the basis with generator `index` multiplied by `factor`. The result is no
    /// longer a valid basis; it exists to exercise the diagnostics.
    pub fn rescaled(&self, index: usize, factor: f64) -> Self {
        let mut out = self.clone();
        out.generators[index] = out.generators[index].scale(factor);
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of generators, `N² - 1`.
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn ordering(&self) -> Ordering {
        self.ordering
    }

    pub fn generator(&self, a: usize) -> &CMatrix {
        &self.generators[a]
    }

    pub fn generators(&self) -> &[CMatrix] {
        &self.generators
    }

    pub fn kinds(&self) -> &[GeneratorKind] {
        &self.kinds
    }

    pub fn index_of(&self, kind: GeneratorKind) -> Option<usize> {
        self.kinds.iter().position(|&k| k == kind)
    }

    /// `Σ_a v_a λ_a`.
    pub fn combine(&self, coeffs: &[f64]) -> CMatrix {
        let mut out = CMatrix::zeros(self.dim, self.dim);
        for (c, g) in coeffs.iter().zip(&self.generators) {
            if *c != 0.0 {
                out.add_scaled(C64::new(*c, 0.0), g);
            }
        }
        out
    }

    /// Coefficients `½ Re Tr(M λ_a)` of `M` along each generator.
    pub fn project(&self, m: &CMatrix) -> Vec<f64> {
        self.generators.iter().map(|g| 0.5 * m.trace_product(g).re).collect()
    }

    /// `max_ab |Tr(λ_a λ_b) - 2 δ_ab|`.
    pub fn orthonormality_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (a, ga) in self.generators.iter().enumerate() {
            for (b, gb) in self.generators.iter().enumerate() {
                let target = if a == b { 2.0 } else { 0.0 };
                worst = worst.max((ga.trace_product(gb) - target).norm());
            }
        }
        worst
    }
}

/// One stored tensor component.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TensorEntry {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub value: f64,
}

/// Dense rank-3 tensor of side `n`, used internally for contractions.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor3 {
    n: usize,
    data: Vec<f64>,
}

impl Tensor3 {
    pub fn zeros(n: usize) -> Self {
        Tensor3 { n, data: vec![0.0; n * n * n] }
    }

    fn from_entries(n: usize, entries: &[TensorEntry]) -> Self {
        let mut t = Self::zeros(n);
        for e in entries {
            t.data[(e.a * n + e.b) * n + e.c] = e.value;
        }
        t
    }

    pub fn side(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize, c: usize) -> f64 {
        self.data[(a * self.n + b) * self.n + c]
    }

    /// Slice `T[a][b][·]`.
    #[inline]
    pub fn fiber(&self, a: usize, b: usize) -> &[f64] {
        let start = (a * self.n + b) * self.n;
        &self.data[start..start + self.n]
    }

    /// `T'_{jpm} = T_{kql} R_kj R_qp R_lm`.
    pub fn rotate(&self, r: &RMatrix) -> Tensor3 {
        let n = self.n;
        // contract one index at a time: n⁴ work per step
        let mut t1 = vec![0.0; n * n * n]; // [k][q][m]
        for k in 0..n {
            for q in 0..n {
                let fib = self.fiber(k, q);
                for m in 0..n {
                    t1[(k * n + q) * n + m] = (0..n).map(|l| fib[l] * r[(l, m)]).sum();
                }
            }
        }
        let mut t2 = vec![0.0; n * n * n]; // [k][p][m]
        for k in 0..n {
            for q in 0..n {
                for p in 0..n {
                    let rqp = r[(q, p)];
                    if rqp == 0.0 {
                        continue;
                    }
                    for m in 0..n {
                        t2[(k * n + p) * n + m] += t1[(k * n + q) * n + m] * rqp;
                    }
                }
            }
        }
        let mut out = Tensor3::zeros(n);
        for k in 0..n {
            for j in 0..n {
                let rkj = r[(k, j)];
                if rkj == 0.0 {
                    continue;
                }
                for pm in 0..n * n {
                    out.data[j * n * n + pm] += t2[k * n * n + pm] * rkj;
                }
            }
        }
        out
    }

    pub fn max_abs_diff(&self, other: &Tensor3) -> f64 {
        self.data.iter().zip(&other.data).fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }
}

/// Totally antisymmetric `f_abc` and totally symmetric `d_abc` of SU(N), stored sparsely
/// with every index permutation present.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureTensors {
    dim: usize,
    n: usize,
    tolerance: f64,
    ordering: Ordering,
    f: Vec<TensorEntry>,
    d: Vec<TensorEntry>,
    f_dense: Tensor3,
    d_dense: Tensor3,
}

/// `f_abc = Tr([λ_a, λ_b] λ_c) / 4i`, `d_abc = Tr({λ_a, λ_b} λ_c) / 4`.
pub fn compute_tensors(basis: &GellMannBasis, tolerance: f64) -> Result<StructureTensors> {
    StructureTensors::compute(basis, tolerance)
}

impl StructureTensors {
    /// Fails with [`Error::ImaginaryResidue`] when a trace that must be real (for `d`) or
    /// imaginary (for the commutator) is off by more than `tolerance`.
    pub fn compute(basis: &GellMannBasis, tolerance: f64) -> Result<Self> {
        let n = basis.len();
        let gens = basis.generators();
        let products: Vec<Vec<CMatrix>> =
            gens.iter().map(|ga| gens.iter().map(|gb| ga * gb).collect()).collect();
        let mut f = Vec::new();
        let mut d = Vec::new();
        let mut worst_residue: f64 = 0.0;
        #[allow(clippy::needless_range_loop)]
        for a in 0..n {
            for b in 0..n {
                for (c, gc) in gens.iter().enumerate() {
                    let ab = products[a][b].trace_product(gc);
                    let ba = products[b][a].trace_product(gc);
                    let fv = (ab - ba) / (I * 4.0);
                    let dv = (ab + ba) / 4.0;
                    worst_residue = worst_residue.max(fv.im.abs()).max(dv.im.abs());
                    if fv.re.abs() > SPARSITY_THRESHOLD {
                        f.push(TensorEntry { a, b, c, value: fv.re });
                    }
                    if dv.re.abs() > SPARSITY_THRESHOLD {
                        d.push(TensorEntry { a, b, c, value: dv.re });
                    }
                }
            }
        }
        if worst_residue > tolerance {
            return Err(Error::ImaginaryResidue { residue: worst_residue });
        }
        Ok(Self::from_entries(basis.dim(), basis.ordering(), tolerance, f, d))
    }

    fn from_entries(
        dim: usize,
        ordering: Ordering,
        tolerance: f64,
        f: Vec<TensorEntry>,
        d: Vec<TensorEntry>,
    ) -> Self {
        let n = dim * dim - 1;
        let f_dense = Tensor3::from_entries(n, &f);
        let d_dense = Tensor3::from_entries(n, &d);
        StructureTensors { dim, n, tolerance, ordering, f, d, f_dense, d_dense }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of generators `N² - 1`.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn ordering(&self) -> Ordering {
        self.ordering
    }

    /// Nonzero `f` entries sorted by `(a, b, c)`.
    pub fn f_entries(&self) -> &[TensorEntry] {
        &self.f
    }

    /// Nonzero `d` entries sorted by `(a, b, c)`.
    pub fn d_entries(&self) -> &[TensorEntry] {
        &self.d
    }

    pub fn f(&self, a: usize, b: usize, c: usize) -> f64 {
        self.f_dense.get(a, b, c)
    }

    pub fn d(&self, a: usize, b: usize, c: usize) -> f64 {
        self.d_dense.get(a, b, c)
    }

    pub fn f_dense(&self) -> &Tensor3 {
        &self.f_dense
    }

    pub fn d_dense(&self) -> &Tensor3 {
        &self.d_dense
    }

    /// `q_a = d_abc u_b v_c`.
    pub fn d_contract(&self, u: &[f64], v: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.n];
        for e in &self.d {
            out[e.a] += e.value * u[e.b] * v[e.c];
        }
        out
    }

    /// `d_abc P_a P_b P_c`.
    pub fn d_cubic(&self, p: &[f64]) -> f64 {
        self.d.iter().map(|e| e.value * p[e.a] * p[e.b] * p[e.c]).sum()
    }

    /// Residuals of the two-index contractions and the `d` trace:
    /// `f_ijk f_ijn - N δ_kn`, `d_ijk d_ijn - ((N²-4)/N) δ_kn`, `Σ_j d_ijj`.
    pub fn contraction_residuals(&self) -> ContractionResiduals {
        let n = self.n;
        let nf = self.dim as f64;
        let dd_target = (nf * nf - 4.0) / nf;
        let mut ff = 0.0f64;
        let mut dd = 0.0f64;
        for k in 0..n {
            for m in 0..n {
                let mut sf = 0.0;
                let mut sd = 0.0;
                for i in 0..n {
                    for j in 0..n {
                        sf += self.f_dense.get(i, j, k) * self.f_dense.get(i, j, m);
                        sd += self.d_dense.get(i, j, k) * self.d_dense.get(i, j, m);
                    }
                }
                let delta = if k == m { 1.0 } else { 0.0 };
                ff = ff.max((sf - nf * delta).abs());
                dd = dd.max((sd - dd_target * delta).abs());
            }
        }
        let trace_d = (0..n)
            .map(|i| (0..n).map(|j| self.d_dense.get(i, j, j)).sum::<f64>().abs())
            .fold(0.0, f64::max);
        ContractionResiduals { ff, dd, trace_d }
    }

    /// Largest violation of total antisymmetry of `f` and total symmetry of `d`.
    pub fn symmetry_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for e in &self.f {
            let (a, b, c, v) = (e.a, e.b, e.c, e.value);
            for w in [
                v + self.f(b, a, c),
                v + self.f(a, c, b),
                v + self.f(c, b, a),
                v - self.f(b, c, a),
                v - self.f(c, a, b),
            ] {
                worst = worst.max(w.abs());
            }
        }
        for e in &self.d {
            let (a, b, c, v) = (e.a, e.b, e.c, e.value);
            for p in [(b, a, c), (a, c, b), (c, b, a), (b, c, a), (c, a, b)] {
                worst = worst.max((v - self.d(p.0, p.1, p.2)).abs());
            }
        }
        worst
    }
}

/// Worst-case residuals of the quadratic `f`/`d` contraction identities.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContractionResiduals {
    pub ff: f64,
    pub dd: f64,
    pub trace_d: f64,
}

/// Outcome of a diagnostic identity check.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IdentityCheck {
    pub holds: bool,
    pub max_residual: f64,
}

/// Checks `λ_a λ_b = (2/N) δ_ab 1 + (d_abc + i f_abc) λ_c` for every pair; the residual is
/// the Frobenius norm of the difference.
pub fn verify_product_rule(basis: &GellMannBasis, tensors: &StructureTensors, tolerance: f64) -> IdentityCheck {
    let n = basis.len();
    let dim = basis.dim();
    if tensors.dim() != dim || tensors.len() != n {
        return IdentityCheck { holds: false, max_residual: f64::INFINITY };
    }
    let id = CMatrix::identity(dim);
    let mut worst: f64 = 0.0;
    for a in 0..n {
        for b in 0..n {
            let mut r = basis.generator(a) * basis.generator(b);
            if a == b {
                r.add_scaled(C64::new(-2.0 / dim as f64, 0.0), &id);
            }
            for c in 0..n {
                let coeff = C64::new(tensors.d(a, b, c), tensors.f(a, b, c));
                if coeff != ZERO {
                    r.add_scaled(-coeff, basis.generator(c));
                }
            }
            worst = worst.max(r.frobenius_norm());
        }
    }
    IdentityCheck { holds: worst <= tolerance, max_residual: worst }
}

/// Checks `f_mki f_nli = (2/N)(δ_mn δ_kl - δ_ml δ_kn) + d_mni d_kli - d_kni d_mli` for all
/// free indices.
pub fn verify_ff_dd_identity(tensors: &StructureTensors, tolerance: f64) -> IdentityCheck {
    let n = tensors.len();
    let two_over_n = 2.0 / tensors.dim() as f64;
    let f = tensors.f_dense();
    let d = tensors.d_dense();
    let dot = |u: &[f64], v: &[f64]| u.iter().zip(v).map(|(a, b)| a * b).sum::<f64>();
    let delta = |i: usize, j: usize| if i == j { 1.0 } else { 0.0 };
    let mut worst: f64 = 0.0;
    for m in 0..n {
        for k in 0..n {
            let fmk = f.fiber(m, k);
            for nn in 0..n {
                let dmn = d.fiber(m, nn);
                let dkn = d.fiber(k, nn);
                for l in 0..n {
                    let lhs = dot(fmk, f.fiber(nn, l));
                    let rhs = two_over_n * (delta(m, nn) * delta(k, l) - delta(m, l) * delta(k, nn))
                        + dot(dmn, d.fiber(k, l))
                        - dot(dkn, d.fiber(m, l));
                    worst = worst.max((lhs - rhs).abs());
                }
            }
        }
    }
    IdentityCheck { holds: worst <= tolerance, max_residual: worst }
}

/// Adjoint-representation matrix with `U λ_j U† = R_kj λ_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct AdjointMatrix {
    dim: usize,
    r: RMatrix,
}

/// `R_kj = ½ Tr(λ_k U λ_j U†)`. Rejects `U` with `‖U†U - 1‖_F > tolerance`.
pub fn adjoint_of(u: &CMatrix, basis: &GellMannBasis, tolerance: f64) -> Result<AdjointMatrix> {
    AdjointMatrix::from_unitary(u, basis, tolerance)
}

impl AdjointMatrix {
    pub fn from_unitary(u: &CMatrix, basis: &GellMannBasis, tolerance: f64) -> Result<Self> {
        let dim = basis.dim();
        if u.rows() != dim || u.cols() != dim {
            return Err(Error::LengthMismatch { expected: dim, found: u.rows() });
        }
        let deviation = u.unitarity_deviation();
        if deviation > tolerance {
            return Err(Error::NotUnitary { deviation });
        }
        let ud = u.adjoint();
        let n = basis.len();
        let mut r = RMatrix::zeros(n, n);
        for j in 0..n {
            let rotated = &(u * basis.generator(j)) * &ud;
            for k in 0..n {
                r[(k, j)] = 0.5 * basis.generator(k).trace_product(&rotated).re;
            }
        }
        Ok(AdjointMatrix { dim, r })
    }

    pub fn identity(dim: usize) -> Self {
        AdjointMatrix { dim, r: RMatrix::identity(dim * dim - 1) }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &RMatrix {
        &self.r
    }

    /// `P ↦ R P`.
    pub fn apply(&self, p: &[f64]) -> Vec<f64> {
        self.r.mul_vec(p)
    }

    /// Matrix product `self · other`, the adjoint of `U V` when `self = R(U)`, `other = R(V)`.
    pub fn compose(&self, other: &AdjointMatrix) -> AdjointMatrix {
        AdjointMatrix { dim: self.dim, r: &self.r * &other.r }
    }

    /// `max |RᵀR - 1|`.
    pub fn orthogonality_residual(&self) -> f64 {
        let n = self.r.rows();
        (&(&self.r.transpose() * &self.r) - &RMatrix::identity(n)).max_abs()
    }

    /// Max deviations of `f_kql R_kj R_qp R_lm` from `f_jpm` and likewise for `d`.
    pub fn covariance_residuals(&self, tensors: &StructureTensors) -> (f64, f64) {
        let f_rot = tensors.f_dense().rotate(&self.r);
        let d_rot = tensors.d_dense().rotate(&self.r);
        (f_rot.max_abs_diff(tensors.f_dense()), d_rot.max_abs_diff(tensors.d_dense()))
    }
}
