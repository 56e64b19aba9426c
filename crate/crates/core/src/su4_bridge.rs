//! SU(4) Gell-Mann generators as combinations of two-qubit Pauli products, and the
//! matching change of coordinates between the two-qubit component form `(x, y, ω)` and the
//! 15-component ququart Bloch vector.
//!
//! With `c_{μν}` the coefficients of `¼ Σ c_{μν} σ_μ⊗σ_ν` (`c_{i0} = x_i`, `c_{0j} = y_j`,
//! `c_{ij} = ω_ij`) and `ρ = ¼(1 + Λ_a P_a)`, the two are related by `P = M c`,
//! `M_{a,μν} = ½ Tr(Λ_a σ_μ⊗σ_ν)`. Both sets are orthogonal under the trace form, so
//! `M Mᵀ = 2·1` and `c = ½ Mᵀ P`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::{CMatrix, RMatrix, C64, I, ONE, ZERO};
use crate::sun_basis::{GellMannBasis, GeneratorKind, Ordering};
use crate::{Error, Result};

const FRAC_1_SQRT_3: f64 = 0.577_350_269_189_625_8;
const FRAC_1_SQRT_6: f64 = 0.408_248_290_463_863_f64;

/// `σ_0 = 1`, `σ_1`, `σ_2`, `σ_3`.
pub fn pauli(k: usize) -> CMatrix {
    let m = match k {
        0 => [ONE, ZERO, ZERO, ONE],
        1 => [ZERO, ONE, ONE, ZERO],
        2 => [ZERO, -I, I, ZERO],
        3 => [ONE, ZERO, ZERO, -ONE],
        _ => panic!("Pauli index out of range: {k}"),
    };
    CMatrix::from_row_major(2, 2, m.to_vec())
}

/// `"1"`, `"s1"`, `"s2"`, `"s3"`.
pub fn pauli_label(k: usize) -> &'static str {
    ["1", "s1", "s2", "s3"][k]
}

/// `"s3⊗s1"` style label of `σ_left ⊗ σ_right`.
pub fn product_label(left: usize, right: usize) -> String {
    format!("{}⊗{}", pauli_label(left), pauli_label(right))
}

/// `σ_left ⊗ σ_right`.
pub fn pauli_product(left: usize, right: usize) -> CMatrix {
    pauli(left).kron(&pauli(right))
}

/// Pauli-product pairs `(μ, ν) ≠ (0, 0)` in component order: `x` (`(i, 0)`), then `y`
/// (`(0, j)`), then `ω` row-major (`(i, j)`).
pub fn component_pairs() -> Vec<(usize, usize)> {
    let mut pairs: Vec<(usize, usize)> = (1..4).map(|i| (i, 0)).collect();
    pairs.extend((1..4).map(|j| (0, j)));
    for i in 1..4 {
        pairs.extend((1..4).map(|j| (i, j)));
    }
    pairs
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PauliTerm {
    pub coeff: f64,
    pub left: usize,
    pub right: usize,
}

/// Closed-form expansion of one SU(4) generator.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliExpansion {
    pub kind: GeneratorKind,
    pub terms: Vec<PauliTerm>,
}

impl PauliExpansion {
    pub fn matrix(&self) -> CMatrix {
        let mut m = CMatrix::zeros(4, 4);
        for t in &self.terms {
            m.add_scaled(C64::new(t.coeff, 0.0), &pauli_product(t.left, t.right));
        }
        m
    }
}

/// Short name such as `L12s`, `L14a`, `L3`.
pub fn kind_label(kind: GeneratorKind) -> String {
    match kind {
        GeneratorKind::Symmetric { j, k } => format!("L{j}{k}s"),
        GeneratorKind::Antisymmetric { j, k } => format!("L{j}{k}a"),
        GeneratorKind::Diagonal { l } => format!("L{l}"),
    }
}

/// The fifteen SU(4) generators written as Pauli products.
pub fn pauli_expansions() -> Vec<PauliExpansion> {
    use GeneratorKind::{Antisymmetric as A, Diagonal as D, Symmetric as S};
    let t = |coeff, left, right| PauliTerm { coeff, left, right };
    let h = 0.5;
    let r3 = FRAC_1_SQRT_3;
    let r6 = FRAC_1_SQRT_6;
    let table: Vec<(GeneratorKind, Vec<PauliTerm>)> = vec![
        (S { j: 1, k: 2 }, vec![t(h, 3, 1), t(h, 0, 1)]),
        (S { j: 3, k: 4 }, vec![t(h, 0, 1), t(-h, 3, 1)]),
        (S { j: 1, k: 3 }, vec![t(h, 1, 0), t(h, 1, 3)]),
        (S { j: 2, k: 4 }, vec![t(h, 1, 0), t(-h, 1, 3)]),
        (S { j: 1, k: 4 }, vec![t(h, 1, 1), t(-h, 2, 2)]),
        (S { j: 2, k: 3 }, vec![t(h, 1, 1), t(h, 2, 2)]),
        (A { j: 1, k: 2 }, vec![t(h, 0, 2), t(h, 3, 2)]),
        (A { j: 3, k: 4 }, vec![t(h, 0, 2), t(-h, 3, 2)]),
        (A { j: 1, k: 3 }, vec![t(h, 2, 0), t(h, 2, 3)]),
        (A { j: 2, k: 4 }, vec![t(h, 2, 0), t(-h, 2, 3)]),
        (A { j: 1, k: 4 }, vec![t(h, 1, 2), t(h, 2, 1)]),
        (A { j: 2, k: 3 }, vec![t(h, 2, 1), t(-h, 1, 2)]),
        (D { l: 1 }, vec![t(h, 0, 3), t(h, 3, 3)]),
        (D { l: 2 }, vec![t(r3, 3, 0), t(h * r3, 3, 3), t(-h * r3, 0, 3)]),
        (D { l: 3 }, vec![t(r6, 3, 0), t(-r6, 3, 3), t(r6, 0, 3)]),
    ];
    table.into_iter().map(|(kind, terms)| PauliExpansion { kind, terms }).collect()
}

/// Entrywise comparison of one generator with its Pauli expansion.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpansionCheck {
    pub kind: GeneratorKind,
    pub label: String,
    pub max_deviation: f64,
}

/// Builds both sides of every expansion in [`pauli_expansions`] and reports the largest
/// entrywise difference.
pub fn verify_pauli_expansions() -> Vec<ExpansionCheck> {
    let basis = GellMannBasis::new(4).expect("dimension 4 is valid");
    pauli_expansions()
        .into_iter()
        .map(|e| {
            let idx = basis.index_of(e.kind).expect("every SU(4) kind is in the basis");
            let max_deviation = (basis.generator(idx) - &e.matrix()).max_abs();
            ExpansionCheck { kind: e.kind, label: kind_label(e.kind), max_deviation }
        })
        .collect()
}

/// One generator of the SU(4) basis with its Pauli-product coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct DictionaryEntry {
    pub index: usize,
    pub kind: GeneratorKind,
    pub labels: Vec<String>,
    pub coeffs: Vec<f64>,
}

/// SU(4) basis together with the frozen change-of-basis matrix `M`.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliProductBasis {
    basis: GellMannBasis,
    pairs: Vec<(usize, usize)>,
    m: RMatrix,
}

impl PauliProductBasis {
    pub fn new(ordering: Ordering) -> Self {
        let basis = GellMannBasis::with_ordering(4, ordering).expect("dimension 4 is valid");
        let pairs = component_pairs();
        let products: Vec<CMatrix> = pairs.iter().map(|&(a, b)| pauli_product(a, b)).collect();
        let m = RMatrix::from_fn(15, 15, |a, p| 0.5 * basis.generator(a).trace_product(&products[p]).re);
        PauliProductBasis { basis, pairs, m }
    }

    pub fn basis(&self) -> &GellMannBasis {
        &self.basis
    }

    /// `M_{a,p} = ½ Tr(Λ_a σ_μ⊗σ_ν)` with `p` running over [`component_pairs`].
    pub fn change_of_basis(&self) -> &RMatrix {
        &self.m
    }

    /// `P = M c`.
    pub fn components_to_ququart(&self, x: &[f64], y: &[f64], omega: &RMatrix) -> Result<Vec<f64>> {
        for v in [x, y] {
            if v.len() != 3 {
                return Err(Error::LengthMismatch { expected: 3, found: v.len() });
            }
        }
        if omega.rows() != 3 || omega.cols() != 3 {
            return Err(Error::LengthMismatch { expected: 3, found: omega.rows() });
        }
        let c: Vec<f64> = x.iter().chain(y).chain(omega.as_slice()).copied().collect();
        Ok(self.m.mul_vec(&c))
    }

    /// `c = ½ Mᵀ P`, split back into `(x, y, ω)`.
    pub fn ququart_to_components(&self, p: &[f64]) -> Result<(Vec<f64>, Vec<f64>, RMatrix)> {
        if p.len() != 15 {
            return Err(Error::LengthMismatch { expected: 15, found: p.len() });
        }
        let c: Vec<f64> = self.m.transpose().mul_vec(p).into_iter().map(|v| 0.5 * v).collect();
        let omega = RMatrix::from_fn(3, 3, |i, j| c[6 + 3 * i + j]);
        Ok((c[0..3].to_vec(), c[3..6].to_vec(), omega))
    }

    /// Pauli-product expansion `Λ_a = Σ_p (M_{a,p}/2) σ_μ⊗σ_ν` of every generator, keeping
    /// coefficients above `1e-12` in magnitude.
    pub fn dictionary(&self) -> Vec<DictionaryEntry> {
        (0..15)
            .map(|a| {
                let (labels, coeffs) = self
                    .pairs
                    .iter()
                    .enumerate()
                    .filter(|&(p, _)| self.m[(a, p)].abs() > 1e-12)
                    .map(|(p, &(l, r))| (product_label(l, r), 0.5 * self.m[(a, p)]))
                    .unzip();
                DictionaryEntry { index: a, kind: self.basis.kinds()[a], labels, coeffs }
            })
            .collect()
    }

    /// `max |M Mᵀ - 2·1|`.
    pub fn orthogonality_residual(&self) -> f64 {
        (&(&self.m * &self.m.transpose()) - &RMatrix::identity(15).scale(2.0)).max_abs()
    }
}

impl Default for PauliProductBasis {
    fn default() -> Self {
        Self::new(Ordering::default())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qudit_state::QuditState;
    use crate::sun_basis::StructureTensors;
    use crate::two_qudit::BipartiteState;

    #[test]
    fn all_expansions_exact() {
        let checks = verify_pauli_expansions();
        assert_eq!(checks.len(), 15);
        for c in &checks {
            assert!(c.max_deviation < 1e-15, "{c:?}");
        }
    }

    #[test]
    fn corner_generator() {
        let e = pauli_expansions().into_iter().find(|e| e.kind == GeneratorKind::Symmetric { j: 1, k: 4 }).unwrap();
        let m = e.matrix();
        assert_eq!(m[(0, 3)], ONE);
        assert_eq!(m[(3, 0)], ONE);
        assert_eq!(m.as_slice().iter().filter(|v| v.norm() > 0.0).count(), 2);
    }

    #[test]
    fn last_diagonal_generator() {
        let e = pauli_expansions().pop().unwrap();
        let m = e.matrix();
        let diag = [1.0, 1.0, 1.0, -3.0].map(|v| v * FRAC_1_SQRT_6);
        for (i, d) in diag.iter().enumerate() {
            assert!((m[(i, i)].re - d).abs() < 1e-15);
        }
    }

    #[test]
    fn sum_of_s12_and_s34() {
        let ex = pauli_expansions();
        let sum = &ex[0].matrix() + &ex[1].matrix();
        assert!((&sum - &pauli_product(0, 1)).max_abs() == 0.0);
    }

    #[test]
    fn change_of_basis_orthogonal() {
        for ord in [Ordering::SymAntisymDiag, Ordering::GellMann] {
            assert!(PauliProductBasis::new(ord).orthogonality_residual() < 1e-15);
        }
    }

    #[test]
    fn dictionary_agrees_with_table() {
        let pb = PauliProductBasis::default();
        let dict = pb.dictionary();
        for e in pauli_expansions() {
            let entry = dict.iter().find(|d| d.kind == e.kind).unwrap();
            assert_eq!(entry.labels.len(), e.terms.len());
            for t in &e.terms {
                let pos = entry.labels.iter().position(|l| *l == product_label(t.left, t.right)).unwrap();
                assert!((entry.coeffs[pos] - t.coeff).abs() < 1e-15);
            }
        }
        assert_eq!(product_label(3, 1), "s3⊗s1");
    }

    #[test]
    fn ket_00_as_ququart() {
        let pb = PauliProductBasis::default();
        let z = [0.0, 0.0, 1.0];
        let p = pb.components_to_ququart(&z, &z, &RMatrix::outer(&z, &z)).unwrap();
        let q = QuditState::from_bloch(pb.basis(), p).unwrap();
        let mut expected = CMatrix::zeros(4, 4);
        expected[(0, 0)] = ONE;
        assert!((q.rho() - &expected).max_abs() < 1e-15);
        let t = StructureTensors::compute(pb.basis(), 1e-9).unwrap();
        let inv = q.invariants(&t).unwrap();
        assert!((inv.p2 - 6.0).abs() < 1e-13 && (inv.cubic - 12.0).abs() < 1e-12);
    }

    #[test]
    fn singlet_round_trip() {
        let pb = PauliProductBasis::default();
        let w = RMatrix::identity(3).scale(-1.0);
        let p = pb.components_to_ququart(&[0.0; 3], &[0.0; 3], &w).unwrap();
        assert!((p.iter().map(|v| v * v).sum::<f64>() - 6.0).abs() < 1e-13);
        let (x, y, w2) = pb.ququart_to_components(&p).unwrap();
        assert!(x.iter().chain(&y).all(|v| v.abs() < 1e-15));
        assert!((&w2 - &w).max_abs() < 1e-15);
        let two = BipartiteState::from_components(&GellMannBasis::new(2).unwrap(), x, y, w2).unwrap();
        let q = QuditState::from_bloch(pb.basis(), p).unwrap();
        assert!((two.rho() - q.rho()).max_abs() < 1e-15);
        assert!(pb.ququart_to_components(&[0.0; 3]).is_err());
    }
}
