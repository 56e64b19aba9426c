//! JSON and CSV layouts read and written by the command line.
//!
//! Tensor and generator indices are 0-based positions in the basis ordering named in the
//! file or on the command line.

use qudit_core::linalg::CMatrix;
use qudit_core::RMatrix;
use serde::{Deserialize, Serialize};

/// One complex matrix as separate real and imaginary row arrays.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl From<&CMatrix> for MatrixJson {
    fn from(m: &CMatrix) -> Self {
        let rows = |f: fn(&qudit_core::C64) -> f64| (0..m.rows()).map(|i| (0..m.cols()).map(|j| f(&m[(i, j)])).collect()).collect();
        MatrixJson { re: rows(|z| z.re), im: rows(|z| z.im) }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TensorHeader {
    #[serde(rename = "N")]
    pub n: usize,
    pub tolerance: f64,
    pub ordering: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TensorRecord {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub value: f64,
}

/// Nonzero `f_abc` and `d_abc`, every index permutation listed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TensorExport {
    pub header: TensorHeader,
    pub f: Vec<TensorRecord>,
    pub d: Vec<TensorRecord>,
}

/// `{N, bloch, physical}`; `physical` is optional on input and recomputed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuditStateJson {
    #[serde(rename = "N")]
    pub n: usize,
    pub bloch: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub physical: Option<bool>,
}

/// `{N, x, y, omega}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BipartiteStateJson {
    #[serde(rename = "N")]
    pub n: usize,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub omega: Vec<Vec<f64>>,
}

impl BipartiteStateJson {
    pub fn omega_matrix(&self) -> Option<RMatrix> {
        RMatrix::from_rows(&self.omega)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateJson {
    Qudit(QuditStateJson),
    Bipartite(BipartiteStateJson),
}

/// A state file holds one state or an array of them.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateDocument {
    One(StateJson),
    Many(Vec<StateJson>),
}

impl StateDocument {
    pub fn into_states(self) -> Vec<StateJson> {
        match self {
            StateDocument::One(s) => vec![s],
            StateDocument::Many(v) => v,
        }
    }
}

/// `{dim, power_sums, elementary, psd, min_eigenvalue}`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymPolyJson {
    pub dim: usize,
    pub power_sums: Vec<f64>,
    pub elementary: Vec<f64>,
    pub psd: bool,
    pub min_eigenvalue: f64,
}

impl From<&qudit_core::SymPolyReport> for SymPolyJson {
    fn from(r: &qudit_core::SymPolyReport) -> Self {
        SymPolyJson {
            dim: r.dim,
            power_sums: r.power_sums.clone(),
            elementary: r.elementary.clone(),
            psd: r.psd,
            min_eigenvalue: r.min_eigenvalue,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantsJson {
    pub p2: f64,
    #[serde(rename = "Q")]
    pub q: f64,
    pub quartic: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuditPurityJson {
    pub norm_residual: f64,
    pub vector_residual: f64,
    pub pure: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuditReport {
    #[serde(rename = "N")]
    pub n: usize,
    pub physical: bool,
    pub invariants: InvariantsJson,
    /// `e_2, e_3, e_4` from the invariants.
    pub elementary_from_invariants: [f64; 3],
    pub sym_poly: SymPolyJson,
    pub eigenvalues: Vec<f64>,
    pub entropy: Option<f64>,
    pub purity: QuditPurityJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PurityJson {
    pub r_sum: f64,
    pub r_x: f64,
    pub r_y: f64,
    pub r_omega: f64,
    pub pure: bool,
}

impl PurityJson {
    pub fn new(r: &qudit_core::two_qudit::PurityResiduals, tolerance: f64) -> Self {
        PurityJson { r_sum: r.r_sum, r_x: r.r_x, r_y: r.r_y, r_omega: r.r_omega, pure: r.is_pure(tolerance) }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReducedJson {
    pub bloch: Vec<f64>,
    pub physical: bool,
    pub entropy: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QubitIdentitiesJson {
    pub det_omega: f64,
    pub x_norm_sqr: f64,
    pub y_norm_sqr: f64,
    pub trace_relation: f64,
    pub norms_equal: f64,
    pub gram: f64,
    pub det_relation: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZMatrixJson {
    pub z: Vec<Vec<f64>>,
    pub det_omega: f64,
    pub adjugate_residual: f64,
    pub entangled: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MixedPositivityJson {
    pub margins: [f64; 3],
    pub satisfied: [bool; 3],
    pub equality: [bool; 3],
    pub elementary: [f64; 3],
    pub reconciliation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QubitPairJson {
    pub purity: PurityJson,
    pub identities: Option<QubitIdentitiesJson>,
    pub z: ZMatrixJson,
    pub mixed_positivity: MixedPositivityJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BipartiteReport {
    #[serde(rename = "N")]
    pub n: usize,
    pub physical: bool,
    pub sym_poly: SymPolyJson,
    pub eigenvalues: Vec<f64>,
    pub purity: PurityJson,
    pub omega_trace_residual: f64,
    pub reduced: [ReducedJson; 2],
    pub qubits: Option<QubitPairJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Report {
    Qudit(QuditReport),
    Bipartite(Box<BipartiteReport>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntropyJson {
    #[serde(rename = "N")]
    pub n: usize,
    pub entropy: f64,
    /// Entropies of the two reduced states, for bipartite input.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reduced: Option<[f64; 2]>,
}

/// Row of the qutrit region CSV.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionRow {
    #[serde(rename = "|P|")]
    pub p: f64,
    #[serde(rename = "Q")]
    pub q: f64,
    pub admissible: u8,
    pub fail_mask: u8,
}

/// Row of the qutrit boundary CSV.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryRow {
    #[serde(rename = "|P|")]
    pub p: f64,
    pub condition1: f64,
    pub discriminant_upper: f64,
    pub discriminant_lower: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionJson {
    pub resolution: usize,
    pub p_axis: Vec<f64>,
    pub q_axis: Vec<f64>,
    /// `admissible[iq][ip]`
    pub admissible: Vec<Vec<bool>>,
    pub fail_mask: Vec<Vec<u8>>,
    pub boundary: Vec<BoundaryRow>,
}

/// Row of the Werner scan CSV.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WernerRow {
    #[serde(rename = "N")]
    pub n: usize,
    pub alpha: f64,
    pub e2: f64,
    pub e3: f64,
    pub min_eigenvalue: f64,
    pub psd: u8,
    pub purity_residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WernerJson {
    #[serde(rename = "N")]
    pub n: usize,
    /// Both roots `±N/2` of the normalization condition.
    pub alpha1: [f64; 2],
    /// Non-zero root of the `ω` condition.
    pub alpha2: f64,
    pub consistent: bool,
    pub min_residual: f64,
    pub argmin: f64,
    /// Largest `|α|` allowed by `e_2 ≥ 0`.
    pub e2_bound: f64,
    pub scan: Vec<WernerRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityJson {
    pub generator: String,
    pub index: usize,
    pub max_deviation: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DictionaryJson {
    pub index: usize,
    pub generator: String,
    pub labels: Vec<String>,
    pub coeffs: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Su4Json {
    pub ordering: String,
    pub identities: Vec<IdentityJson>,
    pub all_hold: bool,
    pub dictionary: Vec<DictionaryJson>,
}
