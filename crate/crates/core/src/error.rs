use core::fmt;

/// Errors reported by the state constructors and the checks built on them.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Qudit dimension below 2.
    InvalidDimension { dim: usize },
    /// A vector or matrix had the wrong size.
    LengthMismatch { expected: usize, found: usize },
    /// Two objects built for different qudit dimensions were combined.
    DimensionMismatch { expected: usize, found: usize },
    /// Matrix is not Hermitian; `deviation` is `max |M - M†|`.
    NotHermitian { deviation: f64 },
    /// Trace differs from one.
    TraceNotOne { trace: f64 },
    /// Trace of a matrix that must be traceless.
    NotTraceless { trace: f64 },
    /// `‖U†U - 1‖` above tolerance.
    NotUnitary { deviation: f64 },
    /// A structure constant came out with a non-negligible imaginary part.
    ImaginaryResidue { residue: f64 },
    /// The state has a negative eigenvalue where a physical state is required.
    NotPositive { min_eigenvalue: f64 },
    /// The state does not satisfy the pure-state conditions.
    NotPure { residual: f64 },
    /// The symmetric-polynomial and eigenvalue positivity verdicts disagree.
    NumericalBreakdown { min_eigenvalue: f64 },
    /// `|P| = 0` with nonzero cubic invariant.
    DegenerateInput { q: f64 },
    /// `√3 |Q| / |P|³ > 1`: the qutrit characteristic cubic has complex roots.
    DiscriminantViolation { cos_chi: f64 },
    /// Operation defined only for qubits (`N = 2`).
    QubitsOnly { dim: usize },
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidDimension { dim } => write!(f, "qudit dimension must be at least 2, got {dim}"),
            Error::LengthMismatch { expected, found } => {
                write!(f, "expected length {expected}, found {found}")
            }
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected N = {expected}, found N = {found}")
            }
            Error::NotHermitian { deviation } => {
                write!(f, "matrix is not Hermitian (max |M - M^dagger| = {deviation:e})")
            }
            Error::TraceNotOne { trace } => write!(f, "trace must be 1, got {trace}"),
            Error::NotTraceless { trace } => write!(f, "matrix must be traceless, trace = {trace:e}"),
            Error::NotUnitary { deviation } => {
                write!(f, "matrix is not unitary (|U^dagger U - 1| = {deviation:e})")
            }
            Error::ImaginaryResidue { residue } => {
                write!(f, "structure constant has imaginary residue {residue:e}; basis is broken")
            }
            Error::NotPositive { min_eigenvalue } => {
                write!(f, "state is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")
            }
            Error::NotPure { residual } => {
                write!(f, "state is not pure (purity residual {residual:e})")
            }
            Error::NumericalBreakdown { min_eigenvalue } => write!(
                f,
                "symmetric-polynomial and eigenvalue positivity verdicts disagree (min eigenvalue {min_eigenvalue:e})"
            ),
            Error::DegenerateInput { q } => {
                write!(f, "|P| = 0 requires Q = 0, got Q = {q:e}")
            }
            Error::DiscriminantViolation { cos_chi } => {
                write!(f, "characteristic cubic has complex roots (cos chi = {cos_chi})")
            }
            Error::QubitsOnly { dim } => write!(f, "operation requires N = 2, got N = {dim}"),
        }
    }
}

impl core::error::Error for Error {}
