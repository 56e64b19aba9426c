//! Density matrices of single qudits and qudit pairs written in the generalized
//! Gell-Mann basis.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is a pure function of its
//! inputs; IO, file formats and the command line live in the `qudit` crate.
//!
//! Layout:
//!
//! - [`linalg`], [`eigen`], [`random`]: small dense complex linear algebra, a Jacobi
//!   eigensolver for Hermitian matrices and Haar sampling.
//! - [`sun_basis`]: generalized Gell-Mann generators, the `f`/`d` tensors and the
//!   adjoint representation.
//! - [`sym_poly`]: power sums, elementary symmetric polynomials and the positivity test
//!   built on them.
//! - [`qudit_state`]: single-qudit Bloch form, SU(N) invariants, purity and entropy.
//! - [`qutrit`]: closed-form qutrit spectrum and the admissible `(|P|, Q)` region.
//! - [`two_qudit`]: bipartite component form `(x, y, ω)`, purity conditions and Werner states.
//! - [`su4_bridge`]: SU(4) Gell-Mann generators as Pauli products.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod eigen;
mod error;
pub mod linalg;
pub mod qudit_state;
pub mod qutrit;
pub mod random;
pub mod su4_bridge;
pub mod sun_basis;
pub mod sym_poly;
pub mod two_qudit;

pub use error::{Error, Result};
pub use linalg::{CMatrix, RMatrix, C64};
pub use qudit_state::{InvariantSet, QuditState};
pub use sun_basis::{AdjointMatrix, GellMannBasis, Ordering, StructureTensors};
pub use sym_poly::SymPolyReport;
pub use two_qudit::BipartiteState;

/// Absolute tolerance used for matrix-norm residuals and sign tests unless a caller
/// overrides it.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
