use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qudit_core::Ordering;

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "qudit", version, about = "Qudit density matrices in the generalized Gell-Mann basis")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalArgs,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Qudit dimension (ignored by commands that read it from an input file).
    #[arg(long = "N", global = true, default_value_t = 3)]
    pub n: usize,
    /// Absolute tolerance for residuals and sign tests.
    #[arg(long, global = true, default_value_t = qudit_core::DEFAULT_TOLERANCE)]
    pub tolerance: f64,
    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output file; standard output when omitted.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Generator ordering used for Bloch vectors and tensor indices.
    #[arg(long, global = true, value_enum, default_value_t = OrderingArg::SymAntisymDiag)]
    pub ordering: OrderingArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrderingArg {
    SymAntisymDiag,
    GellMann,
}

impl From<OrderingArg> for Ordering {
    fn from(o: OrderingArg) -> Self {
        match o {
            OrderingArg::SymAntisymDiag => Ordering::SymAntisymDiag,
            OrderingArg::GellMann => Ordering::GellMann,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StateKind {
    Pure,
    Mixed,
    BipartitePure,
    BipartiteMixed,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Export the generators as complex matrices.
    Basis,
    /// Export the nonzero f and d structure constants.
    Tensors,
    /// Physicality, invariants and purity report for states in a JSON file.
    Check {
        input: PathBuf,
        /// Exit with status 2 if any state is not positive semidefinite.
        #[arg(long)]
        require_physical: bool,
    },
    /// Von Neumann entropy of the states in a JSON file.
    Entropy { input: PathBuf },
    /// Admissible (|P|, Q) region of a qutrit on a square grid.
    QutritRegion {
        #[arg(long, default_value_t = 512)]
        resolution: usize,
        /// Where to write the boundary-curve CSV; defaults to `<output>_boundary.csv`.
        #[arg(long)]
        boundary: Option<PathBuf>,
        #[arg(long, default_value_t = 256)]
        boundary_samples: usize,
    },
    /// Pure Werner state consistency and positivity scan.
    Werner {
        /// Defaults to -N.
        #[arg(long, allow_hyphen_values = true)]
        alpha_min: Option<f64>,
        /// Defaults to N.
        #[arg(long, allow_hyphen_values = true)]
        alpha_max: Option<f64>,
        #[arg(long, default_value_t = 201)]
        steps: usize,
        /// Grid points for the residual minimization over [-N, N].
        #[arg(long, default_value_t = 10_000)]
        grid: usize,
    },
    /// Convert between a qubit pair (x, y, omega) and a ququart Bloch vector.
    Convert { input: PathBuf },
    /// Check the SU(4) Pauli-product expansions and export the dictionary.
    VerifySu4,
    /// Sample random states.
    Random {
        #[arg(long, value_enum, default_value_t = StateKind::Pure)]
        kind: StateKind,
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Ancilla dimension for mixed states; defaults to the system dimension.
        #[arg(long)]
        ancilla: Option<usize>,
    },
}

impl GlobalArgs {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.n < 2 {
            return Err(CliError::Usage(format!("--N must be at least 2, got {}", self.n)));
        }
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(CliError::Usage(format!("--tolerance must be positive and finite, got {}", self.tolerance)));
        }
        Ok(())
    }

    pub fn ordering(&self) -> Ordering {
        self.ordering.into()
    }
}
