//! # triq
//!
//! Open-system-like evolution of qubits carried inside a single qutrit.
//!
//! A 3×3 density matrix defines six 2×2 qubit density matrices (one per
//! reduction of the three levels to two). Conjugating the qutrit by a unitary
//! transforms those qubits *nonunitarily*; particular unitary families acting
//! on constrained qutrit states realize the phase-damping and
//! spontaneous-emission channels in closed form. This crate provides:
//!
//! - [`mat`]: a small complex-matrix kernel (minors/adjugate, Hermitian
//!   eigensolver, unitary conjugation, Kronecker products, partial traces),
//! - [`qutrit`]: qutrit states, the σ families with forced zero entries,
//!   two-qubit embeddings and the positive-partial-transpose separability
//!   check, and seeded random sampling,
//! - [`extract`]: the six qubit reductions and their partial-trace oracle,
//! - [`channel`]: the closed-form transformed qubits (minors formula), named
//!   channels with dilation oracles, the realization catalog, quasi-unitary
//!   transformations, and the small-angle expansion,
//! - [`dynamics`]: three-level dissipative dynamics (Λ/V/Ξ), dark states,
//!   and σ-state preparation,
//! - [`tomography`]: the (p₁,p₂,p₃) probability representation and its
//!   entropies,
//! - [`verify`]: batch verification suites backing the `triq verify` CLI.

pub mod channel;
pub mod dynamics;
pub mod extract;
pub mod io;
pub mod mat;
pub mod qutrit;
pub mod tomography;
pub mod verify;

use thiserror::Error;

pub use channel::{ChannelKind, ChannelRealization, QuasiCase, TransformedQubits, UnitaryFamily};
pub use extract::{QubitSlot, QubitState};
pub use mat::{CMat, MinorTable, C64};
pub use qutrit::{QutritState, SigmaKind, TwoQubitEmbedding};
pub use tomography::ProbabilityTriple;

/// Numerical tolerances used by the validation layer.
pub mod tol {
    /// Max entrywise deviation from Hermiticity.
    pub const HERMITIAN: f64 = 1e-12;
    /// Max deviation of the trace from 1.
    pub const TRACE: f64 = 1e-12;
    /// Most negative admissible eigenvalue of a density matrix.
    pub const PSD: f64 = 1e-10;
    /// Max entrywise deviation of U†U from the identity.
    pub const UNITARY: f64 = 1e-12;
    /// Eigenvalues below this are treated as exactly zero in entropies.
    pub const ENTROPY_CLAMP: f64 = 1e-15;
}

/// Errors for state construction, transformation, and dynamics.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}x{0} vs {1}x{1}")]
    DimensionMismatch(usize, usize),
    #[error("expected a {expected}x{expected} matrix, got {got}x{got}")]
    WrongDimension { expected: usize, got: usize },
    #[error("unsupported dimension {0} (supported: 2, 3, 4, 6)")]
    UnsupportedDimension(usize),
    #[error("not Hermitian (max entry deviation {0:.3e})")]
    NotHermitian(f64),
    #[error("not unitary (max entry deviation of U\u{2020}U from identity: {0:.3e})")]
    NotUnitary(f64),
    #[error("trace is not 1 (got {0})")]
    InvalidTrace(f64),
    #[error("not positive semi-definite (min eigenvalue {0:.3e})")]
    NotPsd(f64),
    #[error("singular matrix (|det| = {0:.3e})")]
    Singular(f64),
    #[error("probability {0} outside [0, 1]")]
    InvalidProbability(f64),
    #[error("scaling entry modulus {0} exceeds 1")]
    ScalingTooLarge(f64),
    #[error("probabilities violate the Bloch-ball constraint (sum of squared offsets {0} > 1/4)")]
    BlochViolation(f64),
    #[error("{family} forces entry ({row},{col}) to zero (got modulus {value:.3e})")]
    SigmaConstraint {
        family: qutrit::SigmaKind,
        row: usize,
        col: usize,
        value: f64,
    },
    #[error("state is not in the {0} family required here")]
    FamilyMismatch(qutrit::SigmaKind),
    #[error("zero row/column index {0} outside 1..=4")]
    BadZeroIndex(usize),
    #[error("time step too large: dt*max(gamma, ||H||) = {0:.3e} exceeds 0.05")]
    StepTooLarge(f64),
    #[error(
        "dynamics did not reach residual {target:.1e} by t = {t_end} (residual {residual:.3e})"
    )]
    NotConverged {
        residual: f64,
        target: f64,
        t_end: f64,
    },
    #[error("both couplings are zero; the dark state is undefined")]
    ZeroCouplings,
    #[error("negative rate {0}")]
    NegativeRate(f64),
    #[error("Tsallis index q = 1 is the Shannon limit; use coin_shannon")]
    TsallisIndexOne,
    #[error("invalid state file: {0}")]
    StateFile(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
