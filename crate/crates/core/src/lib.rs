//! Analysis toolkit for finite-dimensional Markovian open quantum systems.
//!
//! The library builds Lindblad generators and their superoperator
//! representations, solves for steady states and spectra, generates
//! multiplicative operator algebras and commutants, and combines these into
//! irreducibility verdicts for the generated quantum dynamical semigroup.
//! Quantum channels obtained from the semigroup can be decomposed into Kraus
//! operators and projected onto classical Markov chains for basis-resolved
//! reducibility probes.
//!
//! Conventions fixed project-wide:
//!
//! - Operators are dense complex matrices ([`CMatrix`]) with the
//!   Hilbert-Schmidt inner product `⟨A,B⟩ = Tr(A†B)`.
//! - Vectorization stacks columns, so `vec(AXB) = (Bᵀ ⊗ A) vec(X)` and a
//!   superoperator acting on a `d`-dimensional system is a `d²×d²` matrix.
//! - Dissipation rates are absorbed into the Lindblad operators as `√rate`
//!   prefactors at construction time.

pub mod algebra;
pub mod irreducibility;
pub mod liouvillian;
pub mod markov;
pub mod models;
pub mod operators;
pub mod random;

pub use operators::{CMatrix, CVector, OperatorSubspace, ToleranceConfig};

use thiserror::Error as ThisError;

/// Errors shared across the toolkit.
#[derive(Debug, ThisError)]
pub enum Error {
    /// Two operands (or an operator and a system) have incompatible shapes.
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },

    /// An operator required to be Hermitian is not, beyond tolerance.
    #[error("matrix is not Hermitian: ‖A − A†‖ = {deviation:e}")]
    NonHermitian { deviation: f64 },

    /// A basis that must be unitary fails the audit.
    #[error("basis is not unitary: ‖U†U − 1‖ = {deviation:e}")]
    NonUnitaryBasis { deviation: f64 },

    /// An operator expected to be an orthogonal projection is not.
    #[error("not a projection: ‖P² − P‖ = {idempotency:e}, ‖P − P†‖ = {hermiticity:e}")]
    NonProjection { idempotency: f64, hermiticity: f64 },

    /// A state vector expected to be normalized is not.
    #[error("vector is not normalized: ‖ψ‖ = {norm}")]
    NonUnitVector { norm: f64 },

    /// An operation needs at least one operator to work with.
    #[error("empty operator list")]
    EmptyOperatorList,

    /// An orthonormality audit on an operator subspace failed.
    #[error("orthonormality audit failed: max |⟨B_i,B_j⟩ − δ_ij| = {deviation:e}")]
    OrthonormalityAudit { deviation: f64 },

    /// The kernel of a generator came back empty, which cannot happen for a
    /// valid finite-dimensional Lindblad generator and indicates a numerical
    /// failure or a tolerance miscalibration.
    #[error("empty generator kernel: {context}")]
    EmptyKernel { context: String },

    /// A channel failed its complete-positivity or trace-preservation audit.
    #[error("channel audit failed: {what}")]
    ChannelAudit { what: String },

    /// A Choi matrix has a negative eigenvalue beyond tolerance.
    #[error("not completely positive: min Choi eigenvalue {min_eigenvalue:e}")]
    NotCompletelyPositive { min_eigenvalue: f64 },

    /// A stochastic-matrix audit (nonnegativity / column sums) failed.
    #[error("stochastic matrix audit failed: {what}")]
    StochasticAudit { what: String },

    /// The two independent Davies checkers disagree. Both verdicts are exact
    /// theorems in finite dimension, so this always indicates a tolerance
    /// failure and is surfaced as a hard error rather than resolved by vote.
    #[error(
        "irreducibility checkers disagree: algebra says {algebra_verdict} \
         (dim {algebra_dim}), steady-state says {steady_verdict} \
         (null_dim {null_dim}, support_rank {support_rank})"
    )]
    CheckerDisagreement {
        algebra_verdict: String,
        algebra_dim: usize,
        steady_verdict: String,
        null_dim: usize,
        support_rank: usize,
    },

    /// A reducibility witness was required but the construction failed.
    /// Possible only through tolerance failure, since a reducing projection
    /// is guaranteed to exist whenever a system is reducible.
    #[error("no reducing projection found: {diagnostics}")]
    NoWitnessFound { diagnostics: String },

    /// A spin-chain specification is internally inconsistent.
    #[error("invalid spin chain spec: {0}")]
    InvalidSpinChainSpec(String),

    /// Site index outside the chain.
    #[error("site {site} out of range for {n_sites} sites")]
    SiteOutOfRange { site: usize, n_sites: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
