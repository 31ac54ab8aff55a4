//! Numerical tolerances shared across modules.
//!
//! Exact (rational) computations never consult these; they only apply where
//! binary floating point enters.

/// Comparison tolerance for float-valued hypergroup tensors.
pub const HYPERGROUP: f64 = 1e-12;

/// Eigenvalue gap below which two eigenvalues are treated as one cluster
/// during joint diagonalization.
pub const CLUSTER_GAP: f64 = 1e-8;

/// Largest multiplicativity residual accepted for a computed character.
pub const CHARACTER: f64 = 1e-9;

/// Dual coefficients at or above `-DUAL_NONNEGATIVE` count as nonnegative.
pub const DUAL_NONNEGATIVE: f64 = 1e-9;

/// Minimal eigenvalue threshold for positive semidefiniteness.
pub const PSD: f64 = 1e-9;

/// Round-trip accuracy of Fourier inversion.
pub const FOURIER_ROUND_TRIP: f64 = 1e-10;

/// Row sums of stochastic matrices.
pub const STOCHASTIC: f64 = 1e-12;

/// Relative residual of the detailed-balance (reversibility) identity.
pub const DETAILED_BALANCE: f64 = 1e-10;

/// Max-abs residual of the closure identity for products of stochastic matrices.
pub const CLOSURE: f64 = 1e-9;

/// Row sums of the deformed intersection numbers.
pub const DEFORMED_ROW_SUM: f64 = 1e-10;

/// Per-constraint slack of the truncated moment LP.
pub const MOMENT_SLACK: f64 = 1e-8;

/// Rounding step used to break ties when ordering characters.
pub const ORDERING_ROUND: f64 = 1e-9;
