//! Association schemes, the discrete hypergroups they induce, and harmonic
//! analysis on the resulting finite commutative hypergroups.
//!
//! The crate is organized bottom-up:
//!
//! * [`scheme`] builds classical association schemes from relation data,
//!   finite group quotients and distance-regular graphs, with exact integer
//!   intersection numbers.
//! * [`hypergroup`] turns a scheme into a finite discrete hypergroup and
//!   checks the hypergroup axioms.
//! * [`harmonic`] computes character tables, Fourier/Plancherel data,
//!   positive-definiteness certificates and dual convolutions.
//! * [`generalized`] handles schemes whose stochastic matrices are deformed
//!   away from the normalized adjacency matrices.
//! * [`families`] implements the Γ(a,b) polynomial hypergroups and the
//!   discrete cosh-hypergroup in closed form.
//! * [`io`] holds the JSON/CSV file formats shared by the command line tool.

#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod families;
pub mod fixtures;
pub mod generalized;
pub mod harmonic;
pub mod hypergroup;
pub mod io;
pub mod linalg;
pub mod report;
pub mod scalar;
pub mod scheme;
pub mod tensor;
pub mod tolerance;

pub use error::{Error, Result};
pub use generalized::GeneralizedScheme;
pub use harmonic::{CharacterTable, DualMeasure};
pub use hypergroup::{FiniteHypergroup, Origin};
pub use num_complex::Complex64;
pub use num_rational::Rational64;
pub use report::{AuditReport, Check};
pub use scalar::Weight;
pub use scheme::Scheme;
pub use tensor::Tensor3;

/// Seed used wherever a deterministic pseudo-random choice is needed.
pub const DEFAULT_SEED: u64 = 0xC0FFEE;
