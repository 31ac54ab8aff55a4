//! Parameterized infinite hypergroups given in closed form.

mod ball;
mod cosh;
mod gab;
mod lp;
mod measure;

pub use ball::{gab_kernel_psd, kernel_psd_on, GabBall, KernelPsd, DEFAULT_VERTEX_BUDGET};
pub use cosh::{CoshCharacter, CoshFamily, CoshWindowAudit, AUDIT_LAMBDAS};
pub use gab::GabFamily;
pub use lp::{chebyshev_lobatto, default_grid, gab_dual_measure, DualMeasureLp, LpOutcome};
pub use measure::OrthogonalityMeasure;
