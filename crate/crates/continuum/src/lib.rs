//! Pseudo-spectral numerical realization, on the periodic unit interval, of
//! the continuum objects attached to nonlinear mass-spring chains: the
//! half-shift difference operator, Riemann invariants of the two-wave system,
//! the exact and long-wave-expanded advection fields, the slaved one-wave
//! reduction, the KdV hierarchy, the dressed normal-form field, and the
//! convergence-order diagnostics that tie the numerics back to the symbolic
//! results of the `normalform` crate.
//!
//! All fields live on dyadic grids (`GridFunction`), derivatives and
//! difference operators are exact Fourier multipliers, and every vector field
//! comes in two independent forms: a hand-coded numeric kernel and a symbolic
//! `diffpoly` expression evaluated on the grid (`evalsym`), each serving as
//! the oracle for the other.

pub mod evalsym;
pub mod fit;
pub mod flows;
pub mod grid;
pub mod integrate;
pub mod io;
pub mod kdv;
pub mod normalized;
pub mod potential;
pub mod riemann;
pub mod slaving;

/// Errors produced by grid construction, field evaluation and integration.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A precondition on arguments was violated.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// A pointwise evaluation overflowed or produced NaN.
    #[error("non-finite value: {0}")]
    NonFinite(String),
    /// A time integration left the trust region.
    #[error("flow diverged at step {step}, t = {time:.6e}: sup-norm {norm:.3e}")]
    Diverged { step: u64, time: f64, norm: f64 },
    /// A symbolic expression could not be evaluated on the grid.
    #[error("symbolic evaluation: {0}")]
    Symbolic(#[from] diffpoly::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Serialize(#[from] serde_json::Error),
}

/// Convenience alias used throughout the crate.
pub type Result<T, E = Error> = std::result::Result<T, E>;

pub use evalsym::{directional_derivative, evaluate, evaluate_series, evaluate_uv};
pub use fit::{fit_power_law, PowerFit};
pub use flows::{force_remainder, rhs_displacement, rhs_exact, rhs_expanded};
pub use grid::GridFunction;
pub use integrate::{integrate_displacement, integrate_flow, FieldKind, FlowSpec, Trajectory};
pub use io::{experiment_file_name, write_csv, write_json};
pub use kdv::{kdv_field, kdv_integrals};
pub use normalized::{
    apply_normal_coordinates, drift_rate, rhs_normalized, Direction, NormalizedCoefficients,
};
pub use potential::Potential;
pub use riemann::{from_riemann, to_riemann, RiemannState};
pub use slaving::{invariance_residual, rhs_reduced, slaving_c, slaving_gateaux};
