//! Periodic nonlinear mass-spring chains.
//!
//! A chain of `n` unit masses on a ring interacts through identical nearest
//! neighbour springs with potential `W`: the equations of motion are
//!
//! ```text
//! q̇_j = p_j ,
//! ṗ_j = W'(q_{j+1} − q_j) − W'(q_j − q_{j−1})       (indices mod n).
//! ```
//!
//! The crate provides
//!
//! * spring potentials ([`Potential`]): quartic/quintic polynomials
//!   `z²/2 + αz³/3 + βz⁴/4 + γz⁵/5` and the exponential spring
//!   `(e^{2αz} − 1 − 2αz)/(4α²)`, whose Taylor coefficients match the
//!   polynomial family at `β = 2α²/3`, `γ = α³/3`;
//! * the right-hand side [`rhs`], total [`energy`], and fixed-step
//!   [`integrate`] with a symplectic Störmer–Verlet scheme (default) and a
//!   classical Runge–Kutta cross-check, with blow-up detection and strided
//!   trajectory sampling;
//! * [`sample_from_profile`], which initialises a chain from a pair of
//!   smooth profiles on the unit circle via `q_j = h·u(hj)`, `p_j = h²·v(hj)`
//!   with `n = 1/h`;
//! * CSV/JSON trajectory output ([`write_trajectory_csv`],
//!   [`write_trajectory_meta`]).

mod chain;
mod integrate;
mod io;
mod potential;
mod sample;

pub use chain::{energy, rhs, ChainState};
pub use integrate::{integrate, IntegrationSpec, Scheme, Trajectory};
pub use io::{write_trajectory_csv, write_trajectory_meta, TrajectoryMeta};
pub use potential::Potential;
pub use sample::sample_from_profile;

/// Errors produced by chain construction, dynamics and output.
#[derive(thiserror::Error, Debug)]
pub enum Error {
    /// A potential parameter violates a documented precondition.
    #[error("invalid potential: {0}")]
    InvalidPotential(String),
    /// A state is malformed (mismatched lengths, too few particles,
    /// non-finite entries).
    #[error("invalid state: {0}")]
    InvalidState(String),
    /// An argument violates a documented precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// The trajectory left the configured norm bound or became non-finite.
    #[error("trajectory diverged: {0}")]
    Diverged(String),
    /// Writing an output file failed.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    /// Serialising metadata failed.
    #[error("serialisation error: {0}")]
    Serialize(#[from] serde_json::Error),
}

/// Convenience alias for results of chain operations.
pub type Result<T, E = Error> = std::result::Result<T, E>;
