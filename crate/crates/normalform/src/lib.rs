//! Normal-form analysis of the long-wave continuum limit of nonlinear
//! chains with quartic/quintic interaction potentials.
//!
//! Pipeline, all in exact rational arithmetic on top of [`diffpoly`]:
//!
//! 1. [`slaving`] — derive the slaving manifold `v = c(u, h)` that closes the
//!    two-field long-wave system to a single equation, and produce the reduced
//!    one-field flow as an `h`-series.
//! 2. [`model`] — package the reduced flow of a concrete chain (or any
//!    abstract coefficient set) as slot coefficients `A1..A4`, `B1..B20`
//!    against a fixed monomial basis.
//! 3. [`solve`] — conjugate away the non-integrable terms order by order:
//!    a quadratic generator at `h^2`, a cubic generator at `h^4`, exposing the
//!    obstruction `r` that vanishes exactly on Toda-tangent potentials.
//! 4. [`conserved`] — assemble the dressed prefactors that recombine the
//!    normal form into commuting completely-integrable flows.
//! 5. [`report`] — deterministic JSON serialization of an entire solve.
//!
//! [`tables`] holds the bracket identities the generator ansatz rests on and
//! re-verifies every one of them with the symbolic engine; [`hierarchy`]
//! holds the integrable reference flows and their invariants.

pub mod conserved;
pub mod hierarchy;
pub mod linalg;
pub mod model;
pub mod report;
pub mod slaving;
pub mod solve;
pub mod tables;

/// Errors produced by the normal-form pipeline.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An underlying symbolic-algebra operation failed.
    #[error("algebra error: {0}")]
    Algebra(#[from] diffpoly::Error),
    /// A quantity computed two independent ways disagreed.  This is always a
    /// bug (or an inconsistent input model), never a user error.
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
    /// A linear system that should be uniquely solvable was singular.
    #[error("singular linear system: {0}")]
    Singular(String),
    /// The input model is outside the domain of the solver.
    #[error("invalid model: {0}")]
    InvalidModel(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

pub use conserved::{normal_form_series, ConservedFactors};
pub use model::{fput_model, toda_model, Model};
pub use report::SolveReport;
pub use solve::{
    obstruction, solve, solve_first_order, solve_second_order, FirstOrder, SecondOrder, Solution,
};
