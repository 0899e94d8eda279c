//! Exact differential-polynomial algebra on the circle.
//!
//! This crate implements an exact (big-rational) computer algebra system for
//! polynomial expressions in two periodic fields `u` and `v` and their spatial
//! derivatives, extended with two nonlocal constructions that arise when
//! working on the circle:
//!
//! * **averages** `av(expr)` — the mean of an expression over the circle,
//!   a scalar constant, and
//! * **primitives** `pr(expr)` — the unique zero-average antiderivative of a
//!   zero-average expression.
//!
//! All expressions are kept in a canonical form: averages are reduced with
//! integration by parts, primitives are resolved to exact antiderivatives
//! whenever possible, coefficients are exact rationals, and terms are stored
//! in a documented graded order. On top of the core arithmetic the crate
//! provides the operators used by normal-form computations for dispersive
//! equations: the spatial derivation [`dx`](DiffPoly::dx), the Gateaux
//! (directional) derivative [`gateaux`], the Lie bracket [`lie_bracket`],
//! exact zero-average antiderivatives [`antiderivative`], and truncated even
//! power series [`HSeries`] in a small parameter with functional composition.
//!
//! # Example
//!
//! ```
//! use diffpoly::{DiffPoly, lie_bracket};
//!
//! let k3: DiffPoly = "u_3x + 6*u*u_x".parse().unwrap();
//! let u2x: DiffPoly = "u_2x".parse().unwrap();
//! let bracket = lie_bracket(&u2x, &k3).unwrap();
//! assert_eq!(bracket.to_string(), "12*u_x*u_2x");
//! ```

mod algebra;
mod expr;
mod gateaux;
mod hseries;
mod param;
mod parse;
mod print;
mod rational;

pub use algebra::{antiderivative, average, canonicalize};
pub use expr::{Avg, DiffPoly, Error, Monomial, Prim, Result};
pub use gateaux::{gateaux, lie_bracket, substitute_v};
pub use hseries::HSeries;
pub use param::Param;
pub use parse::parse;
pub use rational::{parse_rational, rational_string, rational_to_f64, Rat};

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn readme_bracket_example() {
        let k3: DiffPoly = "u_3x + 6*u*u_x".parse().unwrap();
        let u2x: DiffPoly = "u_2x".parse().unwrap();
        let b = lie_bracket(&u2x, &k3).unwrap();
        assert_eq!(b.to_string(), "12*u_x*u_2x");
    }
}
