//! Inter-particle spring laws used by the continuum flows.

use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Spring potential of the underlying chain: a quartic/quintic polynomial
/// `W(z) = z²/2 + αz³/3 + βz⁴/4 + γz⁵/5`, or the exponential
/// `W(z) = (e^{2αz} − 1 − 2αz)/(4α²)` whose expansion matches the polynomial
/// family at `β = 2α²/3`, `γ = α³/3`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Potential {
    Polynomial { alpha: f64, beta: f64, gamma: f64 },
    Toda { alpha: f64 },
}

impl Potential {
    /// Polynomial spring law with the given cubic/quartic/quintic force
    /// coefficients.
    pub fn polynomial(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        if !(alpha.is_finite() && beta.is_finite() && gamma.is_finite()) {
            return Err(Error::InvalidArgument(
                "potential coefficients must be finite".into(),
            ));
        }
        Ok(Self::Polynomial { alpha, beta, gamma })
    }

    /// Exponential spring law with parameter `alpha != 0`.
    pub fn toda(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha == 0.0 {
            return Err(Error::InvalidArgument(
                "exponential potential needs a finite nonzero alpha".into(),
            ));
        }
        Ok(Self::Toda { alpha })
    }

    /// The quadratic-force coefficient `α` (first anharmonic constant).
    pub fn alpha(&self) -> f64 {
        match *self {
            Self::Polynomial { alpha, .. } | Self::Toda { alpha } => alpha,
        }
    }

    /// `W′(z)`, the spring force.
    pub fn force(&self, z: f64) -> f64 {
        match *self {
            Self::Polynomial { alpha, beta, gamma } => {
                z * (1.0 + z * (alpha + z * (beta + z * gamma)))
            }
            Self::Toda { alpha } => f64::exp_m1(2.0 * alpha * z) / (2.0 * alpha),
        }
    }

    /// The scale-free ratio `q = β/α²` entering the normalized flows
    /// (`2/3` for the exponential law).
    pub fn beta_ratio(&self) -> Result<f64> {
        match *self {
            Self::Polynomial { alpha, beta, .. } => {
                if alpha == 0.0 {
                    return Err(Error::InvalidArgument(
                        "beta/alpha^2 needs alpha != 0".into(),
                    ));
                }
                Ok(beta / (alpha * alpha))
            }
            Self::Toda { .. } => Ok(2.0 / 3.0),
        }
    }

    /// The scale-free ratio `g = γ/α³` (`1/3` for the exponential law).
    pub fn gamma_ratio(&self) -> Result<f64> {
        match *self {
            Self::Polynomial { alpha, gamma, .. } => {
                if alpha == 0.0 {
                    return Err(Error::InvalidArgument(
                        "gamma/alpha^3 needs alpha != 0".into(),
                    ));
                }
                Ok(gamma / (alpha * alpha * alpha))
            }
            Self::Toda { .. } => Ok(1.0 / 3.0),
        }
    }
}
