//! Nearest-neighbour spring potentials.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A spring potential `W` with `W(0) = W'(0) = 0` and `W''(0) = 1`.
///
/// The polynomial family is `W(z) = z²/2 + αz³/3 + βz⁴/4 + γz⁵/5`; the
/// exponential spring is `W(z) = (e^{2αz} − 1 − 2αz)/(4α²)` with `α ≠ 0`.
/// The exponential spring's Taylor expansion matches the polynomial family
/// exactly through degree five when `β = 2α²/3` and `γ = α³/3`; the first
/// deviation is `(2α⁴/15)z⁵` in the force.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Potential {
    /// `W(z) = z²/2 + αz³/3 + βz⁴/4 + γz⁵/5`.
    Polynomial { alpha: f64, beta: f64, gamma: f64 },
    /// `W(z) = (e^{2αz} − 1 − 2αz)/(4α²)`, `α ≠ 0`.
    Toda { alpha: f64 },
}

impl Potential {
    /// The purely harmonic spring `W(z) = z²/2`.
    pub fn harmonic() -> Self {
        Potential::Polynomial {
            alpha: 0.0,
            beta: 0.0,
            gamma: 0.0,
        }
    }

    /// A polynomial spring with the given cubic/quartic/quintic strengths.
    pub fn polynomial(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        for (name, value) in [("alpha", alpha), ("beta", beta), ("gamma", gamma)] {
            if !value.is_finite() {
                return Err(Error::InvalidPotential(format!("{name} must be finite")));
            }
        }
        Ok(Potential::Polynomial { alpha, beta, gamma })
    }

    /// The exponential spring; requires `alpha != 0`.
    pub fn toda(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha == 0.0 {
            return Err(Error::InvalidPotential(
                "exponential spring requires finite alpha != 0".into(),
            ));
        }
        Ok(Potential::Toda { alpha })
    }

    /// Potential energy `W(z)` of one spring stretched by `z`.
    pub fn value(&self, z: f64) -> f64 {
        match *self {
            Potential::Polynomial { alpha, beta, gamma } => {
                z * z * (0.5 + z * (alpha / 3.0 + z * (beta / 4.0 + z * gamma / 5.0)))
            }
            Potential::Toda { alpha } => {
                let w = 2.0 * alpha * z;
                (f64::exp_m1(w) - w) / (4.0 * alpha * alpha)
            }
        }
    }

    /// Spring force magnitude `W'(z)`.
    pub fn derivative(&self, z: f64) -> f64 {
        match *self {
            Potential::Polynomial { alpha, beta, gamma } => {
                z * (1.0 + z * (alpha + z * (beta + z * gamma)))
            }
            Potential::Toda { alpha } => f64::exp_m1(2.0 * alpha * z) / (2.0 * alpha),
        }
    }

    /// Taylor coefficients `(α, β, γ)` of the potential in the polynomial
    /// normalisation `z²/2 + αz³/3 + βz⁴/4 + γz⁵/5`. For the exponential
    /// spring these are the matched values `(α, 2α²/3, α³/3)`.
    pub fn taylor_coefficients(&self) -> (f64, f64, f64) {
        match *self {
            Potential::Polynomial { alpha, beta, gamma } => (alpha, beta, gamma),
            Potential::Toda { alpha } => (alpha, 2.0 * alpha * alpha / 3.0, alpha.powi(3) / 3.0),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_value_and_derivative() {
        let w = Potential::polynomial(1.0, 2.0, 3.0).unwrap();
        let z: f64 = 0.7;
        let expect = z * z / 2.0 + z.powi(3) / 3.0 + 2.0 * z.powi(4) / 4.0 + 3.0 * z.powi(5) / 5.0;
        assert!((w.value(z) - expect).abs() < 1e-15);
        let dexpect = z + z * z + 2.0 * z.powi(3) + 3.0 * z.powi(4);
        assert!((w.derivative(z) - dexpect).abs() < 1e-15);
        assert_eq!(w.value(0.0), 0.0);
        assert_eq!(w.derivative(0.0), 0.0);
    }

    #[test]
    fn exponential_spring_matches_closed_forms() {
        let w = Potential::toda(0.5).unwrap();
        let z: f64 = 0.3;
        let expect = ((2.0 * 0.5 * z).exp() - 1.0 - 2.0 * 0.5 * z) / (4.0 * 0.25);
        assert!((w.value(z) - expect).abs() < 1e-15);
        let dexpect = ((2.0 * 0.5 * z).exp() - 1.0) / (2.0 * 0.5);
        assert!((w.derivative(z) - dexpect).abs() < 1e-15);
        // Normalisation: W''(0) = 1 regardless of alpha.
        let eps = 1e-6;
        let second = (w.derivative(eps) - w.derivative(-eps)) / (2.0 * eps);
        assert!((second - 1.0).abs() < 1e-9);
    }

    #[test]
    fn exponential_spring_rejects_zero_alpha() {
        assert!(Potential::toda(0.0).is_err());
        assert!(Potential::toda(f64::NAN).is_err());
    }

    #[test]
    fn matched_taylor_coefficients() {
        let (a, b, g) = Potential::toda(2.0).unwrap().taylor_coefficients();
        assert_eq!(a, 2.0);
        assert!((b - 8.0 / 3.0).abs() < 1e-15);
        assert!((g - 8.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn serialisation_round_trip_tags_kind() {
        let w = Potential::polynomial(1.0, 0.0, 0.0).unwrap();
        let text = serde_json::to_string(&w).unwrap();
        assert!(text.contains("\"kind\":\"polynomial\""));
        let back: Potential = serde_json::from_str(&text).unwrap();
        assert_eq!(back, w);
        let t = Potential::toda(1.0).unwrap();
        let text = serde_json::to_string(&t).unwrap();
        assert!(text.contains("\"kind\":\"toda\""));
    }
}
