//! Slot-coefficient models of the reduced one-field long-wave flow.
//!
//! A [`Model`] records the flow
//!
//! ```text
//! u_t = c1*u_x
//!     + h^2 * c3 * { u_3x + 6 u u_x }
//!     + h^4 * c5 * { u_5x + A1 u_x u_2x + A2 u u_3x + A3 u^2 u_x + A4 <u^2> u_x }
//!     + h^6 * c7 * { u_7x + B1 u_2x u_3x + ... + B20 <u_x^3> }
//! ```
//!
//! against the fixed monomial slot bases [`QUINTIC_SLOTS`] and
//! [`SEPTIC_SLOTS`].  [`fput_model`] fills the slots for a chain with
//! interaction potential `W(z) = z^2/2 + alpha z^3/3 + beta z^4/4
//! + gamma z^5/5`; [`toda_model`] specializes `beta` and `gamma` to the
//! values tangent to the exponential (integrable) potential.

use diffpoly::{parse, rational_string, DiffPoly, Rat};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Monomial basis for the fifth-order slots `A1..A4` (the `u_5x` slot is
/// normalized to coefficient 1 and not listed).
pub const QUINTIC_SLOTS: [&str; 4] = ["u_x*u_2x", "u*u_3x", "u^2*u_x", "av(u^2)*u_x"];

/// Monomial basis for the seventh-order slots `B1..B20` (the `u_7x` slot is
/// normalized to coefficient 1 and not listed).
pub const SEPTIC_SLOTS: [&str; 20] = [
    "u_2x*u_3x",
    "u_x*u_4x",
    "u*u_5x",
    "u_x^3",
    "u*u_x*u_2x",
    "u^2*u_3x",
    "u^3*u_x",
    "av(u)*u_5x",
    "av(u)*u_x*u_2x",
    "av(u)*u*u_3x",
    "av(u)*u^2*u_x",
    "av(u^2)*u_3x",
    "av(u^2)*u*u_x",
    "av(u)^2*u_3x",
    "av(u)^2*u*u_x",
    "av(u^3)*u_x",
    "av(u_x^2)*u_x",
    "av(u)*av(u^2)*u_x",
    "av(u)^3*u_x",
    "av(u_x^3)",
];

/// A reduced long-wave flow in slot form.  All entries are exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Model {
    /// Cubic-potential coefficient of the underlying chain (`alpha`).
    pub alpha: Rat,
    /// Quartic-potential coefficient (`beta`).
    pub beta: Rat,
    /// Quintic-potential coefficient (`gamma`).
    pub gamma: Rat,
    /// Order prefactors `[c1, c3, c5, c7]` multiplying the four brackets.
    pub c: [Rat; 4],
    /// Fifth-order slot coefficients `A1..A4`.
    pub a: [Rat; 4],
    /// Seventh-order slot coefficients `B1..B20`.
    pub b: [Rat; 20],
}

fn int(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

fn frac(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

impl Model {
    /// The flow as an explicit polynomial `h`-series part list
    /// `[c1*u_x, c3*K3, c5*(u_5x + A·slots), c7*(u_7x + B·slots)]`.
    pub fn flow_parts(&self) -> Result<[DiffPoly; 4]> {
        let p0 = DiffPoly::u_der(1).scale(&self.c[0]);
        let k3 = parse("u_3x + 6*u*u_x")?;
        let p2 = k3.scale(&self.c[1]);
        let mut p4 = parse("u_5x")?;
        for (coeff, slot) in self.a.iter().zip(QUINTIC_SLOTS.iter()) {
            p4 = p4.add(&parse(slot)?.scale(coeff));
        }
        let p4 = p4.scale(&self.c[2]);
        let mut p6 = parse("u_7x")?;
        for (coeff, slot) in self.b.iter().zip(SEPTIC_SLOTS.iter()) {
            p6 = p6.add(&parse(slot)?.scale(coeff));
        }
        let p6 = p6.scale(&self.c[3]);
        Ok([p0, p2, p4, p6])
    }

    /// `c5^2 / (c3 * c7)`, the combination weighting all cascade terms.
    pub fn kappa(&self) -> Result<Rat> {
        if self.c[1].is_zero() || self.c[3].is_zero() {
            return Err(Error::InvalidModel(
                "order prefactors c3 and c7 must be nonzero".into(),
            ));
        }
        Ok(&(&self.c[2] * &self.c[2]) / &(&self.c[1] * &self.c[3]))
    }
}

/// Builds the slot model of the reduced flow for the chain with potential
/// `W(z) = z^2/2 + alpha z^3/3 + beta z^4/4 + gamma z^5/5`.
///
/// Requires `alpha != 0`: the long-wave scaling normalizes the quadratic
/// nonlinearity by `alpha`, so the slot coefficients involve `beta/alpha^2`
/// and `gamma/alpha^3`.
pub fn fput_model(alpha: &Rat, beta: &Rat, gamma: &Rat) -> Result<Model> {
    if alpha.is_zero() {
        return Err(Error::InvalidModel(
            "alpha must be nonzero (quadratic nonlinearity sets the scale)".into(),
        ));
    }
    let a2 = alpha * alpha;
    let a3 = &a2 * alpha;
    // Dimensionless combinations the slots depend on.
    let q = beta / &a2; // beta / alpha^2
    let g = gamma / &a3; // gamma / alpha^3

    let c = [int(1), frac(1, 24), frac(1, 1920), frac(1, 322_560)];
    let a = [
        int(60),
        int(20),
        int(90) * (int(2) * &q - int(1)),
        int(30),
    ];
    let b = [
        int(420),
        int(210),
        int(42),
        int(315) * (int(8) * &q - int(5)),
        int(630) * (int(12) * &q - int(7)),
        int(630) * (int(2) * &q - int(1)),
        int(210) * (int(48) * &g - int(60) * &q + int(23)),
        int(0),
        int(0),
        int(0),
        int(0),
        int(210),
        int(210) * (int(18) * &q - int(9)),
        int(0),
        int(0),
        int(105) * (int(12) * &q - int(10)),
        int(315),
        int(0),
        int(0),
        int(0),
    ];
    Ok(Model {
        alpha: alpha.clone(),
        beta: beta.clone(),
        gamma: gamma.clone(),
        c,
        a,
        b,
    })
}

/// Quartic and quintic coefficients of the exponential-potential chain with
/// cubic coefficient `alpha`: `beta = 2 alpha^2 / 3`, `gamma = alpha^3 / 3`.
pub fn toda_coefficients(alpha: &Rat) -> (Rat, Rat) {
    let beta = frac(2, 3) * alpha * alpha;
    let gamma = frac(1, 3) * alpha * alpha * alpha;
    (beta, gamma)
}

/// [`fput_model`] specialized to the potential tangent to the exponential
/// (integrable) chain up to fifth order.
pub fn toda_model(alpha: &Rat) -> Result<Model> {
    let (beta, gamma) = toda_coefficients(alpha);
    fput_model(alpha, &beta, &gamma)
}

/// Serializable snapshot of a model with rationals rendered as `p/q` strings.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModelReport {
    /// `alpha` as an exact rational string.
    pub alpha: String,
    /// `beta` as an exact rational string.
    pub beta: String,
    /// `gamma` as an exact rational string.
    pub gamma: String,
    /// Order prefactors `[c1, c3, c5, c7]`.
    pub c: Vec<String>,
    /// Fifth-order slots `A1..A4`.
    pub a: Vec<String>,
    /// Seventh-order slots `B1..B20`.
    pub b: Vec<String>,
}

impl From<&Model> for ModelReport {
    fn from(m: &Model) -> Self {
        ModelReport {
            alpha: rational_string(&m.alpha),
            beta: rational_string(&m.beta),
            gamma: rational_string(&m.gamma),
            c: m.c.iter().map(rational_string).collect(),
            a: m.a.iter().map(rational_string).collect(),
            b: m.b.iter().map(rational_string).collect(),
        }
    }
}
