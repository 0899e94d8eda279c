//! Slaving of the left-moving Riemann component.
//!
//! The long-wave limit of the chain, written in Riemann-invariant fields
//! `(u, v)`, is the two-field system
//!
//! ```text
//! u_t =  F(u, v, h) = D[u + f(u + v, h)]
//! v_t = -F(v, u, h) = -D[v + f(u + v, h)]
//! ```
//!
//! where `D` is the centered half-step difference operator expanded through
//! `h^6` and the nonlinearity is exactly
//!
//! ```text
//! f(z, h) = h^2 z^2 / 8 + h^4 (beta/alpha^2) z^3 / 32
//!         + h^6 (gamma/alpha^3) z^4 / 128.
//! ```
//!
//! For right-moving initial data `v` is slaved to `u`: there is a manifold
//! `v = c(u, h) = h^2 c2 + h^4 c4` invariant under the flow through the
//! truncation order.  [`solve_slaving`] derives `c2` and `c4` from scratch by
//! solving the invariance equation order by order, verifies the closed forms
//! and the vanishing of the invariance residual through `h^4`, and
//! [`reduced_flow_series`] then produces the closed one-field flow by
//! composition.
//!
//! All of this is symbolic in the potential coefficients `alpha`, `beta`,
//! `gamma` (they enter through the invertible parameter `alpha` and the
//! combinations `beta/alpha^2`, `gamma/alpha^3`).

use diffpoly::{antiderivative, gateaux, parse, DiffPoly, HSeries, Param, Rat};

use crate::{Error, Result};

fn frac(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

/// Applies the centered half-step difference operator
/// `D = dx + (h^2/24) dx^3 + (h^4/1920) dx^5 + (h^6/322560) dx^7`
/// to a truncated series.
pub fn apply_half_difference(s: &HSeries) -> HSeries {
    s.dx()
        .add(&s.dx_n(3).scale(&frac(1, 24)).shift(1))
        .add(&s.dx_n(5).scale(&frac(1, 1920)).shift(2))
        .add(&s.dx_n(7).scale(&frac(1, 322_560)).shift(3))
}

/// The exact nonlinearity `f(z, h)` of the Riemann-invariant system, with
/// `z` supplied as a series.
fn nonlinearity(z: &HSeries) -> HSeries {
    let z2 = z.mul(z);
    let z3 = z2.mul(z);
    let z4 = z3.mul(z);
    let beta_ratio = DiffPoly::param(Param::BETA, 1).mul(&DiffPoly::param(Param::ALPHA, -2));
    let gamma_ratio = DiffPoly::param(Param::GAMMA, 1).mul(&DiffPoly::param(Param::ALPHA, -3));
    z2.scale(&frac(1, 8))
        .shift(1)
        .add(&z3.scale_poly(&beta_ratio).scale(&frac(1, 32)).shift(2))
        .add(&z4.scale_poly(&gamma_ratio).scale(&frac(1, 128)).shift(3))
}

/// The right-moving flow `F(u, v, h) = D[u + f(u + v, h)]`.
pub fn flow_series() -> HSeries {
    let u = HSeries::constant(DiffPoly::u_der(0));
    let v = HSeries::constant(DiffPoly::v_der(0));
    let z = u.add(&v);
    apply_half_difference(&u.add(&nonlinearity(&z)))
}

/// The left-moving flow magnitude `F(v, u, h) = D[v + f(u + v, h)]`
/// (the actual equation is `v_t = -F(v, u, h)`).
pub fn counter_flow_series() -> HSeries {
    let u = HSeries::constant(DiffPoly::u_der(0));
    let v = HSeries::constant(DiffPoly::v_der(0));
    let z = u.add(&v);
    apply_half_difference(&v.add(&nonlinearity(&z)))
}

/// Directional derivative of a series-valued function of `u` along a
/// series-valued direction, truncated at the series order.
fn series_gateaux(c: &HSeries, f: &HSeries) -> Result<HSeries> {
    let mut parts = [
        DiffPoly::zero(),
        DiffPoly::zero(),
        DiffPoly::zero(),
        DiffPoly::zero(),
    ];
    for i in 0..4 {
        if c.part(i).is_zero() {
            continue;
        }
        for j in 0..4 - i {
            if f.part(j).is_zero() {
                continue;
            }
            let term = gateaux(c.part(i), f.part(j))?;
            parts[i + j] = parts[i + j].add(&term);
        }
    }
    Ok(HSeries::from_parts(parts))
}

/// The slaving manifold and the data produced while deriving it.
#[derive(Debug, Clone)]
pub struct Slaving {
    /// Order-`h^2` manifold coefficient `c2 = (<u^2> - u^2)/16`.
    pub c2: DiffPoly,
    /// Order-`h^4` manifold coefficient (zero-average gauge).
    pub c4: DiffPoly,
    /// The manifold `c = h^2 c2 + h^4 c4` as a series with empty leading
    /// part.
    pub manifold: HSeries,
    /// Leftover of the invariance equation at order `h^6`, the first order
    /// the truncated manifold cannot cancel.
    pub residual_tail: DiffPoly,
}

/// Invariance residual of a candidate manifold:
/// `c'(u)[F(u, c, h)] + F(c, u, h)`, which vanishes identically on an
/// invariant manifold (`v_t = -F(v, u, h)` on the manifold must equal the
/// chain rule `c'(u)[u_t]`).
pub fn invariance_residual(manifold: &HSeries) -> Result<HSeries> {
    let reduced = flow_series().compose_v(manifold)?;
    let counter = counter_flow_series().compose_v(manifold)?;
    Ok(counter.add(&series_gateaux(manifold, &reduced)?))
}

/// Derives the slaving manifold order by order.
///
/// At each order `h^{2k}` the unknown `c_k` enters the invariance equation
/// only through `2 dx(c_k)`, so `c_k` is minus half the zero-average
/// antiderivative of the residual computed with `c_k = 0`.  The derived
/// coefficients are verified against their closed forms and the residual is
/// verified to vanish through order `h^4`; both failures are hard errors.
pub fn solve_slaving() -> Result<Slaving> {
    let mut manifold = HSeries::zero();
    let mut coefficients = [DiffPoly::zero(), DiffPoly::zero()];
    for k in 1..=2 {
        let residual = invariance_residual(&manifold)?;
        let ck = antiderivative(residual.part(k))?.scale(&frac(-1, 2));
        coefficients[k - 1] = ck.clone();
        let mut parts = [
            DiffPoly::zero(),
            DiffPoly::zero(),
            DiffPoly::zero(),
            DiffPoly::zero(),
        ];
        for (i, part) in parts.iter_mut().enumerate().take(k + 1).skip(1) {
            *part = coefficients[i - 1].clone();
        }
        manifold = HSeries::from_parts(parts);
    }
    let [c2, c4] = coefficients;

    let c2_closed = parse("1/16*av(u^2) - 1/16*u^2")?;
    if c2 != c2_closed {
        return Err(Error::Inconsistent(format!(
            "order-h^2 slaving coefficient mismatch:\n  derived {c2}\n  closed  {c2_closed}"
        )));
    }
    let c4_closed = parse(
        "(5/384 - 1/64*beta*alpha^-2)*(u^3 - av(u^3)) - 1/128*av(u^2)*(u - av(u)) \
         - 1/256*(u_x^2 - av(u_x^2))",
    )?;
    if c4 != c4_closed {
        return Err(Error::Inconsistent(format!(
            "order-h^4 slaving coefficient mismatch:\n  derived {c4}\n  closed  {c4_closed}"
        )));
    }

    let residual = invariance_residual(&manifold)?;
    for k in 0..3 {
        if !residual.part(k).is_zero() {
            return Err(Error::Inconsistent(format!(
                "invariance residual fails to vanish at order h^{}: {}",
                2 * k,
                residual.part(k)
            )));
        }
    }

    Ok(Slaving {
        c2,
        c4,
        manifold,
        residual_tail: residual.part(3).clone(),
    })
}

/// The closed one-field flow on the slaving manifold,
/// `F(u, c(u, h), h)`.
pub fn reduced_flow_series(slaving: &Slaving) -> Result<HSeries> {
    flow_series()
        .compose_v(&slaving.manifold)
        .map_err(Error::from)
}

/// Acceleration series of the displacement form of the chain: with
/// displacement field `u` and velocity field `v = u_t`, the second equation
/// is `v_t = D[Du + alpha h^2 (Du)^2 + beta h^4 (Du)^3 + gamma h^6 (Du)^4]`.
pub fn displacement_acceleration_series() -> HSeries {
    let du = apply_half_difference(&HSeries::constant(DiffPoly::u_der(0)));
    let du2 = du.mul(&du);
    let du3 = du2.mul(&du);
    let du4 = du3.mul(&du);
    let inner = du
        .add(&du2.scale_poly(&DiffPoly::param(Param::ALPHA, 1)).shift(1))
        .add(&du3.scale_poly(&DiffPoly::param(Param::BETA, 1)).shift(2))
        .add(&du4.scale_poly(&DiffPoly::param(Param::GAMMA, 1)).shift(3));
    apply_half_difference(&inner)
}
