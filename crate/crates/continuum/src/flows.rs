//! The exact two-wave advection field, its long-wave expansions, and the
//! displacement-form system that ties the continuum back to the chain.

use crate::grid::{product, GridFunction};
use crate::potential::Potential;
use crate::riemann::RiemannState;
use crate::{Error, Result};

/// Nonlinear part of the inter-particle force in Riemann normalization:
/// `f(z, h) = 2α h⁻² [W′(h²z/(4α)) − h²z/(4α)]`. For the polynomial law this
/// is evaluated in the algebraically identical closed form
/// `h²z²/8 + q h⁴ z³/32 + g h⁶ z⁴/128` with `q = β/α²`, `g = γ/α³`; for the
/// exponential law it reduces to the α-independent
/// `(expm1(h²z/2) − h²z/2)/h²`.
pub fn force_remainder(pot: &Potential, z: f64, h: f64) -> f64 {
    let h2 = h * h;
    match *pot {
        Potential::Polynomial { alpha, beta, gamma } => {
            let q = beta / (alpha * alpha);
            let g = gamma / (alpha * alpha * alpha);
            h2 * z * z / 8.0 + q * h2 * h2 * z * z * z / 32.0
                + g * h2 * h2 * h2 * z * z * z * z / 128.0
        }
        Potential::Toda { .. } => {
            let y = h2 * z / 2.0;
            (f64::exp_m1(y) - y) / h2
        }
    }
}

/// Exact Riemann-form right-hand side:
/// `U_t = D_h[U + f(U+V, h)]`, `V_t = −D_h[V + f(U+V, h)]`.
pub fn rhs_exact(
    s: &RiemannState,
    pot: &Potential,
    dealias: bool,
) -> Result<(GridFunction, GridFunction)> {
    let z = s.u.add(&s.v);
    let f = z.map(|zv| force_remainder(pot, zv, s.h));
    if !f.is_finite() {
        return Err(Error::NonFinite(
            "force remainder overflowed (exponential potential on large data)".into(),
        ));
    }
    let f = if dealias { f.dealias() } else { f };
    let ut = s.u.add(&f).apply_dh(s.h);
    let vt = s.v.add(&f).apply_dh(s.h).scale(-1.0);
    Ok((ut, vt))
}

/// Long-wave expansion of `D_h[a + f(a+b, h)]` through the requested order:
///
/// ```text
/// a_x
/// + h²(a_3x/24 + (z²)_x/8)
/// + h⁴(a_5x/1920 + (z²)_3x/192 + q(z³)_x/32)
/// + h⁶(a_7x/322560 + (z²)_5x/15360 + q(z³)_3x/768 + g(z⁴)_x/128),  z = a+b.
/// ```
///
/// With `a = U, b = V` this is the `U` equation of the expanded two-wave
/// system; with `a = c(U), b = U` it is the field contracted against the
/// slaved graph in the invariance residual.
pub(crate) fn advection_expansion(
    a: &GridFunction,
    b: &GridFunction,
    h: f64,
    pot: &Potential,
    order: u32,
    dealias: bool,
) -> Result<GridFunction> {
    check_order(order)?;
    let mut out = a.deriv(1);
    if order < 2 {
        return Ok(out);
    }
    let q = pot.beta_ratio()?;
    let g = pot.gamma_ratio()?;
    let h2 = h * h;
    let z = a.add(b);
    let z2 = product(&z, &z, dealias);
    out = out.add(&a.deriv(3).scale(1.0 / 24.0).add(&z2.deriv(1).scale(1.0 / 8.0)).scale(h2));
    if order < 4 {
        return Ok(out);
    }
    let h4 = h2 * h2;
    let z3 = product(&z2, &z, dealias);
    let mut p4 = a.deriv(5).scale(1.0 / 1920.0);
    p4 = p4.add(&z2.deriv(3).scale(1.0 / 192.0));
    p4 = p4.add(&z3.deriv(1).scale(q / 32.0));
    out = out.add(&p4.scale(h4));
    if order < 6 {
        return Ok(out);
    }
    let h6 = h4 * h2;
    let z4 = product(&z3, &z, dealias);
    let mut p6 = a.deriv(7).scale(1.0 / 322560.0);
    p6 = p6.add(&z2.deriv(5).scale(1.0 / 15360.0));
    p6 = p6.add(&z3.deriv(3).scale(q / 768.0));
    p6 = p6.add(&z4.deriv(1).scale(g / 128.0));
    Ok(out.add(&p6.scale(h6)))
}

fn check_order(order: u32) -> Result<()> {
    if matches!(order, 0 | 2 | 4 | 6) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "expansion order must be one of 0, 2, 4, 6; got {order}"
        )))
    }
}

/// Long-wave expansion of the two-wave system truncated at the given order;
/// the `V` equation is the `U` equation with arguments swapped and negated.
pub fn rhs_expanded(
    s: &RiemannState,
    pot: &Potential,
    order: u32,
    dealias: bool,
) -> Result<(GridFunction, GridFunction)> {
    let ut = advection_expansion(&s.u, &s.v, s.h, pot, order, dealias)?;
    let vt = advection_expansion(&s.v, &s.u, s.h, pot, order, dealias)?.scale(-1.0);
    Ok((ut, vt))
}

/// Displacement-form system `u_t = v`, `v_t = h⁻² D⁻[W′(h² D⁺ u)]` with the
/// forward/backward half-pair of the difference operator. When the grid
/// spacing is commensurate with `h` (shift by a whole number of points) this
/// is identically the mass-spring chain in rescaled variables:
/// `q_j = h·u(hj)`, `p_j = h²·v(hj)`, lattice time `= t/h`.
pub fn rhs_displacement(
    u: &GridFunction,
    v: &GridFunction,
    h: f64,
    pot: &Potential,
) -> Result<(GridFunction, GridFunction)> {
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::InvalidArgument("h must be positive".into()));
    }
    // h²·D⁺u = h·(u(x+h) − u(x)), the strain of the chain.
    let strain = u.shift(h).sub(u).scale(h);
    let w = strain.map(|z| pot.force(z));
    if !w.is_finite() {
        return Err(Error::NonFinite(
            "spring force overflowed on the current strain".into(),
        ));
    }
    // h⁻²·D⁻w = (w(x) − w(x−h))/h³.
    let vt = w.sub(&w.shift(-h)).scale(1.0 / (h * h * h));
    Ok((v.clone(), vt))
}
