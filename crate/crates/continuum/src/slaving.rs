//! The slaved graph `V = c(U, h)`, the reduced one-wave field, and the
//! invariance residual that measures how accurately the graph is preserved.

use crate::flows::advection_expansion;
use crate::grid::{product, GridFunction};
use crate::potential::Potential;
use crate::{Error, Result};

/// Leading slaving coefficient `c₂(U) = (⟨U²⟩ − U²)/16`.
pub fn slaving_c2(u: &GridFunction) -> GridFunction {
    let u2 = u.mul(u);
    u2.scale(-1.0).add_scalar(u2.mean()).scale(1.0 / 16.0)
}

/// Next slaving coefficient
/// `c₄(U) = (5/384 − q/64)(U³ − ⟨U³⟩) − (1/128)⟨U²⟩(U − ⟨U⟩)
///          − (1/256)(U_x² − ⟨U_x²⟩)` with `q = β/α²`.
pub fn slaving_c4(u: &GridFunction, q: f64) -> GridFunction {
    let u3 = u.mul(u).mul(u);
    let ux = u.deriv(1);
    let ux2 = ux.mul(&ux);
    let cubic = u3.add_scalar(-u3.mean()).scale(5.0 / 384.0 - q / 64.0);
    let linear = u
        .add_scalar(-u.mean())
        .scale(-u.mul(u).mean() / 128.0);
    let grad = ux2.add_scalar(-ux2.mean()).scale(-1.0 / 256.0);
    cubic.add(&linear).add(&grad)
}

/// The slaved graph `c(U, h) = h²c₂(U) + h⁴c₄(U)`; its average vanishes.
pub fn slaving_c(u: &GridFunction, h: f64, pot: &Potential) -> Result<GridFunction> {
    let q = pot.beta_ratio()?;
    let h2 = h * h;
    Ok(slaving_c2(u)
        .scale(h2)
        .add(&slaving_c4(u, q).scale(h2 * h2)))
}

/// Directional derivative of the slaved graph:
/// `c′(U)[w] = h²(⟨Uw⟩ − Uw)/8 + h⁴ c₄′(U)[w]` with
/// `c₄′(U)[w] = (5/384 − q/64)(3U²w − 3⟨U²w⟩)
///             − (1/128)(2⟨Uw⟩(U − ⟨U⟩) + ⟨U²⟩(w − ⟨w⟩))
///             − (1/256)(2U_xw_x − 2⟨U_xw_x⟩)`.
/// Passing `include_c4 = false` truncates the graph at the `h²` term.
pub fn slaving_gateaux(
    u: &GridFunction,
    w: &GridFunction,
    h: f64,
    q: f64,
    include_c4: bool,
) -> GridFunction {
    let h2 = h * h;
    let uw = u.mul(w);
    let mut out = uw.scale(-1.0).add_scalar(uw.mean()).scale(h2 / 8.0);
    if include_c4 {
        let u2w = u.mul(&uw);
        let cubic = u2w
            .add_scalar(-u2w.mean())
            .scale(3.0 * (5.0 / 384.0 - q / 64.0));
        let linear = u
            .add_scalar(-u.mean())
            .scale(-2.0 * uw.mean() / 128.0)
            .add(&w.add_scalar(-w.mean()).scale(-u.mul(u).mean() / 128.0));
        let uxwx = u.deriv(1).mul(&w.deriv(1));
        let grad = uxwx.add_scalar(-uxwx.mean()).scale(-2.0 / 256.0);
        out = out.add(&cubic.add(&linear).add(&grad).scale(h2 * h2));
    }
    out
}

/// The reduced one-wave field truncated at the given order:
///
/// ```text
/// U_x
/// + h²(U_3x/24 + UU_x/4)
/// + h⁴(U_5x/1920 + U_xU_2x/32 + UU_3x/96 + (3q/32 − 3/64)U²U_x + ⟨U²⟩U_x/64)
/// + h⁶(U_7x/322560 + U_2xU_3x/768 + U_xU_4x/1536 + UU_5x/7680
///      + (q/128 − 5/1024)U_x³ + ⟨U_x²⟩U_x/1024 + (3q/128 − 7/512)UU_xU_2x
///      + (q/256 − 1/512)U²U_3x + ⟨U²⟩U_3x/1536
///      + (23/1536 + g/32 − 5q/128)U³U_x + (3q/256 − 3/512)⟨U²⟩UU_x
///      + (q/256 − 5/1536)⟨U³⟩U_x + ⟨U⟩⟨U²⟩U_x/512)
/// ```
pub fn rhs_reduced(
    u: &GridFunction,
    h: f64,
    pot: &Potential,
    order: u32,
    dealias: bool,
) -> Result<GridFunction> {
    if !matches!(order, 2 | 4 | 6) {
        return Err(Error::InvalidArgument(format!(
            "reduced order must be 2, 4 or 6; got {order}"
        )));
    }
    let q = pot.beta_ratio()?;
    let g = pot.gamma_ratio()?;
    let h2 = h * h;
    let ux = u.deriv(1);
    let uux = product(u, &ux, dealias);

    let mut out = ux.clone();
    out = out.add(
        &u.deriv(3)
            .scale(1.0 / 24.0)
            .add(&uux.scale(0.25))
            .scale(h2),
    );
    if order < 4 {
        return Ok(out);
    }

    let u2x = u.deriv(2);
    let u3x = u.deriv(3);
    let uu = product(u, u, dealias);
    let mean_u2 = u.mul(u).mean();
    let mut p4 = u.deriv(5).scale(1.0 / 1920.0);
    p4 = p4.add(&product(&ux, &u2x, dealias).scale(1.0 / 32.0));
    p4 = p4.add(&product(u, &u3x, dealias).scale(1.0 / 96.0));
    p4 = p4.add(&product(&uu, &ux, dealias).scale(3.0 * q / 32.0 - 3.0 / 64.0));
    p4 = p4.add(&ux.scale(mean_u2 / 64.0));
    out = out.add(&p4.scale(h2 * h2));
    if order < 6 {
        return Ok(out);
    }

    let mean_u = u.mean();
    let mean_u3 = u.mul(u).mul(u).mean();
    let mean_ux2 = ux.mul(&ux).mean();
    let mut p6 = u.deriv(7).scale(1.0 / 322560.0);
    p6 = p6.add(&product(&u2x, &u3x, dealias).scale(1.0 / 768.0));
    p6 = p6.add(&product(&ux, &u.deriv(4), dealias).scale(1.0 / 1536.0));
    p6 = p6.add(&product(u, &u.deriv(5), dealias).scale(1.0 / 7680.0));
    p6 = p6.add(&product(&product(&ux, &ux, dealias), &ux, dealias).scale(q / 128.0 - 5.0 / 1024.0));
    p6 = p6.add(&ux.scale(mean_ux2 / 1024.0));
    p6 = p6.add(&product(&uux, &u2x, dealias).scale(3.0 * q / 128.0 - 7.0 / 512.0));
    p6 = p6.add(&product(&uu, &u3x, dealias).scale(q / 256.0 - 1.0 / 512.0));
    p6 = p6.add(&u3x.scale(mean_u2 / 1536.0));
    p6 = p6.add(&product(&uu, &uux, dealias).scale(23.0 / 1536.0 + g / 32.0 - 5.0 * q / 128.0));
    p6 = p6.add(&uux.scale(mean_u2 * (3.0 * q / 256.0 - 3.0 / 512.0)));
    p6 = p6.add(&ux.scale(mean_u3 * (q / 256.0 - 5.0 / 1536.0)));
    p6 = p6.add(&ux.scale(mean_u * mean_u2 / 512.0));
    Ok(out.add(&p6.scale(h2 * h2 * h2)))
}

/// Sup-norm of the invariance defect of the slaved graph:
/// `‖c′(U)[𝓕(U)] + ℱ(c(U), U)‖∞` with the reduced field `𝓕` and the
/// counter-propagating component `ℱ` both expanded through `h⁶`.
/// `slaving_order` selects the graph: 4 keeps both coefficients, 2 drops the
/// `h⁴` one (degrading the defect from `O(h⁶)` to `O(h⁴)`).
pub fn invariance_residual(
    u: &GridFunction,
    h: f64,
    pot: &Potential,
    slaving_order: u32,
) -> Result<f64> {
    if !matches!(slaving_order, 2 | 4) {
        return Err(Error::InvalidArgument(format!(
            "slaving order must be 2 or 4; got {slaving_order}"
        )));
    }
    let q = pot.beta_ratio()?;
    let include_c4 = slaving_order == 4;
    let h2 = h * h;
    let mut c = slaving_c2(u).scale(h2);
    if include_c4 {
        c = c.add(&slaving_c4(u, q).scale(h2 * h2));
    }
    let flow = rhs_reduced(u, h, pot, 6, false)?;
    let c_dot = slaving_gateaux(u, &flow, h, q, include_c4);
    let counter = advection_expansion(&c, u, h, pot, 6, false)?;
    Ok(c_dot.add(&counter).sup_norm())
}
