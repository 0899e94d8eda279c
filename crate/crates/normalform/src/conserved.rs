//! Dressed prefactors of the integrable flows inside the normal form.
//!
//! After both conjugations the flow at each order is an integrable profile
//! times a slowly varying factor built from the conserved averages `<u>`,
//! `<u^2>`, `<u_x^2 - 2 u^3>`.  [`conserved_factors`] returns those factors
//! as truncated `h`-series:
//!
//! ```text
//! C1* = c1 (1 + h^4 (Ã4 <u^2> + Ã5 <u>^2)
//!             + h^6 (λ4 <u_x^2 - 2 u^3> + λ5 <u><u^2> + λ6 <u>^3))
//! C3* = c3 (1 + h^2 Ã6 <u> + h^4 (λ2 <u^2> + λ3 <u>^2))
//! C5* = c5 (1 + h^2 λ1 <u>)
//! C7* = c7
//! ```
//!
//! The one term these factors do not capture is the constant drift
//! `h^6 c7 λ7 <u_x^3>`, which is removed by a time-dependent shift of `u`;
//! its coefficient is exposed as [`ConservedFactors::drift_coefficient`].

use diffpoly::{parse, DiffPoly, HSeries, Rat};

use crate::solve::Solution;
use crate::Result;

/// The dressed order prefactors of a solved normal form.
#[derive(Debug, Clone)]
pub struct ConservedFactors {
    /// Dressing of the transport flow `u_x`.
    pub c1: HSeries,
    /// Dressing of the cubic flow `u_3x + 6 u u_x`.
    pub c3: HSeries,
    /// Dressing of the quintic flow.
    pub c5: HSeries,
    /// Dressing of the septic flow.
    pub c7: HSeries,
    /// Coefficient `c7 * lambda7` of the constant drift term `<u_x^3>`.
    pub drift_coefficient: Rat,
}

/// Builds the dressed prefactors from a completed solve.
pub fn conserved_factors(sol: &Solution) -> Result<ConservedFactors> {
    let c = &sol.model.c;
    let at = &sol.first.a_tilde;
    let lam = &sol.second.lambda;

    let one = DiffPoly::one();
    let avg_u = parse("av(u)")?;
    let avg_u2 = parse("av(u^2)")?;
    let avg_u_sq = parse("av(u)^2")?;
    let avg_cube = parse("av(u)^3")?;
    let avg_mix = parse("av(u)*av(u^2)")?;
    let avg_i3 = parse("av(u_x^2) - 2*av(u^3)")?;

    let c1 = HSeries::from_parts([
        one.clone(),
        DiffPoly::zero(),
        avg_u2.scale(&at[0]).add(&avg_u_sq.scale(&at[1])),
        avg_i3
            .scale(&lam[3])
            .add(&avg_mix.scale(&lam[4]))
            .add(&avg_cube.scale(&lam[5])),
    ])
    .scale(&c[0]);

    let c3 = HSeries::from_parts([
        one.clone(),
        avg_u.scale(&at[2]),
        avg_u2.scale(&lam[1]).add(&avg_u_sq.scale(&lam[2])),
        DiffPoly::zero(),
    ])
    .scale(&c[1]);

    let c5 = HSeries::from_parts([
        one.clone(),
        avg_u.scale(&lam[0]),
        DiffPoly::zero(),
        DiffPoly::zero(),
    ])
    .scale(&c[2]);

    let c7 = HSeries::constant(one.scale(&c[3]));

    Ok(ConservedFactors {
        c1,
        c3,
        c5,
        c7,
        drift_coefficient: &c[3] * &lam[6],
    })
}

/// The normal-form flow itself as a truncated series:
/// `[c1 u_x, c3 (u_3x + 6 u u_x), N5, N7]`.
pub fn normal_form_series(sol: &Solution) -> Result<HSeries> {
    let parts = sol.model.flow_parts()?;
    let _ = &parts[2]; // orders 4 and 6 are replaced by the normal form
    Ok(HSeries::from_parts([
        parts[0].clone(),
        parts[1].clone(),
        sol.first.n5.clone(),
        sol.second.n7.clone(),
    ]))
}
