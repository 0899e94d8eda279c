//! The first four commuting fields of the KdV hierarchy and its first three
//! integrals, transcribed with spectral derivatives.

use crate::grid::{product, GridFunction};
use crate::{Error, Result};

/// `K₁ = U_x`, `K₃ = U_3x + 6UU_x`,
/// `K₅ = U_5x + 20U_xU_2x + 10UU_3x + 30U²U_x`,
/// `K₇ = U_7x + 70U_2xU_3x + 42U_xU_4x + 14UU_5x + 70U_x³ + 280UU_xU_2x
///       + 70U²U_3x + 140U³U_x`.
pub fn kdv_field(u: &GridFunction, which: u32, dealias: bool) -> Result<GridFunction> {
    let ux = u.deriv(1);
    match which {
        1 => Ok(ux),
        3 => Ok(u.deriv(3).add(&product(u, &ux, dealias).scale(6.0))),
        5 => {
            let u2x = u.deriv(2);
            let uu = product(u, u, dealias);
            let mut out = u.deriv(5);
            out = out.add(&product(&ux, &u2x, dealias).scale(20.0));
            out = out.add(&product(u, &u.deriv(3), dealias).scale(10.0));
            out = out.add(&product(&uu, &ux, dealias).scale(30.0));
            Ok(out)
        }
        7 => {
            let u2x = u.deriv(2);
            let u3x = u.deriv(3);
            let uu = product(u, u, dealias);
            let uux = product(u, &ux, dealias);
            let mut out = u.deriv(7);
            out = out.add(&product(&u2x, &u3x, dealias).scale(70.0));
            out = out.add(&product(&ux, &u.deriv(4), dealias).scale(42.0));
            out = out.add(&product(u, &u.deriv(5), dealias).scale(14.0));
            out = out.add(&product(&product(&ux, &ux, dealias), &ux, dealias).scale(70.0));
            out = out.add(&product(&uux, &u2x, dealias).scale(280.0));
            out = out.add(&product(&uu, &u3x, dealias).scale(70.0));
            out = out.add(&product(&uu, &uux, dealias).scale(140.0));
            Ok(out)
        }
        other => Err(Error::InvalidArgument(format!(
            "hierarchy field index must be 1, 3, 5 or 7; got {other}"
        ))),
    }
}

/// The integrals `(⟨U⟩, ⟨U²⟩, ⟨U_x² − 2U³⟩)` by spectral quadrature.
pub fn kdv_integrals(u: &GridFunction) -> [f64; 3] {
    let ux = u.deriv(1);
    let u2 = u.mul(u);
    [
        u.mean(),
        u2.mean(),
        ux.mul(&ux).mean() - 2.0 * u2.mul(u).mean(),
    ]
}
