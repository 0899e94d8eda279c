//! Gateaux derivatives, the flow commutator, and substitution of the
//! second field.

use num_traits::One;

use crate::algebra::{average, primitive_of};
use crate::expr::{DiffPoly, MonoKey, Result};
use crate::rational::Rat;

/// The Gateaux derivative of `f` with respect to the `u` field in direction
/// `g`: `d/de f(u + e g) |_{e=0}`.
///
/// Each free factor `u_kx` varies to `dx^k(g)`; average and primitive
/// factors vary inside their bodies (the variation of a zero-average
/// primitive is the zero-average primitive of the varied integrand). Factors
/// of the `v` field are held fixed.
pub fn gateaux(f: &DiffPoly, g: &DiffPoly) -> Result<DiffPoly> {
    let mut out = DiffPoly::zero();
    for (key, coeff) in &f.terms {
        // Vary one free u-factor at a time.
        for i in 0..key.uders.len() {
            let mut rest = key.clone();
            let k = rest.uders.remove(i);
            let varied = DiffPoly::from_key(rest, coeff.clone()).mul(&g.dx_n(k));
            out = out.add(&varied);
        }
        // Vary each average factor's body.
        for i in 0..key.avgs.len() {
            let mut rest = key.clone();
            let avg = rest.avgs.remove(i);
            let body = DiffPoly::from_key(
                MonoKey {
                    uders: avg.u_orders().to_vec(),
                    vders: avg.v_orders().to_vec(),
                    ..MonoKey::unit()
                },
                Rat::one(),
            );
            let inner = average(&gateaux(&body, g)?)?;
            out = out.add(&DiffPoly::from_key(rest, coeff.clone()).mul(&inner));
        }
        // Vary each primitive factor's integrand.
        for i in 0..key.prims.len() {
            let mut rest = key.clone();
            let prim = rest.prims.remove(i);
            let inner = primitive_of(&gateaux(prim.integrand(), g)?)?;
            out = out.add(&DiffPoly::from_key(rest, coeff.clone()).mul(&inner));
        }
    }
    Ok(out)
}

/// The commutator of two flows on the `u` field:
/// `[f, g] = f'(u)[g] - g'(u)[f]` with `'` the Gateaux derivative.
pub fn lie_bracket(f: &DiffPoly, g: &DiffPoly) -> Result<DiffPoly> {
    Ok(gateaux(f, g)?.sub(&gateaux(g, f)?))
}

/// Replaces every occurrence of the `v` field by the expression `w`:
/// `v_kx` becomes `dx^k(w)`, including inside average and primitive bodies.
pub fn substitute_v(f: &DiffPoly, w: &DiffPoly) -> Result<DiffPoly> {
    let mut out = DiffPoly::zero();
    for (key, coeff) in &f.terms {
        let base = MonoKey {
            uders: key.uders.clone(),
            params: key.params.clone(),
            ..MonoKey::unit()
        };
        let mut acc = DiffPoly::from_key(base, coeff.clone());
        for &k in &key.vders {
            acc = acc.mul(&w.dx_n(k));
        }
        for avg in &key.avgs {
            let body = DiffPoly::from_key(
                MonoKey {
                    uders: avg.u_orders().to_vec(),
                    vders: avg.v_orders().to_vec(),
                    ..MonoKey::unit()
                },
                Rat::one(),
            );
            acc = acc.mul(&average(&substitute_v(&body, w)?)?);
        }
        for prim in &key.prims {
            acc = acc.mul(&primitive_of(&substitute_v(prim.integrand(), w)?)?);
        }
        out = out.add(&acc);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn u(k: u32) -> DiffPoly {
        DiffPoly::u_der(k)
    }
    fn v(k: u32) -> DiffPoly {
        DiffPoly::v_der(k)
    }

    fn k3() -> DiffPoly {
        u(3).add(&u(0).mul(&u(1)).scale(&rat(6, 1)))
    }

    #[test]
    fn gateaux_of_products() {
        // d/de (u+eg)^2 = 2 u g with g = u_x: 2 u u_x.
        let d = gateaux(&u(0).pow(2), &u(1)).unwrap();
        assert_eq!(d, u(0).mul(&u(1)).scale(&rat(2, 1)));
        // Average factors vary inside: d<u^2>[g] = 2<u g>.
        let a = average(&u(0).pow(2)).unwrap();
        let d = gateaux(&a, &u(0)).unwrap();
        assert_eq!(d, average(&u(0).pow(2)).unwrap().scale(&rat(2, 1)));
    }

    #[test]
    fn bracket_with_translation_is_derivative() {
        // [f, u_x] = f'(u)[u_x] - dx(f) = 0 for any flow f built from u alone.
        let f = k3();
        assert!(lie_bracket(&f, &u(1)).unwrap().is_zero());
        let g = u(0).pow(3).add(&u(1).pow(2).scale(&rat(5, 1)));
        assert!(lie_bracket(&g, &u(1)).unwrap().is_zero());
    }

    #[test]
    fn bracket_is_antisymmetric() {
        let f = u(2).add(&u(0).pow(2));
        let g = k3();
        let fg = lie_bracket(&f, &g).unwrap();
        let gf = lie_bracket(&g, &f).unwrap();
        assert_eq!(fg, gf.neg());
    }

    #[test]
    fn substitution_replaces_all_occurrences() {
        // (u + v)^2 with v -> u_x: (u + u_x)^2.
        let f = u(0).add(&v(0)).pow(2);
        let s = substitute_v(&f, &u(1)).unwrap();
        assert_eq!(s, u(0).add(&u(1)).pow(2));
        // v_x inside an average: <u v_x> with v -> u_2x gives <u u_3x> = <u_x u_2x>... reduced canonically.
        let f = average(&u(0).mul(&v(1))).unwrap();
        let s = substitute_v(&f, &u(2)).unwrap();
        assert_eq!(s, average(&u(0).mul(&u(3))).unwrap());
    }
}
