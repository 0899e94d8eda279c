//! Truncated even power series in the lattice spacing `h` with differential
//! polynomial coefficients: `P0 + h^2 P2 + h^4 P4 + h^6 P6 + O(h^8)`.

use num_traits::One;

use crate::algebra::{average, primitive_of};
use crate::expr::{DiffPoly, Error, MonoKey, Result};
use crate::rational::Rat;

/// Number of retained even orders (`h^0, h^2, h^4, h^6`).
pub const ORDERS: usize = 4;

/// An even power series in `h`, truncated after `h^6`. All operations drop
/// terms of order `h^8` and higher.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct HSeries {
    parts: [DiffPoly; ORDERS],
}

impl HSeries {
    /// The zero series.
    pub fn zero() -> Self {
        HSeries::default()
    }

    /// A series concentrated at order `h^0`.
    pub fn constant(p: DiffPoly) -> Self {
        HSeries::from_parts([p, DiffPoly::zero(), DiffPoly::zero(), DiffPoly::zero()])
    }

    /// Builds a series from its four even-order coefficients
    /// `[h^0, h^2, h^4, h^6]`.
    pub fn from_parts(parts: [DiffPoly; ORDERS]) -> Self {
        HSeries { parts }
    }

    /// The coefficient at order `h^(2i)`.
    pub fn part(&self, i: usize) -> &DiffPoly {
        &self.parts[i]
    }

    /// All four coefficients, ascending order in `h`.
    pub fn parts(&self) -> &[DiffPoly; ORDERS] {
        &self.parts
    }

    /// Whether every coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(DiffPoly::is_zero)
    }

    pub fn add(&self, other: &HSeries) -> HSeries {
        HSeries {
            parts: std::array::from_fn(|i| self.parts[i].add(&other.parts[i])),
        }
    }

    pub fn sub(&self, other: &HSeries) -> HSeries {
        HSeries {
            parts: std::array::from_fn(|i| self.parts[i].sub(&other.parts[i])),
        }
    }

    pub fn neg(&self) -> HSeries {
        HSeries {
            parts: std::array::from_fn(|i| self.parts[i].neg()),
        }
    }

    pub fn scale(&self, c: &Rat) -> HSeries {
        HSeries {
            parts: std::array::from_fn(|i| self.parts[i].scale(c)),
        }
    }

    /// Multiplies every coefficient by a fixed polynomial.
    pub fn scale_poly(&self, p: &DiffPoly) -> HSeries {
        HSeries {
            parts: std::array::from_fn(|i| self.parts[i].mul(p)),
        }
    }

    /// Shifts the series by a power of `h^2`: multiplication by `h^(2k)`.
    /// Coefficients pushed beyond `h^6` are dropped.
    pub fn shift(&self, k: usize) -> HSeries {
        let mut parts: [DiffPoly; ORDERS] = Default::default();
        for i in 0..ORDERS.saturating_sub(k) {
            parts[i + k] = self.parts[i].clone();
        }
        HSeries { parts }
    }

    /// Product of two series, truncated after `h^6`.
    pub fn mul(&self, other: &HSeries) -> HSeries {
        let mut parts: [DiffPoly; ORDERS] = Default::default();
        for i in 0..ORDERS {
            if self.parts[i].is_zero() {
                continue;
            }
            for j in 0..ORDERS - i {
                if other.parts[j].is_zero() {
                    continue;
                }
                parts[i + j] = parts[i + j].add(&self.parts[i].mul(&other.parts[j]));
            }
        }
        HSeries { parts }
    }

    /// Integer power, truncated after `h^6`.
    pub fn pow(&self, n: u32) -> HSeries {
        let mut out = HSeries::constant(DiffPoly::one());
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Coefficient-wise spatial derivative.
    pub fn dx(&self) -> HSeries {
        HSeries {
            parts: std::array::from_fn(|i| self.parts[i].dx()),
        }
    }

    /// Coefficient-wise repeated spatial derivative.
    pub fn dx_n(&self, n: u32) -> HSeries {
        HSeries {
            parts: std::array::from_fn(|i| self.parts[i].dx_n(n)),
        }
    }

    /// Coefficient-wise canonical average.
    pub fn average(&self) -> Result<HSeries> {
        let mut parts: [DiffPoly; ORDERS] = Default::default();
        for i in 0..ORDERS {
            parts[i] = average(&self.parts[i])?;
        }
        Ok(HSeries { parts })
    }

    /// Substitutes an `h`-series for the `v` field: every `v_kx` becomes
    /// `dx^k` of `series`, including inside average and primitive bodies,
    /// and the result is re-expanded and truncated after `h^6`.
    ///
    /// The substituted series must have no `h^0` part; this guarantees each
    /// `v`-factor raises the order, so the truncation is exact.
    pub fn compose_v(&self, series: &HSeries) -> Result<HSeries> {
        if !series.parts[0].is_zero() {
            return Err(Error::InvalidArgument(
                "substituted series must vanish at order h^0".into(),
            ));
        }
        let mut out = HSeries::zero();
        for (i, part) in self.parts.iter().enumerate() {
            out = out.add(&substitute_poly(part, series)?.shift(i));
        }
        Ok(out)
    }
}

impl std::fmt::Display for HSeries {
    /// Renders as `p0 + h^2*(p2) + h^4*(p4) + h^6*(p6)`, omitting vanishing
    /// orders; the zero series renders as `0`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut wrote = false;
        for (i, part) in self.parts.iter().enumerate() {
            if part.is_zero() {
                continue;
            }
            if wrote {
                f.write_str(" + ")?;
            }
            if i == 0 {
                write!(f, "{part}")?;
            } else {
                write!(f, "h^{}*({part})", 2 * i)?;
            }
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Substitutes `series` for the `v` field throughout a single polynomial,
/// producing a truncated series.
fn substitute_poly(p: &DiffPoly, series: &HSeries) -> Result<HSeries> {
    let mut out = HSeries::zero();
    for (key, coeff) in &p.terms {
        let base = MonoKey {
            uders: key.uders.clone(),
            params: key.params.clone(),
            ..MonoKey::unit()
        };
        let mut acc = HSeries::constant(DiffPoly::from_key(base, coeff.clone()));
        for &k in &key.vders {
            acc = acc.mul(&series.dx_n(k));
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
            acc = acc.mul(&substitute_poly(&body, series)?.average()?);
        }
        for prim in &key.prims {
            let inner = substitute_poly(prim.integrand(), series)?;
            let mut parts: [DiffPoly; ORDERS] = Default::default();
            for i in 0..ORDERS {
                parts[i] = primitive_of(&inner.parts[i])?;
            }
            acc = acc.mul(&HSeries { parts });
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

    #[test]
    fn multiplication_truncates() {
        // (1 + h^2 u)^2 = 1 + 2 h^2 u + h^4 u^2.
        let s = HSeries::from_parts([
            DiffPoly::one(),
            u(0),
            DiffPoly::zero(),
            DiffPoly::zero(),
        ]);
        let sq = s.mul(&s);
        assert_eq!(sq.part(0), &DiffPoly::one());
        assert_eq!(sq.part(1), &u(0).scale(&rat(2, 1)));
        assert_eq!(sq.part(2), &u(0).pow(2));
        assert!(sq.part(3).is_zero());
        // h^4 * h^4 drops out.
        let t = HSeries::from_parts([
            DiffPoly::zero(),
            DiffPoly::zero(),
            u(0),
            DiffPoly::zero(),
        ]);
        assert!(t.mul(&t).is_zero());
    }

    #[test]
    fn composition_substitutes_the_second_field() {
        // F = v^2 + h^2 u v with v = h^2 u_2x:
        // F = h^4 u_2x^2 + h^4 u u_2x + O(h^8)... the cross term enters at h^4.
        let f = HSeries::from_parts([
            v(0).pow(2),
            u(0).mul(&v(0)),
            DiffPoly::zero(),
            DiffPoly::zero(),
        ]);
        let c = HSeries::from_parts([
            DiffPoly::zero(),
            u(2),
            DiffPoly::zero(),
            DiffPoly::zero(),
        ]);
        let composed = f.compose_v(&c).unwrap();
        assert!(composed.part(0).is_zero());
        assert!(composed.part(1).is_zero());
        assert_eq!(composed.part(2), &u(2).pow(2).add(&u(0).mul(&u(2))));
        assert!(composed.part(3).is_zero());
        // Order-0 substitution is rejected.
        let bad = HSeries::constant(u(0));
        assert!(f.compose_v(&bad).is_err());
    }

    #[test]
    fn composition_reaches_average_bodies() {
        // F = av(u*v) with v = h^2 u_x^2: av(u u_x^2) at order h^2.
        let f = HSeries::constant(crate::average(&u(0).mul(&v(0))).unwrap());
        let c = HSeries::from_parts([
            DiffPoly::zero(),
            u(1).pow(2),
            DiffPoly::zero(),
            DiffPoly::zero(),
        ]);
        let composed = f.compose_v(&c).unwrap();
        assert!(composed.part(0).is_zero());
        assert_eq!(
            composed.part(1),
            &crate::average(&u(0).mul(&u(1).pow(2))).unwrap()
        );
    }
}
