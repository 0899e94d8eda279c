//! Riemann invariants of the two-wave system.

use crate::grid::GridFunction;
use crate::{Error, Result};

/// The pair of Riemann invariants `U = 2α(D_h u + v)`, `V = 2α(D_h u − v)`
/// of a displacement/velocity profile `(u, v)`, together with the spatial
/// mean of `u`, which is carried separately because only `D_h u` enters the
/// invariants.
#[derive(Debug, Clone)]
pub struct RiemannState {
    /// Riemann invariant `U = 2α(D_h u + v)`.
    pub u: GridFunction,
    /// Riemann invariant `V = 2α(D_h u − v)`.
    pub v: GridFunction,
    /// Long-wave parameter of the half-shift difference.
    pub h: f64,
    /// Anharmonic constant used in the normalization.
    pub alpha: f64,
    /// Mean of the displacement profile, preserved by the round trip.
    pub u_mean: f64,
}

/// Maps a displacement/velocity pair to its Riemann invariants.
pub fn to_riemann(u: &GridFunction, v: &GridFunction, h: f64, alpha: f64) -> Result<RiemannState> {
    if alpha == 0.0 || !alpha.is_finite() {
        return Err(Error::InvalidArgument(
            "Riemann normalization needs a finite nonzero alpha".into(),
        ));
    }
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::InvalidArgument("h must be positive".into()));
    }
    let dhu = u.apply_dh(h);
    let big_u = dhu.add(v).scale(2.0 * alpha);
    let big_v = dhu.sub(v).scale(2.0 * alpha);
    Ok(RiemannState {
        u: big_u,
        v: big_v,
        h,
        alpha,
        u_mean: u.mean(),
    })
}

/// Inverts [`to_riemann`]: recovers `v` exactly and `u` up to its mean,
/// which is restored from the stored value.
pub fn from_riemann(s: &RiemannState) -> Result<(GridFunction, GridFunction)> {
    let scale = 1.0 / (4.0 * s.alpha);
    let v = s.u.sub(&s.v).scale(scale);
    let dhu = s.u.add(&s.v).scale(scale);
    let u = dhu.dh_inverse(s.h)?.add_scalar(s.u_mean);
    Ok((u, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    const N: usize = 256;

    #[test]
    fn zero_displacement_splits_symmetrically() {
        let alpha = 0.8;
        let g = GridFunction::sample(N, |x| (2.0 * PI * x).cos()).unwrap();
        let zero = GridFunction::zeros(N).unwrap();
        let s = to_riemann(&zero, &g, 0.05, alpha).unwrap();
        assert!(s.u.sub(&g.scale(2.0 * alpha)).sup_norm() < 1e-12);
        assert!(s.v.sub(&g.scale(-2.0 * alpha)).sup_norm() < 1e-12);
    }

    #[test]
    fn zero_velocity_gives_equal_invariants() {
        let alpha = 1.5;
        let h = 0.07;
        let u = GridFunction::sample(N, |x| (4.0 * PI * x).sin()).unwrap();
        let zero = GridFunction::zeros(N).unwrap();
        let s = to_riemann(&u, &zero, h, alpha).unwrap();
        let expect = u.apply_dh(h).scale(2.0 * alpha);
        assert!(s.u.sub(&expect).sup_norm() < 1e-12);
        assert!(s.v.sub(&expect).sup_norm() < 1e-12);
    }

    #[test]
    fn round_trip_restores_displacement_and_velocity() {
        let alpha = -0.6;
        let h = 1.0 / 24.0;
        let u = GridFunction::sample(N, |x| {
            0.4 + (2.0 * PI * x).sin() + 0.2 * (6.0 * PI * x).cos()
        })
        .unwrap();
        let v = GridFunction::sample(N, |x| 0.3 * (4.0 * PI * x).sin() - 0.1).unwrap();
        let s = to_riemann(&u, &v, h, alpha).unwrap();
        let (u2, v2) = from_riemann(&s).unwrap();
        assert!(u.sub(&u2).sup_norm() < 1e-11);
        assert!(v.sub(&v2).sup_norm() < 1e-11);
    }

    #[test]
    fn rejects_degenerate_normalization() {
        let g = GridFunction::zeros(N).unwrap();
        assert!(to_riemann(&g, &g, 0.1, 0.0).is_err());
        assert!(to_riemann(&g, &g, 0.0, 1.0).is_err());
    }
}
