//! Chain initialisation from smooth profiles on the unit circle.

use crate::{ChainState, Error, Result};

/// Samples a chain of `n = 1/h` particles from profiles `u`, `v` given on a
/// uniform grid over `[0, 1)`:
///
/// ```text
/// q_j = h · u(h·j) ,   p_j = h² · v(h·j) ,   j = 0 … n−1.
/// ```
///
/// `u` and `v` hold grid values at `x_k = k/N`; `N` must be a multiple of
/// `n` so the points `h·j` lie on the grid. Fails when `1/h` is not a
/// positive integer (at least 2) or the grid is incommensurate with it.
pub fn sample_from_profile(u: &[f64], v: &[f64], h: f64) -> Result<ChainState> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "spacing must be positive and finite, got {h}"
        )));
    }
    let n_real = 1.0 / h;
    let n = n_real.round();
    if n < 2.0 || (n_real - n).abs() > 1e-9 * n {
        return Err(Error::InvalidArgument(format!(
            "1/h must be an integer >= 2, got 1/{h} = {n_real}"
        )));
    }
    let n = n as usize;
    if u.len() != v.len() {
        return Err(Error::InvalidArgument(format!(
            "profiles differ in length: {} vs {}",
            u.len(),
            v.len()
        )));
    }
    if u.is_empty() || u.len() % n != 0 {
        return Err(Error::InvalidArgument(format!(
            "grid size {} is not a positive multiple of the chain size {n}",
            u.len()
        )));
    }
    let m = u.len() / n;
    let q = (0..n).map(|j| h * u[j * m]).collect();
    let p = (0..n).map(|j| h * h * v[j * m]).collect();
    ChainState::new(q, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sine_profile_on_four_particles() {
        let grid_n = 16;
        let u: Vec<f64> = (0..grid_n)
            .map(|k| (2.0 * std::f64::consts::PI * k as f64 / grid_n as f64).sin())
            .collect();
        let v = vec![0.0; grid_n];
        let s = sample_from_profile(&u, &v, 0.25).unwrap();
        assert_eq!(s.len(), 4);
        // q = (1/4)(sin 0, sin π/2, sin π, sin 3π/2) = (0, 1/4, 0, −1/4).
        assert!(s.q[0].abs() < 1e-15);
        assert!((s.q[1] - 0.25).abs() < 1e-15);
        assert!(s.q[2].abs() < 1e-15);
        assert!((s.q[3] + 0.25).abs() < 1e-15);
        assert!(s.p.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn momenta_scale_quadratically() {
        let u = vec![0.0; 8];
        let v = vec![3.0; 8];
        let s = sample_from_profile(&u, &v, 0.5).unwrap();
        assert_eq!(s.len(), 2);
        assert!((s.p[0] - 0.75).abs() < 1e-15);
    }

    #[test]
    fn incommensurate_grids_are_rejected() {
        let u = vec![0.0; 10];
        let v = vec![0.0; 10];
        // 1/h = 4 does not divide 10.
        assert!(sample_from_profile(&u, &v, 0.25).is_err());
        // 1/h is not an integer.
        assert!(sample_from_profile(&u, &v, 0.3).is_err());
        // Non-positive spacing.
        assert!(sample_from_profile(&u, &v, 0.0).is_err());
        // Mismatched profile lengths.
        assert!(sample_from_profile(&u, &v[..5], 0.25).is_err());
    }
}
