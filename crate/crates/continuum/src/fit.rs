//! Least-squares power-law fits for convergence studies.

use crate::{Error, Result};
use serde::Serialize;

/// Result of fitting `y ≈ C·xᵖ` through log–log least squares.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerFit {
    /// Fitted exponent `p`.
    pub slope: f64,
    /// `log(C)` (natural logarithm).
    pub intercept: f64,
    /// Coefficient of determination of the log–log regression.
    pub r_squared: f64,
}

/// Fits `y ≈ C·xᵖ` to the given samples. All entries must be positive and
/// finite (errors are expected to sit above the rounding floor), and at
/// least two points are needed.
pub fn fit_power_law(x: &[f64], y: &[f64]) -> Result<PowerFit> {
    if x.len() != y.len() {
        return Err(Error::InvalidArgument(format!(
            "mismatched sample lengths: {} vs {}",
            x.len(),
            y.len()
        )));
    }
    if x.len() < 2 {
        return Err(Error::InvalidArgument(
            "a power-law fit needs at least two samples".into(),
        ));
    }
    if !x.iter().chain(y).all(|&v| v.is_finite() && v > 0.0) {
        return Err(Error::InvalidArgument(
            "power-law samples must be positive and finite".into(),
        ));
    }
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|v| (v - mx) * (v - mx)).sum();
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidArgument(
            "all abscissae coincide; the exponent is undetermined".into(),
        ));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_tot: f64 = ly.iter().map(|v| (v - my) * (v - my)).sum();
    let ss_res: f64 = lx
        .iter()
        .zip(&ly)
        .map(|(a, b)| {
            let p = slope * a + intercept;
            (b - p) * (b - p)
        })
        .sum();
    let r_squared = if ss_tot == 0.0 {
        1.0
    } else {
        1.0 - ss_res / ss_tot
    };
    Ok(PowerFit {
        slope,
        intercept,
        r_squared,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_an_exact_power_law() {
        let x: [f64; 4] = [0.5, 0.25, 0.125, 0.0625];
        let y: Vec<f64> = x.iter().map(|&v| 3.0 * v.powi(4)).collect();
        let fit = fit_power_law(&x, &y).unwrap();
        assert!((fit.slope - 4.0).abs() < 1e-12);
        assert!((fit.intercept - 3.0f64.ln()).abs() < 1e-12);
        assert!((fit.r_squared - 1.0).abs() < 1e-12);
    }

    #[test]
    fn reports_scatter_through_r_squared() {
        let x = [1.0, 2.0, 4.0, 8.0];
        let y = [1.0, 3.1, 3.9, 17.2];
        let fit = fit_power_law(&x, &y).unwrap();
        assert!(fit.r_squared < 1.0 && fit.r_squared > 0.5);
    }

    #[test]
    fn rejects_degenerate_inputs() {
        assert!(fit_power_law(&[1.0], &[1.0]).is_err());
        assert!(fit_power_law(&[1.0, 2.0], &[1.0]).is_err());
        assert!(fit_power_law(&[1.0, -2.0], &[1.0, 1.0]).is_err());
        assert!(fit_power_law(&[1.0, 2.0], &[0.0, 1.0]).is_err());
        assert!(fit_power_law(&[2.0, 2.0], &[1.0, 2.0]).is_err());
    }
}
