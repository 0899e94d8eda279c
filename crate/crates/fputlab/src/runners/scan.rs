//! Convergence-rate scans: the invariance defect of the slaved graph, the
//! truncation ladder of the two-wave expansion, and the half-shift
//! difference expansion itself.

use crate::data::standard_wave;
use crate::report::Report;
use anyhow::{anyhow, Result};
use continuum::{
    fit_power_law, invariance_residual, rhs_exact, rhs_expanded, GridFunction, Potential,
    PowerFit, RiemannState,
};
use diffpoly::{rational_string, rational_to_f64, Rat};
use serde_json::{json, Value};
use std::f64::consts::PI;
use std::time::Instant;

/// Spacings for the two-wave truncation ladder. The highest truncation
/// converges like the eighth power of the spacing, so the ladder uses
/// coarser spacings than the defect sweep to stay above rounding.
const LADDER_H: [f64; 4] = [0.25, 0.125, 0.0625, 0.03125];

/// Spacings for the half-shift expansion orders.
const HALF_SHIFT_H: [f64; 4] = [1.0 / 16.0, 1.0 / 32.0, 1.0 / 64.0, 1.0 / 128.0];

fn slope_entry(label: &str, fit: &PowerFit, hs: &[f64]) -> Value {
    let lo = hs.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = hs.iter().cloned().fold(0.0, f64::max);
    json!({
        "label": label,
        "slope": fit.slope,
        "intercept": fit.intercept,
        "r_squared": fit.r_squared,
        "h_range": [lo, hi],
    })
}

fn slope_detail(fit: &PowerFit, expected: f64) -> String {
    format!(
        "slope {:.3} (expected {expected}), r² {:.6}",
        fit.slope, fit.r_squared
    )
}

/// Measures the decay rates of three families of truncation errors and
/// checks each fitted exponent against its analytic order.
pub fn run_residual_scan(
    hs: &[f64],
    n: usize,
    alpha: &Rat,
    beta: &Rat,
    gamma: &Rat,
) -> Result<Report> {
    let started = Instant::now();
    if hs.len() < 2 {
        return Err(anyhow!("the defect sweep needs at least two spacings"));
    }
    let pot = Potential::polynomial(
        rational_to_f64(alpha),
        rational_to_f64(beta),
        rational_to_f64(gamma),
    )?;
    let inputs = json!({
        "h": hs,
        "grid": n,
        "alpha": rational_string(alpha),
        "beta": rational_string(beta),
        "gamma": rational_string(gamma),
    });
    let mut rep = Report::new("residual-scan", inputs);
    let mut slopes = Vec::new();
    let mut samples = serde_json::Map::new();
    let mut table = vec![vec![
        "quantity".to_string(),
        "h".to_string(),
        "error".to_string(),
    ]];
    let record =
        |table: &mut Vec<Vec<String>>, samples: &mut serde_json::Map<String, Value>,
         label: &str, hs: &[f64], vals: &[f64]| {
            samples.insert(
                label.to_string(),
                Value::Array(
                    hs.iter()
                        .zip(vals)
                        .map(|(h, v)| json!([h, v]))
                        .collect(),
                ),
            );
            for (h, v) in hs.iter().zip(vals) {
                table.push(vec![label.to_string(), h.to_string(), format!("{v:e}")]);
            }
        };

    // Invariance defect of the slaved graph, with and without the
    // second manifold coefficient.
    let u = standard_wave(n);
    for (label, order, expected, window) in [
        ("slaving-defect-order-six", 4u32, 6.0, 0.5),
        ("truncated-defect-order-four", 2u32, 4.0, 0.5),
    ] {
        let vals = hs
            .iter()
            .map(|&h| invariance_residual(&u, h, &pot, order))
            .collect::<continuum::Result<Vec<f64>>>()?;
        let fit = fit_power_law(hs, &vals)?;
        record(&mut table, &mut samples, label, hs, &vals);
        slopes.push(slope_entry(label, &fit, hs));
        rep.check(
            label,
            (fit.slope - expected).abs() <= window,
            slope_detail(&fit, expected),
        );
    }

    // Truncation ladder of the two-wave expansion against the exact
    // advection: keeping terms through h^k leaves an O(h^(k+2)) error.
    let v = GridFunction::sample(n, |x| {
        0.4 * (2.0 * PI * x).cos() - 0.1 * (6.0 * PI * x).sin()
    })?;
    for order in [0u32, 2, 4, 6] {
        let label = format!("expansion-order-{order}");
        let expected = f64::from(order) + 2.0;
        let vals = LADDER_H
            .iter()
            .map(|&h| -> Result<f64> {
                let state = RiemannState {
                    u: u.clone(),
                    v: v.clone(),
                    h,
                    alpha: pot.alpha(),
                    u_mean: 0.0,
                };
                let (eu, ev) = rhs_exact(&state, &pot, false)?;
                let (au, av) = rhs_expanded(&state, &pot, order, false)?;
                Ok(eu.sub(&au).sup_norm().max(ev.sub(&av).sup_norm()))
            })
            .collect::<Result<Vec<f64>>>()?;
        let fit = fit_power_law(&LADDER_H, &vals)?;
        record(&mut table, &mut samples, &label, &LADDER_H, &vals);
        slopes.push(slope_entry(&label, &fit, &LADDER_H));
        rep.check(
            label,
            (fit.slope - expected).abs() <= 0.5,
            slope_detail(&fit, expected),
        );
    }

    // The half-shift difference against its derivative expansion: the
    // first two truncations converge at fourth and sixth order.
    let deriv_terms = [
        (3u32, 1.0 / 24.0),
        (5u32, 1.0 / 1920.0),
    ];
    for (kept, label, expected, window) in [
        (1usize, "half-shift-order-four", 4.0, 0.2),
        (2usize, "half-shift-order-six", 6.0, 0.3),
    ] {
        let vals: Vec<f64> = HALF_SHIFT_H
            .iter()
            .map(|&h| {
                let mut approx = u.deriv(1);
                for (m, c) in deriv_terms.iter().take(kept) {
                    approx = approx.add(&u.deriv(*m).scale(c * h.powi(*m as i32 - 1)));
                }
                u.apply_dh(h).sub(&approx).sup_norm()
            })
            .collect();
        let fit = fit_power_law(&HALF_SHIFT_H, &vals)?;
        record(&mut table, &mut samples, label, &HALF_SHIFT_H, &vals);
        slopes.push(slope_entry(label, &fit, &HALF_SHIFT_H));
        rep.check(
            label,
            (fit.slope - expected).abs() <= window,
            slope_detail(&fit, expected),
        );
    }

    rep.results = json!({
        "slopes": slopes,
        "samples": Value::Object(samples),
    });
    rep.table = table;
    rep.time("scan", started);
    Ok(rep)
}
