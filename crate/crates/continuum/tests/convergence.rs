//! Order-of-accuracy checks: every truncated expansion must lose accuracy at
//! exactly the rate its first dropped term dictates.

use continuum::{
    fit_power_law, invariance_residual, rhs_exact, rhs_expanded, to_riemann, GridFunction,
    Potential,
};
use diffpoly::{parse_rational, Param};
use normalform::slaving::displacement_acceleration_series;
use std::f64::consts::PI;

fn slope(hs: &[f64], errs: &[f64]) -> f64 {
    let fit = fit_power_law(hs, errs).unwrap();
    assert!(
        fit.r_squared > 0.99,
        "convergence data is not a clean power law: slope {}, r² {}, errs {errs:?}",
        fit.slope,
        fit.r_squared
    );
    fit.slope
}

/// Truncating the half-shift symbol after the third-derivative term must
/// leave an `h⁴` defect, and keeping the fifth-derivative term an `h⁶` one.
#[test]
fn half_shift_truncations_converge_at_their_order() {
    let n = 64;
    let f = GridFunction::sample(n, |x| (2.0 * PI * x).sin()).unwrap();
    let d1 = f.deriv(1);
    let d3 = f.deriv(3);
    let d5 = f.deriv(5);

    let hs4: Vec<f64> = (4..=8).map(|k| 0.5f64.powi(k)).collect();
    let errs4: Vec<f64> = hs4
        .iter()
        .map(|&h| {
            let truncated = d1.add(&d3.scale(h * h / 24.0));
            f.apply_dh(h).sub(&truncated).sup_norm()
        })
        .collect();
    let s4 = slope(&hs4, &errs4);
    assert!((3.8..=4.2).contains(&s4), "slope {s4}, errors {errs4:?}");

    let hs6: Vec<f64> = (3..=6).map(|k| 0.5f64.powi(k)).collect();
    let errs6: Vec<f64> = hs6
        .iter()
        .map(|&h| {
            let truncated = d1
                .add(&d3.scale(h * h / 24.0))
                .add(&d5.scale(h.powi(4) / 1920.0));
            f.apply_dh(h).sub(&truncated).sup_norm()
        })
        .collect();
    let s6 = slope(&hs6, &errs6);
    assert!((5.7..=6.3).contains(&s6), "slope {s6}, errors {errs6:?}");
}

/// The long-wave expansions of the two-wave system approximate the exact
/// half-shift field with defects `h²`, `h⁴`, `h⁶`, `h⁸` as the kept order
/// climbs the ladder.
#[test]
fn expansion_ladder_gains_two_orders_per_rung() {
    let n = 64;
    let pot = Potential::polynomial(1.0, 0.5, -0.25).unwrap();
    let u = GridFunction::sample(n, |x| {
        1.2 * (2.0 * PI * x).sin() + 0.7 * (4.0 * PI * x).cos() + 0.3
    })
    .unwrap();
    let v = GridFunction::sample(n, |x| {
        0.9 * (2.0 * PI * x).cos() - 0.4 * (4.0 * PI * x).sin() - 0.2
    })
    .unwrap();
    let hs: Vec<f64> = (4..=7).map(|k| 0.5f64.powi(k)).collect();

    for order in [0u32, 2, 4, 6] {
        let errs: Vec<f64> = hs
            .iter()
            .map(|&h| {
                let s = to_riemann(&u, &v, h, pot.alpha()).unwrap();
                let (eu, ev) = rhs_exact(&s, &pot, false).unwrap();
                let (xu, xv) = rhs_expanded(&s, &pot, order, false).unwrap();
                eu.sub(&xu).sup_norm().max(ev.sub(&xv).sup_norm())
            })
            .collect();
        let expected = (order + 2) as f64;
        let got = slope(&hs, &errs);
        assert!(
            (got - expected).abs() <= 0.5,
            "order-{order} defect: slope {got}, expected {expected}, errors {errs:?}"
        );
    }
}

/// The symbolic expansion of the acceleration composite
/// `h⁻²·D_h[W′(h²·D_h u)]` agrees with the spectrally evaluated composite up
/// to an `h⁸` defect.
#[test]
fn displacement_acceleration_series_matches_the_composite() {
    let n = 64;
    let (alpha, beta, gamma) = (1.0, 0.5, -0.25);
    let pot = Potential::polynomial(alpha, beta, gamma).unwrap();
    let vals = [
        (Param::ALPHA, parse_rational("1").unwrap()),
        (Param::BETA, parse_rational("1/2").unwrap()),
        (Param::GAMMA, parse_rational("-1/4").unwrap()),
    ];
    let series = displacement_acceleration_series();
    let parts: Vec<_> = (0..4)
        .map(|i| series.part(i).eval_params(&vals).unwrap())
        .collect();
    let u = GridFunction::sample(n, |x| {
        1.1 * (2.0 * PI * x).sin() + 0.6 * (4.0 * PI * x).cos()
    })
    .unwrap();

    let hs: Vec<f64> = (3..=6).map(|k| 0.5f64.powi(k)).collect();
    let errs: Vec<f64> = hs
        .iter()
        .map(|&h| {
            let strain = u.apply_dh(h).scale(h * h);
            let accel = strain.map(|z| pot.force(z)).apply_dh(h).scale(1.0 / (h * h));
            let mut series_val = GridFunction::zeros(n).unwrap();
            for (i, p) in parts.iter().enumerate() {
                let val = continuum::evaluate(p, &u).unwrap();
                series_val = series_val.add(&val.scale(h.powi(2 * i as i32)));
            }
            accel.sub(&series_val).sup_norm()
        })
        .collect();
    let got = slope(&hs, &errs);
    assert!(
        (7.5..=8.5).contains(&got),
        "composite defect slope {got}, errors {errs:?}"
    );
}

/// The slaved graph `v = h²c₂ + h⁴c₄` satisfies the invariance equation with
/// an `h⁶` defect; dropping `c₄` degrades the defect to `h⁴`.
#[test]
fn invariance_residual_orders() {
    let n = 256;
    let pot = Potential::polynomial(1.0, 0.0, 0.0).unwrap();
    let u = GridFunction::sample(n, |x| {
        (2.0 * PI * x).sin() + 0.3 * (4.0 * PI * x).cos()
    })
    .unwrap();
    let hs: Vec<f64> = (5..=8).map(|k| 0.5f64.powi(k)).collect();

    let full: Vec<f64> = hs
        .iter()
        .map(|&h| invariance_residual(&u, h, &pot, 4).unwrap())
        .collect();
    let s_full = slope(&hs, &full);
    assert!(
        (5.5..=6.5).contains(&s_full),
        "full graph: slope {s_full}, residuals {full:?}"
    );

    let truncated: Vec<f64> = hs
        .iter()
        .map(|&h| invariance_residual(&u, h, &pot, 2).unwrap())
        .collect();
    let s_trunc = slope(&hs, &truncated);
    assert!(
        (3.5..=4.5).contains(&s_trunc),
        "quadratic-only graph: slope {s_trunc}, residuals {truncated:?}"
    );
}
