//! Flow integration runner: evolves one of the continuum fields and checks
//! the conservation laws that field is supposed to respect.

use crate::data::{band_limited, small_counter_wave, small_wave};
use crate::report::{float_value, Report};
use anyhow::Result;
use continuum::{
    integrate_flow, FieldKind, FlowSpec, GridFunction, NormalizedCoefficients, Potential,
    Trajectory,
};
use diffpoly::{parse_rational, rational_string, rational_to_f64, Rat};
use normalform::{fput_model, solve};
use serde_json::json;
use std::time::Instant;

/// Which right-hand side the `evolve` subcommand integrates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldSel {
    /// Two-wave system with the exact half-shift advection.
    Exact,
    /// Two-wave system expanded through the given even order.
    Expanded(u32),
    /// One-field reduced flow truncated at the given even order.
    Reduced(u32),
    /// Bare hierarchy field (1, 3, 5, or 7).
    Kdv(u32),
    /// Dressed normalized flow with coefficients from the pipeline solve.
    Normalized,
}

impl FieldSel {
    pub fn name(&self) -> String {
        match self {
            FieldSel::Exact => "exact".to_string(),
            FieldSel::Expanded(k) => format!("expanded{k}"),
            FieldSel::Reduced(k) => format!("reduced{k}"),
            FieldSel::Kdv(w) => format!("kdv{w}"),
            FieldSel::Normalized => "normalized".to_string(),
        }
    }

    fn two_fields(&self) -> bool {
        matches!(self, FieldSel::Exact | FieldSel::Expanded(_))
    }
}

/// Parses the `--field` flag. Valid names: `exact`, `expanded{0,2,4,6}`,
/// `reduced{0,2,4,6}`, `kdv{1,3,5,7}`, `normalized`.
pub fn parse_field(name: &str) -> Option<FieldSel> {
    match name {
        "exact" => Some(FieldSel::Exact),
        "normalized" => Some(FieldSel::Normalized),
        _ => {
            let (kind, digit) = name.split_at(name.len().checked_sub(1)?);
            let k: u32 = digit.parse().ok()?;
            match kind {
                "expanded" if matches!(k, 0 | 2 | 4 | 6) => Some(FieldSel::Expanded(k)),
                "reduced" if matches!(k, 0 | 2 | 4 | 6) => Some(FieldSel::Reduced(k)),
                "kdv" if matches!(k, 1 | 3 | 5 | 7) => Some(FieldSel::Kdv(k)),
                _ => None,
            }
        }
    }
}

fn time_series_table(traj: &Trajectory) -> Vec<Vec<String>> {
    let mut rows = vec![vec![
        "time".to_string(),
        "i1".to_string(),
        "i2".to_string(),
        "i3".to_string(),
        "mean_u".to_string(),
        "mean_v".to_string(),
        "drift".to_string(),
    ]];
    for (i, t) in traj.times.iter().enumerate() {
        rows.push(vec![
            format!("{t}"),
            format!("{:e}", traj.integrals[i][0]),
            format!("{:e}", traj.integrals[i][1]),
            format!("{:e}", traj.integrals[i][2]),
            format!("{:e}", traj.mean_u[i]),
            traj.mean_v.get(i).map(|v| format!("{v:e}")).unwrap_or_default(),
            format!("{:e}", traj.drift[i]),
        ]);
    }
    rows
}

fn max_abs_deviation(series: &[f64]) -> f64 {
    series
        .first()
        .map(|&first| {
            series
                .iter()
                .map(|v| (v - first).abs())
                .fold(0.0, f64::max)
        })
        .unwrap_or(0.0)
}

/// Integrates the selected field and checks its conservation laws: the three
/// hierarchy integrals for bare hierarchy fields, the field means for the
/// two-wave systems and the normalized flow.
#[allow(clippy::too_many_arguments)]
pub fn run_evolve(
    sel: &FieldSel,
    n: usize,
    h: f64,
    dt: f64,
    t_final: f64,
    seed: Option<u64>,
    alpha: &Rat,
    beta: &Rat,
    gamma: &Rat,
) -> Result<Report> {
    let started = Instant::now();
    let inputs = json!({
        "field": sel.name(),
        "grid": n,
        "h": h,
        "dt": dt,
        "t_final": t_final,
        "alpha": rational_string(alpha),
        "beta": rational_string(beta),
        "gamma": rational_string(gamma),
        "data": match seed {
            Some(_) => "band-limited noise",
            None => "built-in small wave",
        },
    });
    let mut rep = Report::new("evolve", inputs);
    rep.seed = seed;

    let u0 = match seed {
        Some(s) => band_limited(n, s, 0.1),
        None => small_wave(n),
    };
    let v0: Option<GridFunction> = sel.two_fields().then(|| match seed {
        Some(s) => band_limited(n, s.wrapping_add(1), 0.05),
        None => small_counter_wave(n),
    });

    let field = match sel {
        FieldSel::Exact => FieldKind::Exact,
        FieldSel::Expanded(k) => FieldKind::Expanded { order: *k },
        FieldSel::Reduced(k) => FieldKind::Reduced { order: *k },
        FieldSel::Kdv(w) => FieldKind::Kdv { which: *w },
        FieldSel::Normalized => {
            let model = fput_model(alpha, beta, gamma)?;
            let zero = parse_rational("0").expect("literal");
            let solution = solve(&model, &zero)?;
            FieldKind::Normalized(NormalizedCoefficients::from_solution(&solution))
        }
    };
    let needs_potential = matches!(
        sel,
        FieldSel::Exact | FieldSel::Expanded(_) | FieldSel::Reduced(_)
    );
    let potential = needs_potential
        .then(|| {
            Potential::polynomial(
                rational_to_f64(alpha),
                rational_to_f64(beta),
                rational_to_f64(gamma),
            )
        })
        .transpose()?;
    let spec = FlowSpec {
        field,
        h,
        potential,
        dt,
        dealias: true,
    };
    let steps = (t_final / dt).round().max(1.0) as usize;
    let stride = (steps / 50).max(1);

    let traj = match integrate_flow(&u0, v0.as_ref(), &spec, t_final, stride) {
        Ok(traj) => traj,
        Err(e) => {
            rep.check("completed", false, format!("{e}"));
            rep.results = json!({});
            rep.time("evolve", started);
            return Ok(rep);
        }
    };
    rep.check(
        "completed",
        true,
        format!("{} steps, {} samples", traj.steps, traj.times.len()),
    );
    let finite = traj.final_u.is_finite()
        && traj.final_v.as_ref().map_or(true, GridFunction::is_finite);
    rep.check("fields-finite", finite, "final fields are finite");

    let first = traj.integrals.first().copied().unwrap_or_default();
    let last = traj.integrals.last().copied().unwrap_or_default();
    let mut integral_drift = [0.0f64; 3];
    for m in 0..3 {
        let series: Vec<f64> = traj.integrals.iter().map(|row| row[m]).collect();
        integral_drift[m] = max_abs_deviation(&series);
    }
    match sel {
        FieldSel::Kdv(_) => {
            for (m, label) in ["first", "second", "third"].iter().enumerate() {
                let rel = integral_drift[m] / (1.0 + first[m].abs());
                rep.check(
                    format!("{label}-integral-drift"),
                    rel < 1e-8,
                    format!("max relative drift {rel:.3e} (tolerance 1e-8)"),
                );
            }
        }
        FieldSel::Exact | FieldSel::Expanded(_) => {
            let du = max_abs_deviation(&traj.mean_u);
            let dv = max_abs_deviation(&traj.mean_v);
            rep.check(
                "mean-u-conserved",
                du < 1e-12,
                format!("max drift {du:.3e} (tolerance 1e-12)"),
            );
            rep.check(
                "mean-v-conserved",
                dv < 1e-12,
                format!("max drift {dv:.3e} (tolerance 1e-12)"),
            );
        }
        FieldSel::Normalized => {
            let du = max_abs_deviation(&traj.mean_u);
            rep.check(
                "mean-u-conserved",
                du < 1e-12,
                format!("max drift {du:.3e} (tolerance 1e-12)"),
            );
        }
        FieldSel::Reduced(_) => {}
    }

    rep.results = json!({
        "steps": traj.steps,
        "samples": traj.times.len(),
        "final_time": traj.times.last().copied().unwrap_or(0.0),
        "initial_integrals": first,
        "final_integrals": last,
        "integral_drift": integral_drift,
        "mean_u_drift": float_value(max_abs_deviation(&traj.mean_u)),
        "mean_v_drift": float_value(max_abs_deviation(&traj.mean_v)),
        "accumulated_mean_shift": float_value(traj.drift.last().copied().unwrap_or(0.0)),
        "final_sup_norm": float_value(traj.final_u.sup_norm()),
    });
    rep.table = time_series_table(&traj);
    rep.time("evolve", started);
    Ok(rep)
}
