//! Consistency between the mass-spring chain and the displacement-form
//! continuum field: with commensurate grids the two are the same dynamical
//! system in rescaled variables, so a chain evolved by Verlet must track the
//! spectrally evolved field to integrator accuracy.

use crate::data::standard_wave;
use crate::report::{float_value, Report};
use anyhow::Result;
use continuum::{integrate_displacement, GridFunction, Potential};
use diffpoly::{rational_string, rational_to_f64, Rat};
use lattice::{integrate, sample_from_profile, IntegrationSpec, Scheme};
use serde_json::json;
use std::f64::consts::PI;
use std::time::Instant;

/// Runs the chain and the displacement field side by side from the same
/// smooth profile and compares the final states through the sampling map
/// `q_j = h u(h j)`; separately measures the Verlet energy drift over a long
/// horizon.
pub fn run_compare_lattice(
    n: usize,
    dt_lattice: f64,
    t_continuum: f64,
    alpha: &Rat,
    beta: &Rat,
    gamma: &Rat,
) -> Result<Report> {
    let started = Instant::now();
    let h = 1.0 / n as f64;
    let (af, bf, gf) = (
        rational_to_f64(alpha),
        rational_to_f64(beta),
        rational_to_f64(gamma),
    );
    let field_potential = Potential::polynomial(af, bf, gf)?;
    let chain_potential = lattice::Potential::polynomial(af, bf, gf)?;
    let inputs = json!({
        "grid": n,
        "h": format!("1/{n}"),
        "dt_lattice": dt_lattice,
        "t_continuum": t_continuum,
        "alpha": rational_string(alpha),
        "beta": rational_string(beta),
        "gamma": rational_string(gamma),
    });
    let mut rep = Report::new("compare-lattice", inputs);

    let u0 = standard_wave(n);
    let v0 = GridFunction::sample(n, |x| {
        0.3 * (2.0 * PI * x).cos() - 0.1 * (4.0 * PI * x).sin()
    })?;

    // Continuum side: high-order integration on the slow time scale.
    let steps_continuum: u64 = 1000;
    let dt_continuum = t_continuum / steps_continuum as f64;
    let (u_final, _) = integrate_displacement(
        &u0,
        &v0,
        h,
        &field_potential,
        dt_continuum,
        steps_continuum,
    )?;

    // Chain side: same initial profile through the sampling map, evolved by
    // Verlet on the fast time scale `t/h`.
    let t_lattice = t_continuum / h;
    let steps_lattice = (t_lattice / dt_lattice).round().max(1.0) as u64;
    let dt_used = t_lattice / steps_lattice as f64;
    let chain0 = sample_from_profile(u0.values(), v0.values(), h)?;
    let spec = IntegrationSpec::new(dt_used, steps_lattice, Scheme::Verlet)
        .with_stride(steps_lattice);
    let chain = integrate(&chain0, &chain_potential, &spec)?;
    let q_final = &chain.last_state().q;

    let mapping_error = q_final
        .iter()
        .zip(u_final.values())
        .map(|(q, u)| (q - h * u).abs())
        .fold(0.0, f64::max);
    rep.check(
        "lattice-matches-continuum",
        mapping_error < 1e-6,
        format!("max_j |q_j - h u(h j)| = {mapping_error:.3e} (tolerance 1e-6)"),
    );

    // Long-horizon energy behaviour of the symplectic scheme.
    let energy_dt = 2.5e-4;
    let energy_steps: u64 = 40_000;
    let energy_spec =
        IntegrationSpec::new(energy_dt, energy_steps, Scheme::Verlet).with_stride(40);
    let energy_run = integrate(&chain0, &chain_potential, &energy_spec)?;
    let e0 = energy_run.energies[0];
    let energy_drift = energy_run
        .energies
        .iter()
        .map(|e| (e - e0).abs())
        .fold(0.0, f64::max)
        / e0.abs().max(f64::MIN_POSITIVE);
    rep.check(
        "verlet-energy-drift",
        energy_drift < 1e-6,
        format!(
            "max relative drift {energy_drift:.3e} over t = {} (tolerance 1e-6)",
            energy_dt * energy_steps as f64
        ),
    );

    rep.results = json!({
        "mapping_error": float_value(mapping_error),
        "t_lattice": t_lattice,
        "dt_lattice_used": dt_used,
        "steps_lattice": steps_lattice,
        "dt_continuum": dt_continuum,
        "steps_continuum": steps_continuum,
        "energy": {
            "initial": float_value(e0),
            "max_relative_drift": float_value(energy_drift),
            "horizon": energy_dt * energy_steps as f64,
            "dt": energy_dt,
        },
    });
    rep.table = std::iter::once(vec!["time".to_string(), "energy".to_string()])
        .chain(
            energy_run
                .times
                .iter()
                .zip(&energy_run.energies)
                .map(|(t, e)| vec![format!("{t}"), format!("{e:e}")]),
        )
        .collect();
    rep.time("compare", started);
    Ok(rep)
}
