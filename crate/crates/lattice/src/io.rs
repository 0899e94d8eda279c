//! Trajectory output: per-particle CSV plus a JSON metadata sidecar.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::{Potential, Result, Scheme, Trajectory};

/// Metadata describing a stored trajectory.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TrajectoryMeta {
    /// Number of particles.
    pub n: usize,
    /// Profile spacing `h = 1/n` when the run was sampled from profiles.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<f64>,
    /// Spring potential.
    pub potential: Potential,
    /// Time-stepping scheme.
    pub scheme: Scheme,
    /// Step size.
    pub dt: f64,
    /// Total energy at each recorded sample.
    pub energy: Vec<f64>,
}

impl TrajectoryMeta {
    /// Collects the metadata of a finished run.
    pub fn of(traj: &Trajectory, w: &Potential, scheme: Scheme, dt: f64, h: Option<f64>) -> Self {
        TrajectoryMeta {
            n: traj.last_state().len(),
            h,
            potential: *w,
            scheme,
            dt,
            energy: traj.energies.clone(),
        }
    }
}

/// Writes a trajectory as CSV with columns `t,j,q,p`, one row per particle
/// per sample.
pub fn write_trajectory_csv(path: &Path, traj: &Trajectory) -> Result<()> {
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(out, "t,j,q,p")?;
    for (i, state) in traj.states.iter().enumerate() {
        let t = traj.times[i];
        for j in 0..state.len() {
            writeln!(out, "{t},{j},{:.17e},{:.17e}", state.q[j], state.p[j])?;
        }
    }
    out.flush()?;
    Ok(())
}

/// Writes the JSON metadata sidecar (pretty-printed, trailing newline).
pub fn write_trajectory_meta(path: &Path, meta: &TrajectoryMeta) -> Result<()> {
    let mut text = serde_json::to_string_pretty(meta)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}
