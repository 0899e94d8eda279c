//! Fixed-step time integration with blow-up detection.

use serde::{Deserialize, Serialize};

use crate::chain::forces;
use crate::{energy, ChainState, Error, Potential, Result};

/// Time-stepping scheme.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    /// Symplectic Störmer–Verlet (kick–drift–kick); the default scheme.
    Verlet,
    /// Classical fourth-order Runge–Kutta; non-symplectic cross-check.
    Rk4,
}

impl std::fmt::Display for Scheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Scheme::Verlet => write!(f, "verlet"),
            Scheme::Rk4 => write!(f, "rk4"),
        }
    }
}

/// Parameters of a fixed-step integration run.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct IntegrationSpec {
    /// Step size; must be positive and finite.
    pub dt: f64,
    /// Number of steps to take.
    pub steps: u64,
    /// Time-stepping scheme.
    pub scheme: Scheme,
    /// Record every `sample_stride`-th step (step 0 and the final step are
    /// always recorded). Must be positive.
    pub sample_stride: u64,
    /// Abort with a diagnostic once the state's sup-norm exceeds this bound.
    pub blow_up_norm: f64,
}

impl IntegrationSpec {
    /// A spec with stride 1 and the default blow-up bound `1e8`.
    pub fn new(dt: f64, steps: u64, scheme: Scheme) -> Self {
        IntegrationSpec {
            dt,
            steps,
            scheme,
            sample_stride: 1,
            blow_up_norm: 1e8,
        }
    }

    /// Returns the spec with the given sampling stride.
    pub fn with_stride(mut self, stride: u64) -> Self {
        self.sample_stride = stride;
        self
    }
}

/// A sampled trajectory: times, states and total energies, index-aligned.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Trajectory {
    /// Sample times `t = step · dt`.
    pub times: Vec<f64>,
    /// Sampled chain states.
    pub states: Vec<ChainState>,
    /// Total energy at each sample.
    pub energies: Vec<f64>,
}

impl Trajectory {
    /// The last sampled state (trajectories always hold at least one sample).
    pub fn last_state(&self) -> &ChainState {
        self.states.last().expect("trajectory has samples")
    }
}

/// Integrates the chain for `spec.steps` steps of size `spec.dt`, sampling
/// the state every `spec.sample_stride` steps.
///
/// Fails if the spec is malformed, the state is malformed or non-finite, or
/// the trajectory's sup-norm exceeds `spec.blow_up_norm` (with a diagnostic
/// naming the step, time and norm).
pub fn integrate(state: &ChainState, w: &Potential, spec: &IntegrationSpec) -> Result<Trajectory> {
    if !(spec.dt > 0.0) || !spec.dt.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "step size must be positive and finite, got {}",
            spec.dt
        )));
    }
    if spec.sample_stride == 0 {
        return Err(Error::InvalidArgument("sampling stride must be positive".into()));
    }
    let n = state.len();
    if n < 2 {
        return Err(Error::InvalidState(format!(
            "dynamics needs at least 2 particles, got {n}"
        )));
    }
    if !state.is_finite() {
        return Err(Error::InvalidState("state contains non-finite entries".into()));
    }

    let mut current = state.clone();
    let mut traj = Trajectory {
        times: Vec::new(),
        states: Vec::new(),
        energies: Vec::new(),
    };
    let mut record = |step: u64, s: &ChainState| {
        traj.times.push(step as f64 * spec.dt);
        traj.states.push(s.clone());
        traj.energies.push(energy(s, w));
    };
    record(0, &current);

    let mut stepper = Stepper::new(n, w, spec.dt, spec.scheme, &current);
    for step in 1..=spec.steps {
        stepper.advance(&mut current);
        if !current.is_finite() || current.sup_norm() > spec.blow_up_norm {
            return Err(Error::Diverged(format!(
                "sup-norm {:.3e} exceeded bound {:.3e} at step {step} (t = {})",
                current.sup_norm(),
                spec.blow_up_norm,
                step as f64 * spec.dt
            )));
        }
        if step % spec.sample_stride == 0 || step == spec.steps {
            record(step, &current);
        }
    }
    Ok(traj)
}

/// Scratch buffers and per-scheme state for one integration run.
struct Stepper<'a> {
    w: &'a Potential,
    dt: f64,
    scheme: Scheme,
    spring: Vec<f64>,
    force: Vec<f64>,
    // Verlet caches the force at the current positions between steps.
    force_current: Vec<f64>,
    // RK4 stage buffers.
    qa: Vec<f64>,
    pa: Vec<f64>,
    kq: [Vec<f64>; 4],
    kp: [Vec<f64>; 4],
}

impl<'a> Stepper<'a> {
    fn new(n: usize, w: &'a Potential, dt: f64, scheme: Scheme, initial: &ChainState) -> Self {
        let mut s = Stepper {
            w,
            dt,
            scheme,
            spring: vec![0.0; n],
            force: vec![0.0; n],
            force_current: vec![0.0; n],
            qa: vec![0.0; n],
            pa: vec![0.0; n],
            kq: std::array::from_fn(|_| vec![0.0; n]),
            kp: std::array::from_fn(|_| vec![0.0; n]),
        };
        if scheme == Scheme::Verlet {
            forces(&initial.q, w, &mut s.spring, &mut s.force_current);
        }
        s
    }

    fn advance(&mut self, state: &mut ChainState) {
        match self.scheme {
            Scheme::Verlet => self.verlet(state),
            Scheme::Rk4 => self.rk4(state),
        }
    }

    fn verlet(&mut self, state: &mut ChainState) {
        let half = 0.5 * self.dt;
        for j in 0..state.len() {
            state.p[j] += half * self.force_current[j];
            state.q[j] += self.dt * state.p[j];
        }
        forces(&state.q, self.w, &mut self.spring, &mut self.force_current);
        for j in 0..state.len() {
            state.p[j] += half * self.force_current[j];
        }
    }

    fn rk4(&mut self, state: &mut ChainState) {
        let n = state.len();
        let dt = self.dt;
        for stage in 0..4 {
            let shift = match stage {
                0 => None,
                1 | 2 => Some(0.5 * dt),
                _ => Some(dt),
            };
            match shift {
                None => {
                    self.qa.copy_from_slice(&state.q);
                    self.pa.copy_from_slice(&state.p);
                }
                Some(c) => {
                    let prev = stage - 1;
                    for j in 0..n {
                        self.qa[j] = state.q[j] + c * self.kq[prev][j];
                        self.pa[j] = state.p[j] + c * self.kp[prev][j];
                    }
                }
            }
            forces(&self.qa, self.w, &mut self.spring, &mut self.force);
            self.kq[stage].copy_from_slice(&self.pa);
            self.kp[stage].copy_from_slice(&self.force);
        }
        let w = dt / 6.0;
        for j in 0..n {
            state.q[j] +=
                w * (self.kq[0][j] + 2.0 * self.kq[1][j] + 2.0 * self.kq[2][j] + self.kq[3][j]);
            state.p[j] +=
                w * (self.kp[0][j] + 2.0 * self.kp[1][j] + 2.0 * self.kp[2][j] + self.kp[3][j]);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_state_stays_zero() {
        let s = ChainState::rest(4);
        let w = Potential::polynomial(1.0, 0.0, 0.0).unwrap();
        let traj = integrate(&s, &w, &IntegrationSpec::new(1e-2, 100, Scheme::Verlet)).unwrap();
        assert_eq!(traj.states.len(), 101);
        assert!(traj.last_state().sup_norm() == 0.0);
        assert!(traj.energies.iter().all(|&e| e == 0.0));
    }

    #[test]
    fn stride_samples_first_and_last() {
        let s = ChainState::new(vec![0.1, -0.1], vec![0.0, 0.0]).unwrap();
        let w = Potential::harmonic();
        let spec = IntegrationSpec::new(1e-3, 103, Scheme::Verlet).with_stride(10);
        let traj = integrate(&s, &w, &spec).unwrap();
        // Steps 0, 10, …, 100, plus the final step 103.
        assert_eq!(traj.times.len(), 12);
        assert!((traj.times[0] - 0.0).abs() < 1e-15);
        assert!((traj.times.last().unwrap() - 0.103).abs() < 1e-15);
    }

    #[test]
    fn invalid_specs_are_rejected() {
        let s = ChainState::rest(4);
        let w = Potential::harmonic();
        assert!(integrate(&s, &w, &IntegrationSpec::new(0.0, 10, Scheme::Verlet)).is_err());
        assert!(integrate(&s, &w, &IntegrationSpec::new(-1.0, 10, Scheme::Rk4)).is_err());
        let bad = IntegrationSpec {
            sample_stride: 0,
            ..IntegrationSpec::new(1e-3, 10, Scheme::Verlet)
        };
        assert!(integrate(&s, &w, &bad).is_err());
    }

    #[test]
    fn unstable_step_size_reports_divergence() {
        // The zig-zag mode has frequency 2; dt = 10 is far beyond the
        // stability bound, so rounding growth hits the norm bound quickly.
        let n = 8;
        let q: Vec<f64> = (0..n).map(|j| if j % 2 == 0 { 1.0 } else { -1.0 }).collect();
        let s = ChainState::new(q, vec![0.0; n]).unwrap();
        let err = integrate(
            &s,
            &Potential::harmonic(),
            &IntegrationSpec::new(10.0, 1000, Scheme::Verlet),
        )
        .unwrap_err();
        match err {
            Error::Diverged(msg) => assert!(msg.contains("sup-norm")),
            other => panic!("expected divergence, got {other:?}"),
        }
    }
}
