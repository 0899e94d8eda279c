//! Chain state, equations of motion, and total energy.

use serde::{Deserialize, Serialize};

use crate::{Error, Potential, Result};

/// Positions and momenta of a periodic chain; index arithmetic is mod `n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainState {
    /// Particle displacements `q_0 … q_{n−1}`.
    pub q: Vec<f64>,
    /// Particle momenta `p_0 … p_{n−1}`.
    pub p: Vec<f64>,
}

impl ChainState {
    /// Builds a state from matching position and momentum vectors.
    pub fn new(q: Vec<f64>, p: Vec<f64>) -> Result<Self> {
        if q.len() != p.len() {
            return Err(Error::InvalidState(format!(
                "positions ({}) and momenta ({}) differ in length",
                q.len(),
                p.len()
            )));
        }
        if q.is_empty() {
            return Err(Error::InvalidState("chain must have at least one particle".into()));
        }
        Ok(ChainState { q, p })
    }

    /// The chain at rest: all positions and momenta zero.
    pub fn rest(n: usize) -> Self {
        ChainState {
            q: vec![0.0; n],
            p: vec![0.0; n],
        }
    }

    /// Number of particles.
    pub fn len(&self) -> usize {
        self.q.len()
    }

    /// Whether the chain is empty (never true for constructed states).
    pub fn is_empty(&self) -> bool {
        self.q.is_empty()
    }

    /// Whether every position and momentum is finite.
    pub fn is_finite(&self) -> bool {
        self.q.iter().chain(self.p.iter()).all(|x| x.is_finite())
    }

    /// Largest absolute position or momentum.
    pub fn sup_norm(&self) -> f64 {
        self.q
            .iter()
            .chain(self.p.iter())
            .fold(0.0_f64, |m, x| m.max(x.abs()))
    }
}

/// Writes the spring forces `W'(q_{j+1} − q_j)` into `spring` and the net
/// force on each particle into `force`.
pub(crate) fn forces(q: &[f64], w: &Potential, spring: &mut [f64], force: &mut [f64]) {
    let n = q.len();
    for j in 0..n {
        let next = if j + 1 == n { 0 } else { j + 1 };
        spring[j] = w.derivative(q[next] - q[j]);
    }
    for j in 0..n {
        let prev = if j == 0 { n - 1 } else { j - 1 };
        force[j] = spring[j] - spring[prev];
    }
}

/// Time derivative `(q̇, ṗ)` of a chain state:
/// `q̇_j = p_j`, `ṗ_j = W'(q_{j+1} − q_j) − W'(q_j − q_{j−1})`.
///
/// Requires at least two particles and a finite state.
pub fn rhs(state: &ChainState, w: &Potential) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = state.len();
    if n < 2 {
        return Err(Error::InvalidState(format!(
            "dynamics needs at least 2 particles, got {n}"
        )));
    }
    if !state.is_finite() {
        return Err(Error::InvalidState("state contains non-finite entries".into()));
    }
    let mut spring = vec![0.0; n];
    let mut force = vec![0.0; n];
    forces(&state.q, w, &mut spring, &mut force);
    Ok((state.p.clone(), force))
}

/// Total energy `Σ_j p_j²/2 + W(q_{j+1} − q_j)`.
pub fn energy(state: &ChainState, w: &Potential) -> f64 {
    let n = state.len();
    let mut e = 0.0;
    for j in 0..n {
        let next = if j + 1 == n { 0 } else { j + 1 };
        e += 0.5 * state.p[j] * state.p[j] + w.value(state.q[next] - state.q[j]);
    }
    e
}
