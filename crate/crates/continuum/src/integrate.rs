//! Time integration of the continuum flows.
//!
//! All spectral flows share one integrator: an integrating-factor
//! Runge–Kutta scheme (classical RK4 applied in the frame of the linear
//! group), which removes the stiff dispersive part from the stability
//! constraint.  The linear symbol is chosen per field; the nonlinear
//! remainder is whatever the right-hand side leaves after subtracting it.
//! The displacement-form system is non-stiff in rescaled time and uses plain
//! RK4.

use rustfft::num_complex::Complex;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::flows::{rhs_displacement, rhs_exact, rhs_expanded};
use crate::grid::GridFunction;
use crate::kdv::{kdv_field, kdv_integrals};
use crate::normalized::{drift_rate, rhs_normalized, NormalizedCoefficients};
use crate::potential::Potential;
use crate::riemann::RiemannState;
use crate::slaving::rhs_reduced;
use crate::{Error, Result};

/// Abort threshold for the sup norm of any evolved field.
const BLOWUP_NORM: f64 = 1e8;

/// Which right-hand side to integrate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FieldKind {
    /// Two-wave system with the exact half-shift advection.
    Exact,
    /// Two-wave system expanded in even powers of the spacing up to `order`.
    Expanded { order: u32 },
    /// One-field reduced flow truncated at `order`.
    Reduced { order: u32 },
    /// Bare hierarchy field `K_which` (`which` odd, 1..=7).
    Kdv { which: u32 },
    /// Dressed normalized flow with the given scalar coefficients.
    Normalized(NormalizedCoefficients),
}

impl FieldKind {
    fn is_two_field(&self) -> bool {
        matches!(self, FieldKind::Exact | FieldKind::Expanded { .. })
    }

    fn needs_potential(&self) -> bool {
        matches!(
            self,
            FieldKind::Exact | FieldKind::Expanded { .. } | FieldKind::Reduced { .. }
        )
    }
}

/// A complete description of one evolution experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlowSpec {
    /// Right-hand side to integrate.
    pub field: FieldKind,
    /// Long-wave spacing parameter (ignored by bare hierarchy fields).
    pub h: f64,
    /// Interaction law; required by the exact, expanded, and reduced fields.
    pub potential: Option<Potential>,
    /// Requested time step (shrunk slightly so the horizon is hit exactly).
    pub dt: f64,
    /// Apply the 2/3 rule to products inside the right-hand side.
    pub dealias: bool,
}

/// Samples recorded along one run. The rows of the vectors are aligned:
/// entry `i` belongs to `times[i]`. `mean_v` is empty for one-field flows and
/// `drift` is identically zero except for the normalized flow, where it holds
/// the accumulated mean shift `∫ -h⁶ c₇λ₇ ⟨U_x³⟩ dt`.
#[derive(Debug, Clone, Serialize)]
pub struct Trajectory {
    pub times: Vec<f64>,
    /// Hierarchy integrals `[⟨U⟩, ⟨U²⟩, ⟨U_x²⟩ − 2⟨U³⟩]` of the first field.
    pub integrals: Vec<[f64; 3]>,
    pub mean_u: Vec<f64>,
    pub mean_v: Vec<f64>,
    pub drift: Vec<f64>,
    pub steps: u64,
    #[serde(skip)]
    pub final_u: GridFunction,
    #[serde(skip)]
    pub final_v: Option<GridFunction>,
}

/// Fourier symbol of the linear part extracted from each right-hand side.
/// All symbols are purely imaginary, so the integrating factor is unitary.
enum LinearSymbol {
    /// `2i sin(πkh)/h` — the exact half-shift difference.
    HalfShift { h: f64 },
    /// The truncation of the half-shift symbol kept at the given order.
    Truncated { h: f64, order: u32 },
    /// `(2πik)^p` — leading derivative of a bare hierarchy field.
    MonomialPower { p: u32 },
    /// Superposition of all four hierarchy symbols with bare weights.
    Hierarchy { h: f64, c: [f64; 4] },
}

impl LinearSymbol {
    fn for_field(field: &FieldKind, h: f64) -> Self {
        match field {
            FieldKind::Exact => LinearSymbol::HalfShift { h },
            FieldKind::Expanded { order } | FieldKind::Reduced { order } => {
                LinearSymbol::Truncated { h, order: *order }
            }
            FieldKind::Kdv { which } => LinearSymbol::MonomialPower { p: *which },
            FieldKind::Normalized(cc) => LinearSymbol::Hierarchy { h, c: cc.c },
        }
    }

    fn eval(&self, k: f64) -> Complex<f64> {
        let ik = Complex::new(0.0, 2.0 * PI * k);
        match *self {
            LinearSymbol::HalfShift { h } => {
                Complex::new(0.0, 2.0 * (PI * k * h).sin() / h)
            }
            LinearSymbol::Truncated { h, order } => {
                let h2 = h * h;
                let mut s = ik;
                if order >= 2 {
                    s += ik.powu(3) * (h2 / 24.0);
                }
                if order >= 4 {
                    s += ik.powu(5) * (h2 * h2 / 1920.0);
                }
                if order >= 6 {
                    s += ik.powu(7) * (h2 * h2 * h2 / 322_560.0);
                }
                s
            }
            LinearSymbol::MonomialPower { p } => ik.powu(p),
            LinearSymbol::Hierarchy { h, c } => {
                let h2 = h * h;
                ik * c[0]
                    + ik.powu(3) * (c[1] * h2)
                    + ik.powu(5) * (c[2] * h2 * h2)
                    + ik.powu(7) * (c[3] * h2 * h2 * h2)
            }
        }
    }
}

fn axpy(a: &[GridFunction], c: f64, b: &[GridFunction]) -> Vec<GridFunction> {
    a.iter().zip(b).map(|(x, y)| x.add(&y.scale(c))).collect()
}

/// One integrating-factor RK4 step. `signs[i] * symbol` is the linear symbol
/// of component `i`; `rhs` is the full right-hand side. When `observe` is
/// given, the returned scalar is the RK4 quadrature of `observe` over the
/// step (the step increment of `d/dt a = observe(first component)`).
fn ifrk4_step(
    state: &[GridFunction],
    dt: f64,
    signs: &[f64],
    symbol: &LinearSymbol,
    rhs: &mut dyn FnMut(&[GridFunction]) -> Result<Vec<GridFunction>>,
    observe: Option<&dyn Fn(&GridFunction) -> f64>,
) -> Result<(Vec<GridFunction>, f64)> {
    let mut nonlin = |s: &[GridFunction]| -> Result<Vec<GridFunction>> {
        let full = rhs(s)?;
        Ok(full
            .iter()
            .zip(s.iter().zip(signs))
            .map(|(f, (g, &sg))| f.sub(&g.apply_multiplier(|k| symbol.eval(k) * sg)))
            .collect())
    };
    let half_group = |s: &[GridFunction]| -> Vec<GridFunction> {
        s.iter()
            .zip(signs)
            .map(|(g, &sg)| g.apply_multiplier(|k| (symbol.eval(k) * (sg * dt / 2.0)).exp()))
            .collect()
    };
    let phi = |s: &[GridFunction]| observe.map_or(0.0, |f| f(&s[0]));

    let half = dt / 2.0;
    let y1 = state;
    let k1 = nonlin(y1)?;
    let eu0 = half_group(y1);
    let ek1 = half_group(&k1);
    let y2 = axpy(&eu0, half, &ek1);
    let k2 = nonlin(&y2)?;
    let y3 = axpy(&eu0, half, &k2);
    let k3 = nonlin(&y3)?;
    let e2u0 = half_group(&eu0);
    let ek3 = half_group(&k3);
    let y4 = axpy(&e2u0, dt, &ek3);
    let k4 = nonlin(&y4)?;

    let e2k1 = half_group(&ek1);
    let ek2 = half_group(&k2);
    let mut next = Vec::with_capacity(state.len());
    for i in 0..state.len() {
        let incr = e2k1[i]
            .add(&ek2[i].scale(2.0))
            .add(&ek3[i].scale(2.0))
            .add(&k4[i]);
        next.push(e2u0[i].add(&incr.scale(dt / 6.0)));
    }
    let quad = dt / 6.0 * (phi(y1) + 2.0 * phi(&y2) + 2.0 * phi(&y3) + phi(&y4));
    Ok((next, quad))
}

fn validate(spec: &FlowSpec, t_final: f64, stride: usize) -> Result<()> {
    if !(spec.dt.is_finite() && spec.dt > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "time step must be positive and finite, got {}",
            spec.dt
        )));
    }
    if !(t_final.is_finite() && t_final >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "final time must be non-negative and finite, got {t_final}"
        )));
    }
    if stride == 0 {
        return Err(Error::InvalidArgument(
            "sampling stride must be at least 1".into(),
        ));
    }
    if !spec.h.is_finite() || spec.h < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "spacing parameter must be finite and non-negative, got {}",
            spec.h
        )));
    }
    if matches!(spec.field, FieldKind::Exact) && spec.h == 0.0 {
        return Err(Error::InvalidArgument(
            "the exact half-shift field needs a positive spacing".into(),
        ));
    }
    if spec.field.needs_potential() && spec.potential.is_none() {
        return Err(Error::InvalidArgument(
            "this field needs an interaction potential".into(),
        ));
    }
    Ok(())
}

/// Integrates one of the continuum flows from `u0` (and `v0` for the
/// two-field systems) up to `t_final`, recording samples every `stride`
/// steps (plus the initial and final states). Aborts with
/// [`Error::Diverged`] when a field leaves the trust region.
pub fn integrate_flow(
    u0: &GridFunction,
    v0: Option<&GridFunction>,
    spec: &FlowSpec,
    t_final: f64,
    stride: usize,
) -> Result<Trajectory> {
    validate(spec, t_final, stride)?;
    let two_field = spec.field.is_two_field();
    let mut state = vec![u0.clone()];
    match (two_field, v0) {
        (true, Some(v)) => {
            if v.len() != u0.len() {
                return Err(Error::InvalidArgument(
                    "both fields must live on the same grid".into(),
                ));
            }
            state.push(v.clone());
        }
        (true, None) => {
            return Err(Error::InvalidArgument(
                "this two-field flow needs an initial counter-propagating wave".into(),
            ));
        }
        (false, Some(_)) => {
            return Err(Error::InvalidArgument(
                "one-field flows take no second initial field".into(),
            ));
        }
        (false, None) => {}
    }
    let signs: &[f64] = if two_field { &[1.0, -1.0] } else { &[1.0] };
    let symbol = LinearSymbol::for_field(&spec.field, spec.h);

    let steps = if t_final == 0.0 {
        0
    } else {
        (t_final / spec.dt).ceil().max(1.0) as u64
    };
    let dt = if steps == 0 {
        0.0
    } else {
        t_final / steps as f64
    };

    let pot = spec.potential.as_ref();
    let mut rhs = |s: &[GridFunction]| -> Result<Vec<GridFunction>> {
        match &spec.field {
            FieldKind::Exact | FieldKind::Expanded { .. } => {
                let riemann = RiemannState {
                    u: s[0].clone(),
                    v: s[1].clone(),
                    h: spec.h,
                    alpha: pot.map_or(1.0, |p| p.alpha()),
                    u_mean: 0.0,
                };
                let p = pot.expect("validated above");
                let (ut, vt) = match spec.field {
                    FieldKind::Exact => rhs_exact(&riemann, p, spec.dealias)?,
                    FieldKind::Expanded { order } => {
                        rhs_expanded(&riemann, p, order, spec.dealias)?
                    }
                    _ => unreachable!(),
                };
                Ok(vec![ut, vt])
            }
            FieldKind::Reduced { order } => Ok(vec![rhs_reduced(
                &s[0],
                spec.h,
                pot.expect("validated above"),
                *order,
                spec.dealias,
            )?]),
            FieldKind::Kdv { which } => Ok(vec![kdv_field(&s[0], *which, spec.dealias)?]),
            FieldKind::Normalized(cc) => {
                Ok(vec![rhs_normalized(&s[0], spec.h, cc, spec.dealias)?])
            }
        }
    };
    let observer: Option<Box<dyn Fn(&GridFunction) -> f64>> = match &spec.field {
        FieldKind::Normalized(cc) => {
            let cc = cc.clone();
            let h = spec.h;
            Some(Box::new(move |u: &GridFunction| drift_rate(u, h, &cc)))
        }
        _ => None,
    };

    let mut traj = Trajectory {
        times: Vec::new(),
        integrals: Vec::new(),
        mean_u: Vec::new(),
        mean_v: Vec::new(),
        drift: Vec::new(),
        steps,
        final_u: u0.clone(),
        final_v: None,
    };
    let mut drift_acc = 0.0;
    let record = |traj: &mut Trajectory, t: f64, s: &[GridFunction], d: f64| {
        traj.times.push(t);
        traj.integrals.push(kdv_integrals(&s[0]));
        traj.mean_u.push(s[0].mean());
        if s.len() > 1 {
            traj.mean_v.push(s[1].mean());
        }
        traj.drift.push(d);
    };
    record(&mut traj, 0.0, &state, drift_acc);

    for step in 0..steps {
        let (next, dq) = ifrk4_step(
            &state,
            dt,
            signs,
            &symbol,
            &mut rhs,
            observer.as_ref().map(|b| b.as_ref()),
        )?;
        let time = (step + 1) as f64 * dt;
        let norm = next.iter().fold(0.0f64, |m, g| m.max(g.sup_norm()));
        if !next.iter().all(|g| g.is_finite()) || norm > BLOWUP_NORM {
            return Err(Error::Diverged {
                step: step + 1,
                time,
                norm,
            });
        }
        state = next;
        drift_acc += dq;
        if (step + 1) % stride as u64 == 0 || step + 1 == steps {
            record(&mut traj, time, &state, drift_acc);
        }
    }

    let mut fields = state.into_iter();
    traj.final_u = fields.next().expect("state holds at least one field");
    traj.final_v = fields.next();
    Ok(traj)
}

/// Integrates the displacement-form system `u_t = v`,
/// `v_t = h⁻² D⁻[W′(h² D⁺u)]` with plain RK4 (the system is non-stiff in the
/// rescaled time unit) and returns the final pair.
pub fn integrate_displacement(
    u0: &GridFunction,
    v0: &GridFunction,
    h: f64,
    pot: &Potential,
    dt: f64,
    steps: u64,
) -> Result<(GridFunction, GridFunction)> {
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "time step must be positive and finite, got {dt}"
        )));
    }
    if v0.len() != u0.len() {
        return Err(Error::InvalidArgument(
            "displacement and velocity must live on the same grid".into(),
        ));
    }
    let mut u = u0.clone();
    let mut v = v0.clone();
    for step in 0..steps {
        let (k1u, k1v) = rhs_displacement(&u, &v, h, pot)?;
        let (k2u, k2v) = rhs_displacement(
            &u.add(&k1u.scale(dt / 2.0)),
            &v.add(&k1v.scale(dt / 2.0)),
            h,
            pot,
        )?;
        let (k3u, k3v) = rhs_displacement(
            &u.add(&k2u.scale(dt / 2.0)),
            &v.add(&k2v.scale(dt / 2.0)),
            h,
            pot,
        )?;
        let (k4u, k4v) =
            rhs_displacement(&u.add(&k3u.scale(dt)), &v.add(&k3v.scale(dt)), h, pot)?;
        u = u.add(
            &k1u.add(&k2u.scale(2.0))
                .add(&k3u.scale(2.0))
                .add(&k4u)
                .scale(dt / 6.0),
        );
        v = v.add(
            &k1v.add(&k2v.scale(2.0))
                .add(&k3v.scale(2.0))
                .add(&k4v)
                .scale(dt / 6.0),
        );
        let norm = u.sup_norm().max(v.sup_norm());
        if !u.is_finite() || !v.is_finite() || norm > BLOWUP_NORM {
            return Err(Error::Diverged {
                step: step + 1,
                time: (step + 1) as f64 * dt,
                norm,
            });
        }
    }
    Ok((u, v))
}
