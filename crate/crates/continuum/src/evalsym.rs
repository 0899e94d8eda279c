//! Grid evaluation of symbolic differential polynomials.
//!
//! Every `diffpoly` expression whose parameters have been substituted can be
//! evaluated on a grid: field derivatives become spectral derivatives,
//! averages become spectral quadrature, and primitives become the zero-mean
//! spectral antiderivative. This is the bridge that lets the symbolic and
//! hand-coded numeric forms of each vector field check one another.

use crate::grid::GridFunction;
use crate::{Error, Result};
use diffpoly::{rational_to_f64, DiffPoly, HSeries, Monomial};

fn check_params(mono: &Monomial) -> Result<()> {
    if mono.param_powers().is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(
            "symbolic expression still contains free parameters; substitute them first".into(),
        ))
    }
}

fn derivative(
    base: &GridFunction,
    order: u32,
    cache: &mut std::collections::HashMap<(bool, u32), GridFunction>,
    is_v: bool,
) -> GridFunction {
    cache
        .entry((is_v, order))
        .or_insert_with(|| base.deriv(order))
        .clone()
}

/// Evaluates a single-field differential polynomial at `u`.
pub fn evaluate(poly: &DiffPoly, u: &GridFunction) -> Result<GridFunction> {
    evaluate_uv(poly, u, None)
}

/// Evaluates a differential polynomial at the pair `(u, v)`; expressions
/// mentioning the second field require `v`.
pub fn evaluate_uv(
    poly: &DiffPoly,
    u: &GridFunction,
    v: Option<&GridFunction>,
) -> Result<GridFunction> {
    let n = u.len();
    let mut cache = std::collections::HashMap::new();
    let mut acc = GridFunction::zeros(n)?;
    for mono in poly.iter_terms() {
        check_params(&mono)?;
        let mut coeff = rational_to_f64(mono.coeff());
        let mut term: Option<GridFunction> = None;
        let push = |term: &mut Option<GridFunction>, factor: GridFunction| {
            *term = Some(match term.take() {
                Some(t) => t.mul(&factor),
                None => factor,
            });
        };
        for &k in mono.u_orders() {
            push(&mut term, derivative(u, k, &mut cache, false));
        }
        for &k in mono.v_orders() {
            let vg = v.ok_or_else(|| {
                Error::InvalidArgument("expression mentions v but no second field given".into())
            })?;
            push(&mut term, derivative(vg, k, &mut cache, true));
        }
        for avg in mono.avg_factors() {
            let mut body: Option<GridFunction> = None;
            for &k in avg.u_orders() {
                push(&mut body, derivative(u, k, &mut cache, false));
            }
            for &k in avg.v_orders() {
                let vg = v.ok_or_else(|| {
                    Error::InvalidArgument(
                        "expression mentions v but no second field given".into(),
                    )
                })?;
                push(&mut body, derivative(vg, k, &mut cache, true));
            }
            coeff *= body.map_or(1.0, |b| b.mean());
        }
        for prim in mono.prim_factors() {
            let inner = evaluate_uv(prim.integrand(), u, v)?;
            push(&mut term, inner.antiderivative());
        }
        let contribution = match term {
            Some(t) => t.scale(coeff),
            None => GridFunction::constant(n, coeff)?,
        };
        acc = acc.add(&contribution);
    }
    Ok(acc)
}

/// Evaluates a truncated even-power series `Σ h^{2i}·part_i` at `(u, v)`.
pub fn evaluate_series(
    series: &HSeries,
    u: &GridFunction,
    v: Option<&GridFunction>,
    h: f64,
) -> Result<GridFunction> {
    let mut acc = GridFunction::zeros(u.len())?;
    let mut power = 1.0;
    for i in 0..4 {
        acc = acc.add(&evaluate_uv(series.part(i), u, v)?.scale(power));
        power *= h * h;
    }
    Ok(acc)
}

enum FactorValue {
    Grid(GridFunction, GridFunction),
    Scalar(f64, f64),
}

/// Evaluates the directional (Gateaux) derivative of a single-field
/// differential polynomial at `u` in the direction `w`, by the product rule
/// over the factors of each monomial. Averages differentiate to averages and
/// primitives to primitives of the differentiated integrand.
pub fn directional_derivative(
    poly: &DiffPoly,
    u: &GridFunction,
    w: &GridFunction,
) -> Result<GridFunction> {
    let n = u.len();
    let mut cache = std::collections::HashMap::new();
    let mut wcache = std::collections::HashMap::new();
    let mut acc = GridFunction::zeros(n)?;
    for mono in poly.iter_terms() {
        check_params(&mono)?;
        if !mono.v_orders().is_empty() {
            return Err(Error::InvalidArgument(
                "directional derivative is defined for single-field expressions".into(),
            ));
        }
        let mut factors: Vec<FactorValue> = Vec::new();
        for &k in mono.u_orders() {
            factors.push(FactorValue::Grid(
                derivative(u, k, &mut cache, false),
                derivative(w, k, &mut wcache, false),
            ));
        }
        for avg in mono.avg_factors() {
            if !avg.v_orders().is_empty() {
                return Err(Error::InvalidArgument(
                    "directional derivative is defined for single-field expressions".into(),
                ));
            }
            let orders = avg.u_orders();
            let value_body = orders
                .iter()
                .map(|&k| derivative(u, k, &mut cache, false))
                .reduce(|a, b| a.mul(&b));
            let value = value_body.as_ref().map_or(1.0, |b| b.mean());
            let mut deriv_mean = 0.0;
            for i in 0..orders.len() {
                let mut body: Option<GridFunction> = None;
                for (j, &k) in orders.iter().enumerate() {
                    let factor = if i == j {
                        derivative(w, k, &mut wcache, false)
                    } else {
                        derivative(u, k, &mut cache, false)
                    };
                    body = Some(match body.take() {
                        Some(t) => t.mul(&factor),
                        None => factor,
                    });
                }
                deriv_mean += body.map_or(0.0, |b| b.mean());
            }
            factors.push(FactorValue::Scalar(value, deriv_mean));
        }
        for prim in mono.prim_factors() {
            let inner = evaluate_uv(prim.integrand(), u, None)?;
            let inner_dir = directional_derivative(prim.integrand(), u, w)?;
            factors.push(FactorValue::Grid(
                inner.antiderivative(),
                inner_dir.antiderivative(),
            ));
        }
        let coeff = rational_to_f64(mono.coeff());
        // Product rule: differentiate one factor at a time.
        for i in 0..factors.len() {
            let mut scalar = coeff;
            let mut grid: Option<GridFunction> = None;
            for (j, factor) in factors.iter().enumerate() {
                match factor {
                    FactorValue::Grid(value, direction) => {
                        let pick = if i == j { direction } else { value };
                        grid = Some(match grid.take() {
                            Some(t) => t.mul(pick),
                            None => pick.clone(),
                        });
                    }
                    FactorValue::Scalar(value, direction) => {
                        scalar *= if i == j { *direction } else { *value };
                    }
                }
            }
            let contribution = match grid {
                Some(t) => t.scale(scalar),
                None => GridFunction::constant(n, scalar)?,
            };
            acc = acc.add(&contribution);
        }
    }
    Ok(acc)
}
