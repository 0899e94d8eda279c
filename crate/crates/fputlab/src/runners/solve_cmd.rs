//! Normal-form pipeline runners: the full two-stage solve for one chain, and
//! the obstruction scan across a family of potentials.

use crate::report::Report;
use anyhow::Result;
use diffpoly::{parse_rational, rational_string, Rat};
use normalform::report::{solve_report, to_json};
use normalform::solve::obstruction;
use normalform::{fput_model, solve, toda_model, Model};
use serde_json::json;
use std::time::Instant;

fn int(n: i64) -> Rat {
    parse_rational(&n.to_string()).expect("integer literal")
}

/// Independent closed form of the obstruction,
/// `r = -(7560/alpha^3) * (14 alpha^3 - 27 alpha beta + 12 gamma)`,
/// used to cross-check the value assembled by the kernel pairing.
pub fn closed_form_obstruction(alpha: &Rat, beta: &Rat, gamma: &Rat) -> Rat {
    let alpha3 = alpha * alpha * alpha;
    let discriminant = int(14) * &alpha3 - int(27) * alpha * beta + int(12) * gamma;
    -(int(7560) / alpha3) * discriminant
}

fn key_value_table(sol: &normalform::solve::Solution) -> Vec<Vec<String>> {
    let mut rows = vec![vec!["quantity".to_string(), "value".to_string()]];
    let mut push = |name: &str, value: &Rat| {
        rows.push(vec![name.to_string(), rational_string(value)]);
    };
    push("r", &sol.r);
    push("rho", &sol.second.rho);
    for (i, v) in sol.first.a.iter().enumerate() {
        push(&format!("a{}", i + 1), v);
    }
    for (i, v) in sol.first.a_tilde.iter().enumerate() {
        push(&format!("a_tilde{}", i + 4), v);
    }
    for (i, v) in sol.second.lambda.iter().enumerate() {
        push(&format!("lambda{}", i + 1), v);
    }
    for (i, v) in sol.second.b.iter().enumerate() {
        push(&format!("b{}", i + 1), v);
    }
    rows
}

/// Runs the complete normal-form pipeline for one chain and reports the
/// solved generators, dressing coefficients, and obstruction.
pub fn run_solve(
    alpha: &Rat,
    beta: &Rat,
    gamma: &Rat,
    toda: bool,
    lambda4: &Rat,
) -> Result<Report> {
    let started = Instant::now();
    let model = if toda {
        toda_model(alpha)?
    } else {
        fput_model(alpha, beta, gamma)?
    };
    let inputs = json!({
        "alpha": rational_string(&model.alpha),
        "beta": rational_string(&model.beta),
        "gamma": rational_string(&model.gamma),
        "toda": toda,
        "lambda4": rational_string(lambda4),
    });
    let mut rep = Report::new("solve", inputs);
    match solve(&model, lambda4) {
        Err(e) => {
            rep.check("normal-form-pipeline", false, format!("{e}"));
            rep.results = json!({});
        }
        Ok(sol) => {
            rep.check(
                "normal-form-pipeline",
                true,
                "generator equations solved; both conjugation identities hold exactly",
            );
            let closed = closed_form_obstruction(&model.alpha, &model.beta, &model.gamma);
            rep.check(
                "obstruction-closed-form",
                sol.r == closed,
                format!(
                    "pipeline r = {}, closed form r = {}",
                    rational_string(&sol.r),
                    rational_string(&closed)
                ),
            );
            if toda {
                rep.check(
                    "integrable-line",
                    sol.r == int(0) && sol.second.rho == int(0),
                    format!(
                        "r = {}, rho = {}",
                        rational_string(&sol.r),
                        rational_string(&sol.second.rho)
                    ),
                );
            }
            let solved = solve_report(&sol)?;
            rep.results = serde_json::from_str(&to_json(&solved)?)?;
            rep.table = key_value_table(&sol);
        }
    }
    rep.time("solve", started);
    Ok(rep)
}

/// Obstruction values across a rational grid of quartic/quintic couplings,
/// along the zero-level curve `gamma0(beta) = (27 alpha beta - 14 alpha^3)/12`,
/// and at the exponential-potential point.
pub fn run_toda_scan(alpha: &Rat) -> Result<Report> {
    let started = Instant::now();
    let betas: Vec<Rat> = ["-1", "-1/2", "0", "1/2", "1", "3/2"]
        .iter()
        .map(|s| parse_rational(s).expect("grid literal"))
        .collect();
    let gammas: Vec<Rat> = ["-1", "-1/2", "0", "1/2", "1"]
        .iter()
        .map(|s| parse_rational(s).expect("grid literal"))
        .collect();
    let alpha3 = alpha * alpha * alpha;

    let mut rep = Report::new("toda-scan", json!({ "alpha": rational_string(alpha) }));
    let mut grid_rows = Vec::new();
    let mut table = vec![vec![
        "beta".to_string(),
        "gamma".to_string(),
        "discriminant".to_string(),
        "r".to_string(),
    ]];
    let mut closed_form_ok = true;
    let mut off_curve_ok = true;
    let scan_point = |beta: &Rat, gamma: &Rat| -> Result<(Rat, Rat)> {
        let model: Model = fput_model(alpha, beta, gamma)?;
        let r = obstruction(&model)?;
        let discriminant = int(14) * &alpha3 - int(27) * alpha * beta + int(12) * gamma;
        Ok((r, discriminant))
    };
    for beta in &betas {
        for gamma in &gammas {
            let (r, discriminant) = scan_point(beta, gamma)?;
            closed_form_ok &= r == closed_form_obstruction(alpha, beta, gamma);
            if discriminant != int(0) {
                off_curve_ok &= r != int(0);
            }
            grid_rows.push(json!({
                "beta": rational_string(beta),
                "gamma": rational_string(gamma),
                "discriminant": rational_string(&discriminant),
                "r": rational_string(&r),
            }));
            table.push(vec![
                rational_string(beta),
                rational_string(gamma),
                rational_string(&discriminant),
                rational_string(&r),
            ]);
        }
    }
    rep.check(
        "closed-form-agreement",
        closed_form_ok,
        format!(
            "kernel pairing matches the closed form at all {} grid points",
            grid_rows.len()
        ),
    );
    rep.check(
        "off-curve-obstructed",
        off_curve_ok,
        "r is nonzero wherever the discriminant is nonzero",
    );

    let mut curve_rows = Vec::new();
    let mut on_curve_ok = true;
    for beta in &betas {
        let gamma0 = (int(27) * alpha * beta - int(14) * &alpha3) / int(12);
        let (r, _) = scan_point(beta, &gamma0)?;
        on_curve_ok &= r == int(0);
        curve_rows.push(json!({
            "beta": rational_string(beta),
            "gamma0": rational_string(&gamma0),
            "r": rational_string(&r),
        }));
    }
    rep.check(
        "zero-curve-vanishes",
        on_curve_ok,
        "r = 0 along gamma0(beta) = (27 alpha beta - 14 alpha^3)/12",
    );

    let toda = toda_model(alpha)?;
    let toda_solution = solve(&toda, &int(0))?;
    rep.check(
        "exponential-point-integrable",
        toda_solution.r == int(0) && toda_solution.second.rho == int(0),
        format!(
            "at beta = {}, gamma = {}: r = {}, rho = {}",
            rational_string(&toda.beta),
            rational_string(&toda.gamma),
            rational_string(&toda_solution.r),
            rational_string(&toda_solution.second.rho)
        ),
    );

    rep.results = json!({
        "alpha": rational_string(alpha),
        "grid": grid_rows,
        "zero_curve": curve_rows,
        "exponential_point": {
            "beta": rational_string(&toda.beta),
            "gamma": rational_string(&toda.gamma),
            "r": rational_string(&toda_solution.r),
            "rho": rational_string(&toda_solution.second.rho),
        },
    });
    rep.table = table;
    rep.time("scan", started);
    Ok(rep)
}
