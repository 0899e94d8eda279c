//! Deterministic, serializable snapshot of a complete normal-form solve.
//!
//! Every rational is rendered as an exact `p` / `p/q` string and every
//! polynomial in its canonical text form, so two runs with the same input
//! produce byte-identical JSON.  No timestamps, no floats.

use diffpoly::rational_string;
use serde::{Deserialize, Serialize};

use crate::conserved::conserved_factors;
use crate::model::ModelReport;
use crate::solve::Solution;
use crate::Result;

/// First conjugation data.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FirstOrderReport {
    /// Quadratic generator coefficients `a1..a4`.
    pub a: Vec<String>,
    /// Residual dressing coefficients `[Ã4, Ã5, Ã6]`.
    pub a_tilde: Vec<String>,
    /// Canonical text of the generator `G2`.
    pub g2: String,
    /// Canonical text of the fifth-order normal form `N5`.
    pub n5: String,
}

/// Cascade and second conjugation data.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SecondOrderReport {
    /// Cascade slot coefficients of `R6 = [G2, F5 + N5]/2` in units of
    /// `c5^2/c3`.
    pub tilde_b: Vec<String>,
    /// Cubic generator coefficients `b1..b13`.
    pub b: Vec<String>,
    /// Dressing coefficients `lambda1..lambda7` (`lambda4` is the gauge
    /// input).
    pub lambda: Vec<String>,
    /// Canonical text of the generator `G4`.
    pub g4: String,
    /// Canonical text of the seventh-order normal form `N7`.
    pub n7: String,
}

/// Integrability data.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ObstructionReport {
    /// The obstruction `r`; zero exactly on integrable-tangent potentials.
    pub r: String,
    /// Coefficient `rho = -r/9` of the unremovable `u^3 u_x` term.
    pub rho: String,
    /// Whether `r = 0`.
    pub integrable: bool,
}

/// Dressed prefactors of the integrable flows.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConservedReport {
    /// Dressing of the transport flow.
    pub c1: String,
    /// Dressing of the cubic flow.
    pub c3: String,
    /// Dressing of the quintic flow.
    pub c5: String,
    /// Dressing of the septic flow.
    pub c7: String,
    /// Coefficient of the constant drift `<u_x^3>` removed by a
    /// time-dependent shift.
    pub drift_coefficient: String,
}

/// Complete solve report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolveReport {
    /// Input model (potential coefficients and slot data).
    pub model: ModelReport,
    /// Gauge parameter used at second order.
    pub lambda4: String,
    /// First conjugation.
    pub first_order: FirstOrderReport,
    /// Second conjugation.
    pub second_order: SecondOrderReport,
    /// Obstruction data.
    pub obstruction: ObstructionReport,
    /// Dressed prefactors.
    pub conserved: ConservedReport,
    /// Known caveats about the slot data and closed forms used.
    pub notes: Vec<String>,
}

/// Builds the report for a completed solve.
pub fn solve_report(sol: &Solution) -> Result<SolveReport> {
    use num_traits::Zero;
    let factors = conserved_factors(sol)?;
    Ok(SolveReport {
        model: ModelReport::from(&sol.model),
        lambda4: rational_string(&sol.lambda4),
        first_order: FirstOrderReport {
            a: sol.first.a.iter().map(rational_string).collect(),
            a_tilde: sol.first.a_tilde.iter().map(rational_string).collect(),
            g2: sol.first.g2.to_string(),
            n5: sol.first.n5.to_string(),
        },
        second_order: SecondOrderReport {
            tilde_b: sol.second.tilde_b.iter().map(rational_string).collect(),
            b: sol.second.b.iter().map(rational_string).collect(),
            lambda: sol.second.lambda.iter().map(rational_string).collect(),
            g4: sol.second.g4.to_string(),
            n7: sol.second.n7.to_string(),
        },
        obstruction: ObstructionReport {
            r: rational_string(&sol.r),
            rho: rational_string(&sol.second.rho),
            integrable: sol.r.is_zero(),
        },
        conserved: ConservedReport {
            c1: factors.c1.to_string(),
            c3: factors.c3.to_string(),
            c5: factors.c5.to_string(),
            c7: factors.c7.to_string(),
            drift_coefficient: rational_string(&factors.drift_coefficient),
        },
        notes: standard_notes(),
    })
}

/// Caveats attached to every report: places where the published slot data
/// and the independently derived values disagree, kept visible rather than
/// silently patched.
pub fn standard_notes() -> Vec<String> {
    vec![
        "chain slot data sets the <u><u^2>u_x coefficient (slot 18) to 0; the slaving-derived \
         reduced flow carries 630*<u><u^2>*u_x in that slot; the model uses the quoted 0 and the \
         independent derivation is exposed separately"
            .to_string(),
        "the quoted closed-form display of the obstruction r contains duplicated terms; the \
         value used here comes from the kernel pairing (constant 1680, coefficients -72 B1 \
         +180 B2 -510 B3 -72 B4 +27 B5 +24 B6 -9 B7 plus the kappa-weighted cascade part)"
            .to_string(),
    ]
}

/// Serializes a report as pretty JSON with a trailing newline.
pub fn to_json(report: &SolveReport) -> Result<String> {
    let mut text = serde_json::to_string_pretty(report).map_err(|e| {
        crate::Error::Inconsistent(format!("report serialization failed: {e}"))
    })?;
    text.push('\n');
    Ok(text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fput_model;
    use crate::solve::solve;
    use diffpoly::Rat;
    use num_traits::Zero;

    fn int(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    #[test]
    fn report_roundtrips_and_is_deterministic() {
        let model = fput_model(&int(1), &Rat::zero(), &Rat::zero()).unwrap();
        let sol = solve(&model, &Rat::zero()).unwrap();
        let report = solve_report(&sol).unwrap();
        let a = to_json(&report).unwrap();
        let b = to_json(&solve_report(&sol).unwrap()).unwrap();
        assert_eq!(a, b, "serialization must be deterministic");
        let parsed: SolveReport = serde_json::from_str(&a).unwrap();
        assert_eq!(parsed.obstruction.r, "-105840");
        assert!(!parsed.obstruction.integrable);
        assert_eq!(parsed.notes.len(), 2);
    }
}
