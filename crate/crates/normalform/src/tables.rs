//! The bracket identities underpinning the generator ansatz, stored as
//! frozen text and re-derived on demand by the symbolic engine.
//!
//! Three groups, 45 identities in total:
//!
//! - the four quadratic generator basis elements bracketed with the cubic
//!   flow `K3` (4 identities),
//! - the same four elements bracketed with each of the seven quintic-order
//!   terms that can appear at the next order (28 identities),
//! - the thirteen cubic generator basis elements bracketed with `K3`
//!   (13 identities).
//!
//! `verify_identities` recomputes every left-hand side from scratch with
//! [`lie_bracket`] and compares against the frozen right-hand side, so a
//! regression anywhere in the symbolic stack shows up as a failed identity.

use diffpoly::{lie_bracket, parse, DiffPoly};

use crate::Result;

/// Quadratic generator basis (`X1..X4`): the four zero-average quadratic
/// expressions (up to constants) available to the first conjugation.
pub const QUAD_BASIS: [&str; 4] = [
    "u_2x",
    "u^2 - av(u^2)",
    "u_x*pr(u - av(u)) + av(u^2) - av(u)^2",
    "av(u)*u - av(u)^2",
];

/// Quintic-order flow terms (`Y1..Y7`): everything a fifth-order flow with
/// average-dependent coefficients can contain besides `u_5x` itself.
pub const QUINTIC_TERMS: [&str; 7] = [
    "u_5x",
    "u_x*u_2x",
    "u*u_3x",
    "u^2*u_x",
    "av(u^2)*u_x",
    "av(u)^2*u_x",
    "av(u)*(u_3x + 6*u*u_x)",
];

/// Cubic generator basis (`Z1..Z13`): the zero-average cubic-degree
/// expressions available to the second conjugation.
pub const CUBIC_BASIS: [&str; 13] = [
    "u_4x",
    "u_x^2 - av(u_x^2)",
    "u*u_2x + av(u_x^2)",
    "u^3 - av(u^3)",
    "u_x*pr(u^2 - av(u^2)) + av(u^3) - av(u)*av(u^2)",
    "(u_3x + 6*u*u_x)*pr(u - av(u)) + 3*av(u^3) - av(u_x^2) - 3*av(u^2)*av(u)",
    "av(u)*u_2x",
    "av(u)*(u^2 - av(u^2))",
    "av(u)*(u_x*pr(u - av(u)) + av(u^2) - av(u)^2)",
    "av(u)^2*(u - av(u))",
    "av(u^2)*(u - av(u))",
    "av(u_x^2)",
    "av(u^3)",
];

/// Frozen values of `[Xi, K3]` for the quadratic basis, same order as
/// [`QUAD_BASIS`].
const QUAD_K3_BRACKETS: [&str; 4] = [
    "12*u_x*u_2x",
    "-6*u_x*u_2x - 6*u^2*u_x + 6*av(u^2)*u_x",
    "-3*u_x*u_2x - 3*u*u_3x - 3*u^2*u_x - 9*av(u^2)*u_x + 6*av(u)^2*u_x \
     + 6*av(u)*u*u_x + 3*av(u)*u_3x",
    "-6*av(u)*u*u_x + 6*av(u)^2*u_x",
];

/// Frozen values of `[Xi, Yj]`, row `i` (quadratic basis element), column `j`
/// (quintic term).
const QUAD_QUINTIC_BRACKETS: [[&str; 7]; 4] = [
    [
        "0",
        "2*u_2x*u_3x",
        "2*u_x*u_4x",
        "2*u_x^3 + 4*u*u_x*u_2x",
        "2*av(u_x^2)*u_x",
        "0",
        "12*av(u)*u_x*u_2x",
    ],
    [
        "-20*u_2x*u_3x - 10*u_x*u_4x",
        "-2*u_x^3 - 2*u*u_x*u_2x + av(u_x^3)",
        "-6*u*u_x*u_2x - u^2*u_3x - 2*av(u_x^3) + av(u^2)*u_3x",
        "-2*u^3*u_x + 2*av(u^2)*u*u_x",
        "-2*av(u^3)*u_x + 2*av(u)*av(u^2)*u_x",
        "0",
        "-6*av(u)*u_x*u_2x - 6*av(u)*u^2*u_x + 6*av(u)*av(u^2)*u_x",
    ],
    [
        "-15*u_2x*u_3x - 10*u_x*u_4x - 5*u*u_5x + 5*av(u)*u_5x",
        "-1/2*u_x^3 - 3*u*u_x*u_2x - 1/2*av(u_x^2)*u_x - av(u_x^3) \
         + 3*av(u)*u_x*u_2x",
        "-1/2*u_x^3 - 3*u*u_x*u_2x - 3*u^2*u_3x + 3/2*av(u_x^2)*u_x \
         + 2*av(u_x^3) - av(u^2)*u_3x + av(u)^2*u_3x + 3*av(u)*u*u_3x",
        "-2/3*u^3*u_x - 1/3*av(u^3)*u_x - 2*av(u^2)*u*u_x + 2*av(u)^2*u*u_x \
         + av(u)*u^2*u_x",
        "av(u^3)*u_x - 3*av(u)*av(u^2)*u_x + 2*av(u)^3*u_x",
        "0",
        "-3*av(u)*u_x*u_2x - 3*av(u)*u*u_3x - 3*av(u)*u^2*u_x \
         + 3*av(u)^2*u_3x + 6*av(u)^2*u*u_x + 6*av(u)^3*u_x \
         - 9*av(u)*av(u^2)*u_x",
    ],
    [
        "0",
        "-av(u)*u_x*u_2x",
        "av(u)^2*u_3x - av(u)*u*u_3x",
        "2*av(u)^2*u*u_x - 2*av(u)*u^2*u_x",
        "2*av(u)^3*u_x - 2*av(u)*av(u^2)*u_x",
        "0",
        "6*av(u)^3*u_x - 6*av(u)^2*u*u_x",
    ],
];

/// Frozen values of `[Zi, K3]` for the cubic basis, same order as
/// [`CUBIC_BASIS`].
const CUBIC_K3_BRACKETS: [&str; 13] = [
    "60*u_2x*u_3x + 24*u_x*u_4x",
    "-6*u_2x*u_3x + 6*u_x^3 - 6*av(u_x^3) + 6*av(u_x^2)*u_x",
    "-3*u_2x*u_3x - 3*u_x*u_4x + 12*u*u_x*u_2x + 6*av(u_x^3) - 6*av(u_x^2)*u_x",
    "-6*u_x^3 - 18*u*u_x*u_2x - 6*u^3*u_x - 3*av(u_x^3) + 6*av(u^3)*u_x",
    "-3*u_x^3 - 6*u*u_x*u_2x - 3*u^2*u_3x - 2*u^3*u_x + 3*av(u^2)*u_3x \
     + 3*av(u_x^2)*u_x + 6*av(u^2)*u*u_x - 10*av(u^3)*u_x + 3*av(u_x^3) \
     + 6*av(u)*av(u^2)*u_x",
    "-3*u_x*u_4x - 3*u*u_5x - 18*u_x^3 - 72*u*u_x*u_2x - 21*u^2*u_3x \
     - 18*u^3*u_x - 3*av(u^2)*u_3x + 6*av(u_x^2)*u_x + 3*av(u_x^3) \
     - 18*av(u^3)*u_x - 18*av(u^2)*u*u_x + 18*av(u)*av(u^2)*u_x \
     + 3*av(u)*(u_5x + 18*u_x*u_2x + 8*u*u_3x + 12*u^2*u_x)",
    "12*av(u)*u_x*u_2x",
    "-6*av(u)*u_x*u_2x - 6*av(u)*u^2*u_x + 6*av(u)*av(u^2)*u_x",
    "-3*av(u)*u_x*u_2x - 3*av(u)*u*u_3x - 3*av(u)*u^2*u_x \
     - 9*av(u)*av(u^2)*u_x + 6*av(u)^3*u_x + 6*av(u)^2*u*u_x \
     + 3*av(u)^2*u_3x",
    "-6*av(u)^2*u*u_x + 6*av(u)^3*u_x",
    "6*av(u^2)*av(u)*u_x - 6*av(u^2)*u*u_x",
    "-6*av(u_x^2)*u_x + 6*av(u_x^3)",
    "-6*av(u^3)*u_x + 3*av(u_x^3)",
];

/// One bracket identity: `[left, right] = expected`.
#[derive(Debug, Clone, Copy)]
pub struct Identity {
    /// Which group the identity belongs to.
    pub group: &'static str,
    /// Short label such as `"[X3, Y2]"`.
    pub label: &'static str,
    /// Left bracket argument (engine syntax).
    pub left: &'static str,
    /// Right bracket argument (engine syntax).
    pub right: &'static str,
    /// Frozen value of the bracket (engine syntax).
    pub expected: &'static str,
}

/// Outcome of re-deriving one identity.
#[derive(Debug, Clone)]
pub struct IdentityCheck {
    /// Group of the identity.
    pub group: &'static str,
    /// Short label such as `"[X3, Y2]"`.
    pub label: &'static str,
    /// Whether the recomputed bracket matched the frozen value exactly.
    pub ok: bool,
    /// Canonical rendering of the recomputed bracket.
    pub computed: String,
    /// Canonical rendering of the frozen value.
    pub expected: String,
}

/// Group name for the quadratic-basis/K3 identities.
pub const GROUP_QUAD_K3: &str = "quad-basis x cubic-flow";
/// Group name for the quadratic-basis/quintic-term identities.
pub const GROUP_QUAD_QUINTIC: &str = "quad-basis x quintic-terms";
/// Group name for the cubic-basis/K3 identities.
pub const GROUP_CUBIC_K3: &str = "cubic-basis x cubic-flow";

const K3: &str = "u_3x + 6*u*u_x";

const QUAD_LABELS: [&str; 4] = ["X1", "X2", "X3", "X4"];
const QUAD_QUINTIC_LABELS: [[&str; 7]; 4] = [
    [
        "[X1, Y1]", "[X1, Y2]", "[X1, Y3]", "[X1, Y4]", "[X1, Y5]", "[X1, Y6]", "[X1, Y7]",
    ],
    [
        "[X2, Y1]", "[X2, Y2]", "[X2, Y3]", "[X2, Y4]", "[X2, Y5]", "[X2, Y6]", "[X2, Y7]",
    ],
    [
        "[X3, Y1]", "[X3, Y2]", "[X3, Y3]", "[X3, Y4]", "[X3, Y5]", "[X3, Y6]", "[X3, Y7]",
    ],
    [
        "[X4, Y1]", "[X4, Y2]", "[X4, Y3]", "[X4, Y4]", "[X4, Y5]", "[X4, Y6]", "[X4, Y7]",
    ],
];
const QUAD_K3_LABELS: [&str; 4] = ["[X1, K3]", "[X2, K3]", "[X3, K3]", "[X4, K3]"];
const CUBIC_K3_LABELS: [&str; 13] = [
    "[Z1, K3]",
    "[Z2, K3]",
    "[Z3, K3]",
    "[Z4, K3]",
    "[Z5, K3]",
    "[Z6, K3]",
    "[Z7, K3]",
    "[Z8, K3]",
    "[Z9, K3]",
    "[Z10, K3]",
    "[Z11, K3]",
    "[Z12, K3]",
    "[Z13, K3]",
];

/// All 45 identities in a fixed order: quadratic basis with `K3` (4), then
/// quadratic basis with each quintic term (28, row-major), then cubic basis
/// with `K3` (13).
pub fn identities() -> Vec<Identity> {
    let mut out = Vec::with_capacity(45);
    for i in 0..4 {
        out.push(Identity {
            group: GROUP_QUAD_K3,
            label: QUAD_K3_LABELS[i],
            left: QUAD_BASIS[i],
            right: K3,
            expected: QUAD_K3_BRACKETS[i],
        });
    }
    for i in 0..4 {
        for j in 0..7 {
            out.push(Identity {
                group: GROUP_QUAD_QUINTIC,
                label: QUAD_QUINTIC_LABELS[i][j],
                left: QUAD_BASIS[i],
                right: QUINTIC_TERMS[j],
                expected: QUAD_QUINTIC_BRACKETS[i][j],
            });
        }
    }
    for i in 0..13 {
        out.push(Identity {
            group: GROUP_CUBIC_K3,
            label: CUBIC_K3_LABELS[i],
            left: CUBIC_BASIS[i],
            right: K3,
            expected: CUBIC_K3_BRACKETS[i],
        });
    }
    let _ = QUAD_LABELS; // labels embedded above; kept for readers
    out
}

/// Parses the quadratic generator basis.
pub fn quad_basis() -> Result<Vec<DiffPoly>> {
    QUAD_BASIS
        .iter()
        .map(|s| parse(s).map_err(crate::Error::from))
        .collect()
}

/// Parses the cubic generator basis.
pub fn cubic_basis() -> Result<Vec<DiffPoly>> {
    CUBIC_BASIS
        .iter()
        .map(|s| parse(s).map_err(crate::Error::from))
        .collect()
}

/// Recomputes every identity with the engine and compares against the frozen
/// value.  Returns 45 records in the order of [`identities`].
pub fn verify_identities() -> Result<Vec<IdentityCheck>> {
    let mut out = Vec::with_capacity(45);
    for id in identities() {
        let left = parse(id.left)?;
        let right = parse(id.right)?;
        let expected = parse(id.expected)?;
        let computed = lie_bracket(&left, &right)?;
        out.push(IdentityCheck {
            group: id.group,
            label: id.label,
            ok: computed == expected,
            computed: computed.to_string(),
            expected: expected.to_string(),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_identities_hold() {
        let checks = verify_identities().expect("verification runs");
        assert_eq!(checks.len(), 45);
        for c in &checks {
            assert!(
                c.ok,
                "identity {} ({}) failed:\n  computed: {}\n  expected: {}",
                c.label, c.group, c.computed, c.expected
            );
        }
    }

    #[test]
    fn identity_groups_have_expected_sizes() {
        let ids = identities();
        let quad_k3 = ids.iter().filter(|i| i.group == GROUP_QUAD_K3).count();
        let quad_quintic = ids.iter().filter(|i| i.group == GROUP_QUAD_QUINTIC).count();
        let cubic_k3 = ids.iter().filter(|i| i.group == GROUP_CUBIC_K3).count();
        assert_eq!((quad_k3, quad_quintic, cubic_k3), (4, 28, 13));
    }
}
