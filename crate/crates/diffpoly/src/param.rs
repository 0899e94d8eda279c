//! Formal scalar parameters.

use std::fmt;
use std::str::FromStr;

/// Fixed vocabulary of formal scalar parameters that may appear in
/// coefficients: the model constants `alpha`, `beta`, `gamma`, the
/// coefficient families `A1..A4`, `B1..B20`, `C1`, `C3`, `C5`, `C7`,
/// `a1..a4`, `b1..b13` and `lam1..lam7`.
///
/// Parameters are commuting indeterminates with integer exponents. Only
/// `alpha` is treated as invertible by the rest of the crate (it may carry
/// negative exponents); the others are ordinary polynomial generators.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Param(u8);

const fn build_names() -> [&'static str; 55] {
    [
        "alpha", "beta", "gamma", //
        "A1", "A2", "A3", "A4", //
        "B1", "B2", "B3", "B4", "B5", "B6", "B7", "B8", "B9", "B10", "B11", "B12", "B13", "B14",
        "B15", "B16", "B17", "B18", "B19", "B20", //
        "C1", "C3", "C5", "C7", //
        "a1", "a2", "a3", "a4", //
        "b1", "b2", "b3", "b4", "b5", "b6", "b7", "b8", "b9", "b10", "b11", "b12", "b13", //
        "lam1", "lam2", "lam3", "lam4", "lam5", "lam6", "lam7",
    ]
}

/// Names of every recognised parameter, in canonical order.
pub(crate) const PARAM_NAMES: [&'static str; 55] = build_names();

impl Param {
    /// The model parameter `alpha` (the only invertible parameter).
    pub const ALPHA: Param = Param(0);
    /// The model parameter `beta`.
    pub const BETA: Param = Param(1);
    /// The model parameter `gamma`.
    pub const GAMMA: Param = Param(2);

    /// Looks up a parameter by name; `None` when the name is not in the
    /// fixed vocabulary.
    pub fn from_name(name: &str) -> Option<Param> {
        PARAM_NAMES
            .iter()
            .position(|&n| n == name)
            .map(|i| Param(i as u8))
    }

    /// The canonical name of this parameter.
    pub fn name(self) -> &'static str {
        PARAM_NAMES[self.0 as usize]
    }

    /// Whether negative exponents of this parameter are allowed.
    pub fn invertible(self) -> bool {
        self == Param::ALPHA
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Param {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Param::from_name(s).ok_or_else(|| crate::Error::Parse(format!("unknown parameter `{s}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vocabulary_round_trips() {
        for name in PARAM_NAMES {
            let p = Param::from_name(name).unwrap();
            assert_eq!(p.name(), name);
        }
        assert_eq!(Param::from_name("delta"), None);
        assert_eq!(Param::from_name("b14"), None);
        assert!(Param::ALPHA.invertible());
        assert!(!Param::BETA.invertible());
    }
}
