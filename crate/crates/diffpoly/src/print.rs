//! Canonical text rendering. The output of `Display` parses back to the
//! identical polynomial, and canonically equal polynomials render to
//! identical strings.

use std::fmt::{self, Write as _};

use num_traits::{One, Signed};

use crate::expr::{Avg, DiffPoly, MonoKey, Monomial, Prim};
use crate::rational::{rational_string, Rat};

fn field_name(field: char, order: u32, out: &mut String) {
    match order {
        0 => out.push(field),
        1 => {
            out.push(field);
            out.push_str("_x");
        }
        k => {
            let _ = write!(out, "{field}_{k}x");
        }
    }
}

fn push_factor(out: &mut String, text: &str, power: i32) {
    if !out.is_empty() {
        out.push('*');
    }
    out.push_str(text);
    if power != 1 {
        let _ = write!(out, "^{power}");
    }
}

/// Renders grouped powers of an ascending multiset of derivative orders.
fn push_field_factors(out: &mut String, field: char, orders: &[u32]) {
    let mut i = 0;
    while i < orders.len() {
        let mut j = i + 1;
        while j < orders.len() && orders[j] == orders[i] {
            j += 1;
        }
        let mut name = String::new();
        field_name(field, orders[i], &mut name);
        push_factor(out, &name, (j - i) as i32);
        i = j;
    }
}

fn avg_body_string(avg: &Avg) -> String {
    let mut body = String::new();
    push_field_factors(&mut body, 'u', avg.u_orders());
    push_field_factors(&mut body, 'v', avg.v_orders());
    body
}

impl fmt::Display for Avg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "av({})", avg_body_string(self))
    }
}

impl fmt::Display for Prim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pr({})", self.integrand())
    }
}

/// The factor part of a monomial (no coefficient): parameters, averages,
/// free field factors, then primitives; empty string for the unit monomial.
fn key_string(key: &MonoKey) -> String {
    let mut out = String::new();
    for (param, power) in &key.params {
        push_factor(&mut out, param.name(), *power);
    }
    // Group equal average factors into powers.
    let mut i = 0;
    while i < key.avgs.len() {
        let mut j = i + 1;
        while j < key.avgs.len() && key.avgs[j] == key.avgs[i] {
            j += 1;
        }
        push_factor(&mut out, &key.avgs[i].to_string(), (j - i) as i32);
        i = j;
    }
    push_field_factors(&mut out, 'u', &key.uders);
    push_field_factors(&mut out, 'v', &key.vders);
    for prim in &key.prims {
        push_factor(&mut out, &prim.to_string(), 1);
    }
    out
}

/// Writes one term given its coefficient and factors; `leading` selects
/// between `-x` and `... - x` sign styles.
fn write_term(f: &mut fmt::Formatter<'_>, coeff: &Rat, key: &MonoKey, leading: bool) -> fmt::Result {
    let neg = coeff.is_negative();
    if leading {
        if neg {
            f.write_str("-")?;
        }
    } else if neg {
        f.write_str(" - ")?;
    } else {
        f.write_str(" + ")?;
    }
    let mag = coeff.abs();
    let factors = key_string(key);
    if factors.is_empty() {
        f.write_str(&rational_string(&mag))
    } else if mag.is_one() {
        f.write_str(&factors)
    } else {
        write!(f, "{}*{}", rational_string(&mag), factors)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(f, &self.coeff, &self.key, true)
    }
}

impl fmt::Display for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (key, coeff)) in self.terms.iter().enumerate() {
            write_term(f, coeff, key, i == 0)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use crate::expr::DiffPoly;
    use crate::rational::rat;
    use crate::Param;

    fn u(k: u32) -> DiffPoly {
        DiffPoly::u_der(k)
    }

    #[test]
    fn renders_terms_in_canonical_order() {
        let k3 = u(3).add(&u(0).mul(&u(1)).scale(&rat(6, 1)));
        assert_eq!(k3.to_string(), "u_3x + 6*u*u_x");
        let p = u(1).pow(2).scale(&rat(-1, 2)).add(&u(0).mul(&u(2)));
        assert_eq!(p.to_string(), "-1/2*u_x^2 + u*u_2x");
        assert_eq!(DiffPoly::zero().to_string(), "0");
        assert_eq!(DiffPoly::constant(rat(-3, 4)).to_string(), "-3/4");
    }

    #[test]
    fn renders_parameters_averages_and_primitives() {
        let alpha = DiffPoly::param(Param::ALPHA, 1);
        let p = alpha.mul(&u(1)).scale(&rat(2, 1));
        assert_eq!(p.to_string(), "2*alpha*u_x");
        let inv = DiffPoly::param(Param::ALPHA, -2).mul(&u(0).pow(3));
        assert_eq!(inv.to_string(), "alpha^-2*u^3");

        let avg = crate::average(&u(0).pow(2)).unwrap();
        assert_eq!(avg.to_string(), "av(u^2)");
        let pr = crate::antiderivative(&u(1).pow(2).sub(&crate::average(&u(1).pow(2)).unwrap())).unwrap();
        assert_eq!(pr.to_string(), "pr(u_x^2 - av(u_x^2))");
        let prod = u(1).mul(&pr);
        assert_eq!(prod.to_string(), "u_x*pr(u_x^2 - av(u_x^2))");
    }
}
