//! Text input for differential polynomials.
//!
//! Grammar (whitespace insensitive):
//!
//! ```text
//! expr    := ['+'|'-'] term (('+'|'-') term)*
//! term    := factor (('*'|'/') factor)*
//! factor  := number | name | 'av' '(' expr ')' | 'pr' '(' expr ')'
//!            | '(' expr ')' , each optionally followed by '^' integer
//! number  := digits ['.' digits] | '.' digits
//! name    := field derivative ('u', 'v', 'u_x', 'u_2x', ...) or parameter
//! ```
//!
//! `av(e)` is the canonical average of `e`; `pr(e)` is the zero-average
//! primitive of `e - av(e)`. Division and negative exponents are admitted
//! for nonzero rationals and invertible parameter powers only. Everything
//! the canonical renderer emits parses back to the identical polynomial.

use std::str::FromStr;

use num_traits::Zero;

use crate::algebra::{average, primitive_of};
use crate::expr::{DiffPoly, Error, MonoKey, Result};
use crate::param::Param;
use crate::rational::parse_rational;

/// Parses the canonical expression syntax.
pub fn parse(input: &str) -> Result<DiffPoly> {
    let tokens = tokenize(input)?;
    let mut p = Parser { tokens, pos: 0 };
    let expr = p.expr()?;
    match p.peek() {
        None => Ok(expr),
        Some(t) => Err(Error::Parse(format!("unexpected trailing `{t}`"))),
    }
}

impl FromStr for DiffPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<DiffPoly> {
        parse(s)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Token {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Open,
    Close,
}

impl std::fmt::Display for Token {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Token::Num(s) | Token::Ident(s) => f.write_str(s),
            Token::Plus => f.write_str("+"),
            Token::Minus => f.write_str("-"),
            Token::Star => f.write_str("*"),
            Token::Slash => f.write_str("/"),
            Token::Caret => f.write_str("^"),
            Token::Open => f.write_str("("),
            Token::Close => f.write_str(")"),
        }
    }
}

fn tokenize(input: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let bytes = input.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                tokens.push(Token::Plus);
                i += 1;
            }
            '-' => {
                tokens.push(Token::Minus);
                i += 1;
            }
            '*' => {
                tokens.push(Token::Star);
                i += 1;
            }
            '/' => {
                tokens.push(Token::Slash);
                i += 1;
            }
            '^' => {
                tokens.push(Token::Caret);
                i += 1;
            }
            '(' => {
                tokens.push(Token::Open);
                i += 1;
            }
            ')' => {
                tokens.push(Token::Close);
                i += 1;
            }
            '0'..='9' | '.' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                let text = &input[start..i];
                if text == "." {
                    return Err(Error::Parse("bare `.` is not a number".into()));
                }
                tokens.push(Token::Num(text.to_string()));
            }
            'a'..='z' | 'A'..='Z' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                tokens.push(Token::Ident(input[start..i].to_string()));
            }
            other => {
                return Err(Error::Parse(format!(
                    "unexpected character `{other}` at byte {i}"
                )));
            }
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: &Token) -> Result<()> {
        match self.next() {
            Some(ref t) if t == want => Ok(()),
            Some(t) => Err(Error::Parse(format!("expected `{want}`, found `{t}`"))),
            None => Err(Error::Parse(format!("expected `{want}`, found end of input"))),
        }
    }

    fn expr(&mut self) -> Result<DiffPoly> {
        let mut negate = false;
        match self.peek() {
            Some(Token::Plus) => {
                self.pos += 1;
            }
            Some(Token::Minus) => {
                self.pos += 1;
                negate = true;
            }
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<DiffPoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some(Token::Slash) => {
                    self.pos += 1;
                    let divisor = self.factor()?;
                    let inverse = invert_constant(&divisor).ok_or_else(|| {
                        Error::Parse(format!("cannot divide by `{divisor}`"))
                    })?;
                    acc = acc.mul(&inverse);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<DiffPoly> {
        let base = match self.next() {
            Some(Token::Num(text)) => DiffPoly::constant(parse_rational(&text)?),
            Some(Token::Ident(name)) => {
                if (name == "av" || name == "pr") && self.peek() == Some(&Token::Open) {
                    self.pos += 1;
                    let inner = self.expr()?;
                    self.expect(&Token::Close)?;
                    if name == "av" {
                        average(&inner)?
                    } else {
                        primitive_of(&inner)?
                    }
                } else {
                    resolve_name(&name)?
                }
            }
            Some(Token::Open) => {
                let inner = self.expr()?;
                self.expect(&Token::Close)?;
                inner
            }
            Some(t) => return Err(Error::Parse(format!("unexpected `{t}`"))),
            None => return Err(Error::Parse("unexpected end of input".into())),
        };
        if self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            let exp = self.exponent()?;
            power(&base, exp)
        } else {
            Ok(base)
        }
    }

    fn exponent(&mut self) -> Result<i32> {
        let negative = if self.peek() == Some(&Token::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        match self.next() {
            Some(Token::Num(text)) => {
                let n: i32 = text
                    .parse()
                    .map_err(|_| Error::Parse(format!("invalid exponent `{text}`")))?;
                Ok(if negative { -n } else { n })
            }
            Some(t) => Err(Error::Parse(format!("expected exponent, found `{t}`"))),
            None => Err(Error::Parse("expected exponent, found end of input".into())),
        }
    }
}

/// A field derivative (`u`, `v_x`, `u_2x`, ...) or a parameter name.
fn resolve_name(name: &str) -> Result<DiffPoly> {
    if let Some(order) = field_order(name, 'u') {
        return Ok(DiffPoly::u_der(order));
    }
    if let Some(order) = field_order(name, 'v') {
        return Ok(DiffPoly::v_der(order));
    }
    let param = Param::from_name(name)
        .ok_or_else(|| Error::Parse(format!("unknown name `{name}`")))?;
    Ok(DiffPoly::param(param, 1))
}

fn field_order(name: &str, field: char) -> Option<u32> {
    let rest = name.strip_prefix(field)?;
    if rest.is_empty() {
        return Some(0);
    }
    let rest = rest.strip_prefix('_')?;
    if rest == "x" {
        return Some(1);
    }
    let digits = rest.strip_suffix('x')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

fn power(base: &DiffPoly, exp: i32) -> Result<DiffPoly> {
    if exp >= 0 {
        return Ok(base.pow(exp as u32));
    }
    let inverse = invert_constant(base).ok_or_else(|| {
        Error::Parse(format!("cannot raise `{base}` to a negative power"))
    })?;
    Ok(inverse.pow((-exp) as u32))
}

/// Inverts a single-term polynomial consisting of a nonzero rational times
/// invertible parameter powers; `None` for anything else.
fn invert_constant(p: &DiffPoly) -> Option<DiffPoly> {
    if p.terms.len() != 1 {
        return None;
    }
    let (key, coeff) = p.terms.iter().next()?;
    if !key.is_param_constant() || coeff.is_zero() {
        return None;
    }
    if !key.params.iter().all(|(param, _)| param.invertible()) {
        return None;
    }
    let inverted = MonoKey {
        params: key.params.iter().map(|&(param, e)| (param, -e)).collect(),
        ..MonoKey::unit()
    };
    Some(DiffPoly::from_key(inverted, coeff.recip()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn u(k: u32) -> DiffPoly {
        DiffPoly::u_der(k)
    }

    #[test]
    fn parses_polynomials() {
        let k3 = parse("u_3x + 6*u*u_x").unwrap();
        assert_eq!(k3, u(3).add(&u(0).mul(&u(1)).scale(&rat(6, 1))));
        let p = parse("-1/2*u_x^2 + u*u_2x").unwrap();
        assert_eq!(p, u(1).pow(2).scale(&rat(-1, 2)).add(&u(0).mul(&u(2))));
        assert_eq!(parse("0").unwrap(), DiffPoly::zero());
        assert_eq!(parse("u_x/24").unwrap(), u(1).scale(&rat(1, 24)));
        assert_eq!(parse("(u + v)^2").unwrap(), u(0).add(&DiffPoly::v_der(0)).pow(2));
        assert_eq!(parse("0.25*u").unwrap(), u(0).scale(&rat(1, 4)));
    }

    #[test]
    fn parses_functions_and_parameters() {
        let avg = parse("av(u^2)").unwrap();
        assert_eq!(avg, average(&u(0).pow(2)).unwrap());
        // av canonicalizes at parse time.
        let reduced = parse("av(u*u_2x)").unwrap();
        assert_eq!(reduced, parse("-av(u_x^2)").unwrap());
        // pr subtracts the mean before integrating: dx(pr(u)) = u - av(u).
        let pr = parse("pr(u)").unwrap();
        assert_eq!(pr.dx(), parse("u - av(u)").unwrap());
        let p = parse("beta/32*alpha^-2*u^3").unwrap();
        assert_eq!(
            p,
            DiffPoly::param(Param::BETA, 1)
                .mul(&DiffPoly::param(Param::ALPHA, -2))
                .mul(&u(0).pow(3))
                .scale(&rat(1, 32))
        );
    }

    #[test]
    fn round_trips_canonical_output() {
        for text in [
            "u_3x + 6*u*u_x",
            "-1/2*u_x^2 + u*u_2x",
            "av(u)^2*u_x",
            "u_x*pr(u - av(u))",
            "2*alpha*u_x + beta*v^2",
            "-3/4",
            "0",
        ] {
            let p = parse(text).unwrap();
            assert_eq!(p.to_string(), text, "canonical text should round-trip");
            assert_eq!(parse(&p.to_string()).unwrap(), p);
        }
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse("u +").is_err());
        assert!(parse("2u").is_err());
        assert!(parse("u/v").is_err());
        assert!(parse("u^-1").is_err());
        assert!(parse("w_2x").is_err());
        assert!(parse("av(u").is_err());
        assert!(parse("u ** v").is_err());
    }
}
