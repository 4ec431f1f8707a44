//! Recursive-descent parser for the polynomial grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | identifier | '(' expr ')'
//! ```
//!
//! Identifiers resolve against the ring's variable names; `t` denotes the
//! extension generator when the session field has one. Division is only
//! allowed by nonzero constants, so `3/2*t - 1` and `1/2*x1` parse as
//! expected.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use super::{MPoly, Ring};
use crate::exactfield::{Field, FieldElem, Rat, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError { line, column, message: message.into() }
    }

    /// Re-anchors an error from a fragment parsed at `line`, starting at
    /// `column_offset` characters into that line.
    pub fn at(mut self, line: usize, column_offset: usize) -> Self {
        self.line = line;
        self.column += column_offset;
        self
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Int(s.parse().expect("digits")), col));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '.') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), col));
            i += 1;
        } else {
            return Err(ParseError::new(1, col, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_col: usize,
    ring: &'a Arc<Ring>,
    field: &'a Field,
}

impl<'a> Parser<'a> {
    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.1).unwrap_or(self.end_col)
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(1, self.col(), msg)
    }

    fn peek_op(&self) -> Option<char> {
        match self.toks.get(self.pos) {
            Some((Tok::Op(c), _)) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<MPoly, ParseError> {
        let mut acc = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MPoly, ParseError> {
        let mut acc = self.unary()?;
        while let Some(op @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let col = self.col();
            let rhs = self.unary()?;
            if op == '*' {
                acc = &acc * &rhs;
            } else {
                let c = rhs
                    .as_constant()
                    .ok_or_else(|| ParseError::new(1, col, "division by a non-constant expression"))?;
                let inv = c.inv().map_err(|e| ParseError::new(1, col, e.to_string()))?;
                acc = acc.scale(&inv);
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MPoly, ParseError> {
        match self.peek_op() {
            Some('-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MPoly, ParseError> {
        let base = self.atom()?;
        if self.peek_op() == Some('^') {
            self.pos += 1;
            match self.toks.get(self.pos) {
                Some((Tok::Int(n), _)) => {
                    let e: u32 = n.try_into().map_err(|_| self.err("exponent too large"))?;
                    self.pos += 1;
                    Ok(base.pow(e))
                }
                _ => Err(self.err("expected a nonnegative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MPoly, ParseError> {
        let Some((tok, col)) = self.toks.get(self.pos).cloned() else {
            return Err(self.err("unexpected end of expression"));
        };
        self.pos += 1;
        match tok {
            Tok::Int(n) => Ok(MPoly::constant(self.ring, FieldElem::Rat(Rat::from_integer(n)))),
            Tok::Ident(name) => {
                if let Some(i) = self.ring.index_of(&name) {
                    Ok(MPoly::var(self.ring, i))
                } else if name == "t" {
                    self.field
                        .generator()
                        .map(|g| MPoly::constant(self.ring, g))
                        .ok_or_else(|| ParseError::new(1, col, "`t` used but the field is Q"))
                } else {
                    Err(ParseError::new(1, col, format!("unknown variable `{name}`")))
                }
            }
            Tok::Op('(') => {
                let inner = self.expr()?;
                if self.peek_op() != Some(')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Tok::Op(c) => Err(ParseError::new(1, col, format!("unexpected `{c}`"))),
        }
    }
}

/// Parses a polynomial over `field` in the variables of `ring`.
pub fn parse_poly(src: &str, ring: &Arc<Ring>, field: &Field) -> Result<MPoly, ParseError> {
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err(ParseError::new(1, 1, "empty expression"));
    }
    let mut p = Parser { toks, pos: 0, end_col: src.chars().count() + 1, ring, field };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(out)
}

/// Parses a constant expression such as `3/2*t - 1`.
pub fn parse_scalar(src: &str, field: &Field) -> Result<FieldElem, ParseError> {
    let ring = Ring::new(Vec::<String>::new());
    let p = parse_poly(src, &ring, field)?;
    Ok(p.as_constant().expect("no variables in an empty ring"))
}

/// Parses `Q` or `Q(t)/<monic polynomial in t>`.
pub fn parse_field(src: &str) -> Result<Field, ParseError> {
    let s = src.trim();
    if s == "Q" {
        return Ok(Field::Rational);
    }
    let offset = src.len() - src.trim_start().len();
    let Some(body) = s.strip_prefix("Q(t)/") else {
        return Err(ParseError::new(1, offset + 1, "expected `Q` or `Q(t)/<monic polynomial>`"));
    };
    let body_col = offset + "Q(t)/".len();
    let ring = Ring::new(["t"]);
    let p = parse_poly(body, &ring, &Field::Rational).map_err(|e| e.at(1, body_col))?;
    let deg = p.total_degree().unwrap_or(0) as usize;
    let mut coeffs = vec![Rat::zero(); deg + 1];
    for (m, c) in p.terms() {
        coeffs[m.exps()[0] as usize] = c.as_rat().cloned().expect("rational coefficients");
    }
    Field::extension(UniPoly::new(coeffs)).map_err(|e| ParseError::new(1, body_col + 1, e.to_string()))
}

/// Convenience for tests and examples: parse in a ring built from `names`.
pub fn poly_in(names: &[&str], src: &str) -> MPoly {
    let ring = Ring::new(names.iter().copied());
    parse_poly(src, &ring, &Field::Rational).unwrap_or_else(|e| panic!("bad polynomial `{src}`: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_precedence() {
        let ring = Ring::new(["x", "y"]);
        let p = parse_poly("-x^2 + 2*x*y - (y - 1)", &ring, &Field::Rational).unwrap();
        assert_eq!(p.to_string(), "-x^2 + 2*x*y - y + 1");
    }

    #[test]
    fn fractions_and_generator() {
        let f = parse_field("Q(t)/t^2 - 2").unwrap();
        let a = parse_scalar("3/2*t - 1", &f).unwrap();
        assert_eq!(a.to_string(), "3/2*t - 1");
        let sq = parse_scalar("t^2", &f).unwrap();
        assert_eq!(sq, FieldElem::from_integer(2));
        assert_eq!(parse_scalar("-1/2", &Field::Rational).unwrap().to_string(), "-1/2");
    }

    #[test]
    fn dotted_names() {
        let ring = Ring::new(["y1_1.0", "y1_0.1"]);
        let p = parse_poly("y1_1.0*y1_0.1 - 1", &ring, &Field::Rational).unwrap();
        assert_eq!(p.num_terms(), 2);
    }

    #[test]
    fn error_positions() {
        let ring = Ring::new(["x"]);
        let e = parse_poly("x + z", &ring, &Field::Rational).unwrap_err();
        assert_eq!((e.line, e.column), (1, 5));
        let e = parse_poly("x / x", &ring, &Field::Rational).unwrap_err();
        assert!(e.message.contains("non-constant"));
        let e = parse_poly("x +", &ring, &Field::Rational).unwrap_err();
        assert_eq!(e.column, 4);
        assert!(parse_poly("1/0", &ring, &Field::Rational).is_err());
        assert!(parse_poly("t", &ring, &Field::Rational).is_err());
        assert!(parse_poly("(x", &ring, &Field::Rational).is_err());
        assert!(parse_poly("x ^ y", &ring, &Field::Rational).is_err());
        assert!(parse_poly("x $", &ring, &Field::Rational).is_err());
    }

    #[test]
    fn field_header() {
        assert_eq!(parse_field("Q").unwrap(), Field::Rational);
        assert!(parse_field("Q(t)/2*t^2 - 1").is_err());
        assert!(parse_field("R").is_err());
    }
}
