//! Expression parser for algebra elements.
//!
//! Grammar (whitespace between tokens is ignored):
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := scalar ('*' gen)* | gen ('*' gen)*
//! gen    := 'U(' rat ')' | 'V(' rat ')' | 'W(' rat ',' rat ')'
//! rat    := int ('/' posint)?
//! scalar := decimal | rat | '(' decimal ('+'|'-') decimal 'i' ')'
//! ```
//!
//! `U(a)` and `V(b)` arguments are in structure units (the labels `u` and
//! `b`), so `U(a)*V(b) = W(a,b)` and `V(b)*U(a)` picks up the exact
//! exchange phase. Generator arguments must be rational literals —
//! decimals are rejected there, since labels are exact. Decimal scalars
//! are allowed for coefficients only.

use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use crate::algebra::{AlgebraElement, AlgebraError};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Error)]
#[error("syntax error at byte {position}: {message}")]
pub struct ExprError {
    pub position: usize,
    pub message: String,
}

impl ExprError {
    fn new(position: usize, message: impl Into<String>) -> Self {
        ExprError {
            position,
            message: message.into(),
        }
    }
}

/// A parsed element together with its source text and canonical normal
/// form. Printing the normal form and reparsing it yields the same element.
#[derive(Debug, Clone, PartialEq)]
pub struct ElementExpr {
    source: String,
    element: AlgebraElement,
}

impl ElementExpr {
    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn element(&self) -> &AlgebraElement {
        &self.element
    }

    pub fn into_element(self) -> AlgebraElement {
        self.element
    }
}

impl fmt::Display for ElementExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.element)
    }
}

/// Parse an expression into its normal-ordered element.
pub fn parse_element(text: &str) -> Result<AlgebraElement, ExprError> {
    parse_expr(text).map(ElementExpr::into_element)
}

/// Parse, keeping the source text alongside the normal form.
pub fn parse_expr(text: &str) -> Result<ElementExpr, ExprError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let element = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(ExprError::new(
            p.pos,
            format!("unexpected character `{}`", p.peek_char()),
        ));
    }
    Ok(ElementExpr {
        source: text.to_string(),
        element,
    })
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn peek_char(&self) -> char {
        self.src
            .get(self.pos)
            .map(|&b| b as char)
            .unwrap_or('\u{2400}') // ␀ marker for end of input
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn skip_ws(&mut self) {
        while matches!(
            self.peek(),
            Some(b' ') | Some(b'\t') | Some(b'\n') | Some(b'\r')
        ) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ExprError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(ExprError::new(
                self.pos,
                format!("expected `{}`, found `{}`", c as char, self.peek_char()),
            ))
        }
    }

    fn overflow_at(&self, pos: usize) -> ExprError {
        ExprError::new(pos, "rational overflow in expression".to_string())
    }

    fn algebra_err(&self, pos: usize, e: AlgebraError) -> ExprError {
        ExprError::new(pos, format!("algebra error: {e}"))
    }

    fn expr(&mut self) -> Result<AlgebraElement, ExprError> {
        self.skip_ws();
        // Leading sign on the first term is accepted as a convenience.
        let mut negate = false;
        if self.peek() == Some(b'-') {
            // Only treat as a unary sign when a generator follows; a signed
            // number is handled by the scalar parser itself.
            let save = self.pos;
            self.pos += 1;
            self.skip_ws();
            if matches!(
                self.peek(),
                Some(b'U') | Some(b'V') | Some(b'W') | Some(b'(')
            ) {
                negate = true;
            } else {
                self.pos = save;
            }
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.scale(Complex64::new(-1.0, 0.0));
        }
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let pos = self.pos;
                    let t = self.term()?;
                    acc = acc.add(&t).map_err(|e| self.algebra_err(pos, e))?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let pos = self.pos;
                    let t = self.term()?;
                    acc = acc.sub(&t).map_err(|e| self.algebra_err(pos, e))?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<AlgebraElement, ExprError> {
        self.skip_ws();
        let mut acc = match self.peek() {
            Some(b'U') | Some(b'V') | Some(b'W') => self.gen()?,
            Some(_) => {
                let scalar = self.scalar()?;
                AlgebraElement::identity(1).scale(scalar)
            }
            None => return Err(ExprError::new(self.pos, "expected a term")),
        };
        loop {
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                self.skip_ws();
                let pos = self.pos;
                match self.peek() {
                    Some(b'U') | Some(b'V') | Some(b'W') => {
                        let g = self.gen()?;
                        acc = acc.multiply(&g).map_err(|e| self.algebra_err(pos, e))?;
                    }
                    _ => {
                        return Err(ExprError::new(
                            pos,
                            format!(
                                "expected generator U/V/W after `*`, found `{}`",
                                self.peek_char()
                            ),
                        ));
                    }
                }
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn gen(&mut self) -> Result<AlgebraElement, ExprError> {
        self.skip_ws();
        let kind = self.bump().expect("caller checked");
        self.expect(b'(')?;
        let element = match kind {
            b'U' => {
                let u = self.rat()?;
                AlgebraElement::generator(u, Rational::ZERO)
            }
            b'V' => {
                let b = self.rat()?;
                AlgebraElement::generator(Rational::ZERO, b)
            }
            b'W' => {
                let u = self.rat()?;
                self.expect(b',')?;
                let b = self.rat()?;
                AlgebraElement::generator(u, b)
            }
            _ => unreachable!(),
        };
        self.expect(b')')?;
        Ok(element)
    }

    fn digits(&mut self) -> Result<&'a str, ExprError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(ExprError::new(
                self.pos,
                format!("expected digits, found `{}`", self.peek_char()),
            ));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits"))
    }

    /// `int ('/' posint)?` — exact rational; a decimal point here is the
    /// irrational-literal rejection path.
    fn rat(&mut self) -> Result<Rational, ExprError> {
        self.skip_ws();
        let start = self.pos;
        let negative = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let num_digits = self.digits()?;
        if self.peek() == Some(b'.') {
            return Err(ExprError::new(
                self.pos,
                "generator labels must be exact rationals (`p/q`), not decimals",
            ));
        }
        let num: i64 = num_digits.parse().map_err(|_| self.overflow_at(start))?;
        let num = if negative { -num } else { num };
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let den_pos = self.pos;
            let den_digits = self.digits()?;
            let den: i64 = den_digits.parse().map_err(|_| self.overflow_at(den_pos))?;
            if den == 0 {
                return Err(ExprError::new(den_pos, "denominator must be positive"));
            }
            Rational::new(num, den).map_err(|_| self.overflow_at(start))
        } else {
            Rational::new(num, 1).map_err(|_| self.overflow_at(start))
        }
    }

    /// Signed plain decimal `[+-]? digits ('.' digits)?`.
    fn decimal(&mut self) -> Result<f64, ExprError> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.peek(), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        self.digits()?;
        if self.peek() == Some(b'.') {
            self.pos += 1;
            self.digits()?;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        text.parse()
            .map_err(|_| ExprError::new(start, format!("cannot parse decimal `{text}`")))
    }

    fn scalar(&mut self) -> Result<Complex64, ExprError> {
        self.skip_ws();
        if self.peek() == Some(b'(') {
            // '(' decimal ('+'|'-') decimal 'i' ')'
            self.pos += 1;
            let re = self.decimal()?;
            self.skip_ws();
            let sign = match self.bump() {
                Some(b'+') => 1.0,
                Some(b'-') => -1.0,
                _ => {
                    return Err(ExprError::new(
                        self.pos.saturating_sub(1),
                        "expected `+` or `-` between real and imaginary parts",
                    ));
                }
            };
            let im = self.decimal()?;
            self.skip_ws();
            if self.bump() != Some(b'i') {
                return Err(ExprError::new(
                    self.pos.saturating_sub(1),
                    "expected `i` after imaginary part",
                ));
            }
            self.expect(b')')?;
            return Ok(Complex64::new(re, sign * im));
        }
        // decimal | rat — disambiguated by the character after the digits.
        let start = self.pos;
        if matches!(self.peek(), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        self.digits()?;
        match self.peek() {
            Some(b'.') => {
                self.pos = start;
                Ok(Complex64::new(self.decimal()?, 0.0))
            }
            Some(b'/') => {
                self.pos = start;
                let r = self.rat()?;
                Ok(Complex64::new(r.to_f64(), 0.0))
            }
            _ => {
                let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                let n: i64 = text.parse().map_err(|_| self.overflow_at(start))?;
                Ok(Complex64::new(n as f64, 0.0))
            }
        }
    }
}
