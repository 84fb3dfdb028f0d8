//! Text form of expressions: `x - y1^3 - y2`, `sqrt(x + 1)`, `2 * (x - 3)`.
//!
//! Precedence from loosest to tightest: `+ -`, `* /`, unary `-`, `^`.
//! Exponents are nonnegative integer literals; a tower like `x^2^3` groups
//! to the right and collapses to a single integer exponent while parsing.

use crate::expr::Expr;
use thiserror::Error;

/// Largest accepted integer exponent, including collapsed towers.
const MAX_EXPONENT: u128 = 1000;

#[derive(Debug, Error, PartialEq, Clone)]
#[error("parse error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

/// Parses an expression over the named variables.
pub fn parse_expr(src: &str, vars: &[String]) -> Result<Expr, ParseError> {
    let mut p = Parser { src, pos: 0, vars };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error(p.pos, "unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    vars: &'a [String],
}

impl<'a> Parser<'a> {
    fn error(&self, offset: usize, message: impl Into<String>) -> ParseError {
        ParseError { offset, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(|c: char| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    /// Next character after whitespace, without consuming it.
    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    /// Consumes `c` if it is next; reports whether it did.
    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.term()?;
        loop {
            if self.eat('+') {
                e = Expr::Add(Box::new(e), Box::new(self.term()?));
            } else if self.eat('-') {
                e = Expr::Sub(Box::new(e), Box::new(self.term()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.unary()?;
        loop {
            if self.eat('*') {
                e = Expr::Mul(Box::new(e), Box::new(self.unary()?));
            } else if self.eat('/') {
                e = Expr::Div(Box::new(e), Box::new(self.unary()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let at = self.pos;
        let k = self.exponent_tower()?;
        Ok(match k {
            0 => Expr::Const(1.0),
            1 => base,
            _ => {
                debug_assert!(k <= MAX_EXPONENT, "tower checked at {at}");
                Expr::Pow(Box::new(base), k as u32)
            }
        })
    }

    /// A right-grouping chain of integer literals: `2^3^2` is `2^(3^2)`.
    fn exponent_tower(&mut self) -> Result<u128, ParseError> {
        let at = self.pos;
        let k = self.integer_literal()?;
        if !self.eat('^') {
            return Ok(k);
        }
        let e = self.exponent_tower()?;
        let v = k
            .checked_pow(e as u32)
            .filter(|v| *v <= MAX_EXPONENT)
            .ok_or_else(|| self.error(at, format!("exponent exceeds {MAX_EXPONENT}")))?;
        Ok(v)
    }

    fn integer_literal(&mut self) -> Result<u128, ParseError> {
        let at = match self.peek() {
            Some(c) if c.is_ascii_digit() => self.pos,
            _ => return Err(self.error(self.pos, "expected an integer exponent")),
        };
        while self.src[self.pos..].starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.src[self.pos..].starts_with(['.', 'e', 'E']) {
            return Err(self.error(at, "exponent must be an integer"));
        }
        let text = &self.src[at..self.pos];
        let v: u128 = text
            .parse()
            .map_err(|_| self.error(at, "exponent exceeds the supported range"))?;
        if v > MAX_EXPONENT {
            return Err(self.error(at, format!("exponent exceeds {MAX_EXPONENT}")));
        }
        Ok(v)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let at = match self.peek() {
            Some(_) => self.pos,
            None => return Err(self.error(self.pos, "expected an expression")),
        };
        if self.eat('(') {
            let e = self.expr()?;
            if !self.eat(')') {
                return Err(self.error(self.pos, "expected `)`"));
            }
            return Ok(e);
        }
        let c = self.src[self.pos..].chars().next().unwrap();
        if c.is_ascii_digit() {
            return self.number(at);
        }
        if c.is_ascii_alphabetic() || c == '_' {
            return self.identifier(at);
        }
        Err(self.error(at, format!("unexpected character `{c}`")))
    }

    fn number(&mut self, at: usize) -> Result<Expr, ParseError> {
        while self.src[self.pos..].starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.src[self.pos..].starts_with('.') {
            self.pos += 1;
            while self.src[self.pos..].starts_with(|c: char| c.is_ascii_digit()) {
                self.pos += 1;
            }
        }
        if self.src[self.pos..].starts_with(['e', 'E']) {
            let mark = self.pos;
            self.pos += 1;
            if self.src[self.pos..].starts_with(['+', '-']) {
                self.pos += 1;
            }
            if self.src[self.pos..].starts_with(|c: char| c.is_ascii_digit()) {
                while self.src[self.pos..].starts_with(|c: char| c.is_ascii_digit()) {
                    self.pos += 1;
                }
            } else {
                // not an exponent suffix after all (for example `2e` as a name)
                self.pos = mark;
            }
        }
        let text = &self.src[at..self.pos];
        let v: f64 = text
            .parse()
            .map_err(|_| self.error(at, format!("malformed number `{text}`")))?;
        if !v.is_finite() {
            return Err(self.error(at, format!("number `{text}` overflows")));
        }
        Ok(Expr::Const(v))
    }

    fn identifier(&mut self, at: usize) -> Result<Expr, ParseError> {
        while self.src[self.pos..]
            .starts_with(|c: char| c.is_ascii_alphanumeric() || c == '_')
        {
            self.pos += 1;
        }
        let name = &self.src[at..self.pos];
        if name == "sqrt" {
            if !self.eat('(') {
                return Err(self.error(self.pos, "expected `(` after sqrt"));
            }
            let e = self.expr()?;
            if !self.eat(')') {
                return Err(self.error(self.pos, "expected `)`"));
            }
            return Ok(Expr::Sqrt(Box::new(e)));
        }
        match self.vars.iter().position(|v| v == name) {
            Some(i) => Ok(Expr::Var(i)),
            None => Err(self.error(at, format!("unknown variable `{name}`"))),
        }
    }
}
