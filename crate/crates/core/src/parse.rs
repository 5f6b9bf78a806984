//! Parameter expressions over `n`, `c1`, `c2` and rational literals.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := ('+' | '-') unary | power
//! power := atom ('^' ['-'] digits)?
//! atom  := number | 'n' | 'c1' | 'c2' | '(' expr ')'
//! ```
//!
//! Numbers are integers or finite decimals such as `0.25`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{Field, RatFunc, Rational};
use crate::error::{Error, Result};
use crate::{RatFuncN, SymbolicCoeff};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the source.
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at offset {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(Rational),
    N,
    C1,
    C2,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
}

/// A parsed expression together with its source text.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamExpr {
    pub source: String,
    pub ast: Expr,
}

impl fmt::Display for ParamExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

pub fn parse_param_expr(src: &str) -> std::result::Result<ParamExpr, ParseError> {
    let mut p = Parser { src: src.as_bytes(), pos: 0 };
    let ast = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("expected one of '+', '-', '*', '/', '^' or end of input"));
    }
    Ok(ParamExpr { source: src.trim().to_string(), ast })
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> ParseError {
        ParseError { offset: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> std::result::Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(b'-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> std::result::Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(b'*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat(b'/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> std::result::Result<Expr, ParseError> {
        if self.eat(b'-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> std::result::Result<Expr, ParseError> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let neg = self.eat(b'-');
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer exponent"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        let e: i32 = digits.parse().map_err(|_| ParseError { offset: start, message: "exponent too large".into() })?;
        Ok(Expr::Pow(Box::new(base), if neg { -e } else { e }))
    }

    fn atom(&mut self) -> std::result::Result<Expr, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                match &self.src[start..self.pos] {
                    b"n" => Ok(Expr::N),
                    b"c1" => Ok(Expr::C1),
                    b"c2" => Ok(Expr::C2),
                    other => Err(ParseError {
                        offset: start,
                        message: format!(
                            "unknown identifier '{}'; expected one of n, c1, c2",
                            String::from_utf8_lossy(other)
                        ),
                    }),
                }
            }
            Some(_) => Err(self.error("expected one of a number, n, c1, c2 or '('")),
            None => Err(self.error("unexpected end of input; expected one of a number, n, c1, c2 or '('")),
        }
    }

    fn number(&mut self) -> std::result::Result<Expr, ParseError> {
        let start = self.pos;
        let mut int = String::new();
        let mut frac = String::new();
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            int.push(self.src[self.pos] as char);
            self.pos += 1;
        }
        if self.pos < self.src.len() && self.src[self.pos] == b'.' {
            self.pos += 1;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                frac.push(self.src[self.pos] as char);
                self.pos += 1;
            }
        }
        if int.is_empty() && frac.is_empty() {
            return Err(ParseError { offset: start, message: "malformed number".into() });
        }
        if self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            return Err(ParseError { offset: start, message: "non-rational literal".into() });
        }
        let digits: BigInt = format!("{}{}", int, frac).parse().expect("digits");
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        Ok(Expr::Num(Rational::new(digits, scale)))
    }
}

impl Expr {
    /// Evaluate with the given values of `c1`, `c2`.
    pub fn eval<F: Field>(&self, c1: &F, c2: &F) -> Result<RatFuncN<F>> {
        Ok(match self {
            Expr::Num(q) => RatFunc::constant(F::from_rational(q)),
            Expr::N => RatFunc::var(),
            Expr::C1 => RatFunc::constant(c1.clone()),
            Expr::C2 => RatFunc::constant(c2.clone()),
            Expr::Neg(a) => -a.eval(c1, c2)?,
            Expr::Add(a, b) => a.eval(c1, c2)? + &b.eval(c1, c2)?,
            Expr::Sub(a, b) => a.eval(c1, c2)? - &b.eval(c1, c2)?,
            Expr::Mul(a, b) => a.eval(c1, c2)? * &b.eval(c1, c2)?,
            Expr::Div(a, b) => {
                let d = b.eval(c1, c2)?.checked_inv().ok_or(Error::DivisionByZero)?;
                a.eval(c1, c2)? * &d
            }
            Expr::Pow(a, e) => a.eval(c1, c2)?.pow(*e)?,
        })
    }

    /// Evaluate to a plain rational; fails on `n`, `c1`, `c2`.
    pub fn eval_rational(&self) -> Result<Rational> {
        let r = self.eval::<Rational>(&Rational::zero(), &Rational::zero())?;
        if self.mentions_symbol() {
            return Err(Error::InvalidArgument("expected a rational number".into()));
        }
        r.as_constant().ok_or_else(|| Error::InvalidArgument("expected a rational number".into()))
    }

    fn mentions_symbol(&self) -> bool {
        match self {
            Expr::Num(_) => false,
            Expr::N | Expr::C1 | Expr::C2 => true,
            Expr::Neg(a) | Expr::Pow(a, _) => a.mentions_symbol(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.mentions_symbol() || b.mentions_symbol()
            }
        }
    }
}

impl ParamExpr {
    pub fn eval<F: Field>(&self, c1: &F, c2: &F) -> Result<RatFuncN<F>> {
        self.ast.eval(c1, c2)
    }
}

/// Parse and evaluate a rational function of `n` with the given `c1`, `c2`.
pub fn parse_ratfunc<F: Field>(src: &str, c1: &F, c2: &F) -> Result<RatFuncN<F>> {
    parse_param_expr(src)?.eval(c1, c2)
}

/// Parse and evaluate with `c1`, `c2` kept symbolic.
pub fn parse_symbolic(src: &str) -> Result<RatFuncN<SymbolicCoeff>> {
    let c1 = SymbolicCoeff::constant(RatFunc::var());
    let c2 = SymbolicCoeff::var();
    parse_ratfunc(src, &c1, &c2)
}

/// Parse a rational literal expression such as `-3/4` or `0.5`.
pub fn parse_rational(src: &str) -> Result<Rational> {
    parse_param_expr(src)?.ast.eval_rational()
}

/// Parse `"1/2"`-style input or the token `sym`.
pub fn parse_coefficient(src: &str) -> Result<Option<Rational>> {
    if src.trim() == "sym" {
        Ok(None)
    } else {
        parse_rational(src).map(Some)
    }
}
