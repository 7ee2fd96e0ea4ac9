//! Angle expressions.
//!
//! Small arithmetic language used for gate parameters in circuit text
//! (`rz(pi/2) q[0];`) and for the angle templates of decomposition rules
//! (`"p0 + pi"`). Supported: decimal literals, `pi`, the source-gate
//! parameters `p0`, `p1`, `p2` (templates only), unary minus, `+ - * /`
//! and parentheses.

use std::f64::consts::PI;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
#[error("angle expression error at offset {offset}: {message}")]
pub struct ExprError {
    pub offset: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
pub enum AngleExpr {
    Num(f64),
    Pi,
    Param(usize),
    Neg(Box<AngleExpr>),
    Add(Box<AngleExpr>, Box<AngleExpr>),
    Sub(Box<AngleExpr>, Box<AngleExpr>),
    Mul(Box<AngleExpr>, Box<AngleExpr>),
    Div(Box<AngleExpr>, Box<AngleExpr>),
}

impl AngleExpr {
    /// Parses an expression that may refer to source parameters `p0..p<max_params-1>`.
    pub fn parse(src: &str, max_params: usize) -> Result<Self, ExprError> {
        let mut p = Parser {
            src: src.as_bytes(),
            pos: 0,
            max_params,
        };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(e)
    }

    /// Parses and evaluates a closed expression (no parameters).
    pub fn eval_closed(src: &str) -> Result<f64, ExprError> {
        Ok(Self::parse(src, 0)?.eval(&[]))
    }

    pub fn eval(&self, params: &[f64]) -> f64 {
        match self {
            AngleExpr::Num(v) => *v,
            AngleExpr::Pi => PI,
            AngleExpr::Param(i) => params[*i],
            AngleExpr::Neg(e) => -e.eval(params),
            AngleExpr::Add(a, b) => a.eval(params) + b.eval(params),
            AngleExpr::Sub(a, b) => a.eval(params) - b.eval(params),
            AngleExpr::Mul(a, b) => a.eval(params) * b.eval(params),
            AngleExpr::Div(a, b) => a.eval(params) / b.eval(params),
        }
    }

    /// Highest parameter index referenced, if any.
    pub fn max_param(&self) -> Option<usize> {
        match self {
            AngleExpr::Num(_) | AngleExpr::Pi => None,
            AngleExpr::Param(i) => Some(*i),
            AngleExpr::Neg(e) => e.max_param(),
            AngleExpr::Add(a, b) | AngleExpr::Sub(a, b) | AngleExpr::Mul(a, b) | AngleExpr::Div(a, b) => {
                a.max_param().max(b.max_param())
            }
        }
    }
}

impl fmt::Display for AngleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AngleExpr::Num(v) => write!(f, "{v:?}"),
            AngleExpr::Pi => f.write_str("pi"),
            AngleExpr::Param(i) => write!(f, "p{i}"),
            AngleExpr::Neg(e) => write!(f, "-({e})"),
            AngleExpr::Add(a, b) => write!(f, "({a} + {b})"),
            AngleExpr::Sub(a, b) => write!(f, "({a} - {b})"),
            AngleExpr::Mul(a, b) => write!(f, "({a} * {b})"),
            AngleExpr::Div(a, b) => write!(f, "({a} / {b})"),
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    max_params: usize,
}

impl Parser<'_> {
    fn err(&self, message: impl Into<String>) -> ExprError {
        ExprError {
            offset: self.pos,
            message: message.into(),
        }
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

    fn expr(&mut self) -> Result<AngleExpr, ExprError> {
        let mut lhs = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = if c == b'+' {
                AngleExpr::Add(Box::new(lhs), Box::new(rhs))
            } else {
                AngleExpr::Sub(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<AngleExpr, ExprError> {
        let mut lhs = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = if c == b'*' {
                AngleExpr::Mul(Box::new(lhs), Box::new(rhs))
            } else {
                AngleExpr::Div(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<AngleExpr, ExprError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(AngleExpr::Neg(Box::new(self.unary()?)))
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<AngleExpr, ExprError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let word = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
                if word == "pi" {
                    return Ok(AngleExpr::Pi);
                }
                if let Some(idx) = word.strip_prefix('p').and_then(|d| d.parse::<usize>().ok()) {
                    if idx < self.max_params {
                        return Ok(AngleExpr::Param(idx));
                    }
                }
                self.pos = start;
                Err(self.err(format!("unknown identifier '{word}'")))
            }
            Some(_) => Err(self.err("expected a number, 'pi' or '('")),
            None => Err(self.err("unexpected end of expression")),
        }
    }

    fn number(&mut self) -> Result<AngleExpr, ExprError> {
        let start = self.pos;
        let bytes = self.src;
        let mut i = self.pos;
        while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
            i += 1;
        }
        if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
            let mut j = i + 1;
            if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                j += 1;
            }
            if j < bytes.len() && bytes[j].is_ascii_digit() {
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                i = j;
            }
        }
        let text = std::str::from_utf8(&bytes[start..i]).unwrap_or("");
        match text.parse::<f64>() {
            Ok(v) => {
                self.pos = i;
                Ok(AngleExpr::Num(v))
            }
            Err(_) => Err(self.err(format!("malformed number '{text}'"))),
        }
    }
}
