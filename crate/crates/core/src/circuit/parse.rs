//! Reader for the circuit text format.
//!
//! ```text
//! program   := [ "OPENQASM" version ";" ] [ "include" string ";" ] qreg stmt*
//! qreg      := "qreg" ident "[" int "]" ";"
//! stmt      := gate [ "(" angle { "," angle } ")" ] operand { "," operand } ";"
//! operand   := ident "[" int "]"
//! ```
//!
//! `//` starts a comment running to end of line. Whitespace is
//! insignificant. Angles are expressions over literals and `pi`.

use thiserror::Error;

use super::{CircuitError, GateApplication, GateKind, QuantumCircuit};
use crate::expr::AngleExpr;

#[derive(Debug, Clone, PartialEq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown gate '{0}'")]
    UnknownGate(String),
    #[error("operand index {index} is not below register size {size}")]
    OperandOutOfRange { index: usize, size: usize },
    #[error("gate '{gate}' takes {expected} parameter(s), got {got}")]
    WrongParamCount { gate: String, expected: usize, got: usize },
    #[error(transparent)]
    Invalid(CircuitError),
}

/// Parses circuit text. The circuit is named after its register.
pub fn parse_circuit(text: &str) -> Result<QuantumCircuit, ParseError> {
    Parser::new(text).program()
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
    column: usize,
}

#[derive(Clone, Copy)]
struct Mark {
    line: usize,
    column: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Self {
            src,
            pos: 0,
            line: 1,
            column: 1,
        }
    }

    fn mark(&self) -> Mark {
        Mark {
            line: self.line,
            column: self.column,
        }
    }

    fn error_at(&self, at: Mark, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: at.line,
            column: at.column,
            kind,
        }
    }

    fn syntax(&self, msg: impl Into<String>) -> ParseError {
        self.error_at(self.mark(), ParseErrorKind::Syntax(msg.into()))
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn bump(&mut self) -> Option<char> {
        let ch = self.rest().chars().next()?;
        self.pos += ch.len_utf8();
        if ch == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(ch)
    }

    fn skip_trivia(&mut self) {
        loop {
            let rest = self.rest();
            if rest.starts_with("//") {
                while let Some(ch) = self.bump() {
                    if ch == '\n' {
                        break;
                    }
                }
            } else if rest.starts_with(|c: char| c.is_whitespace()) {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_trivia();
        self.pos == self.src.len()
    }

    fn peek_char(&mut self) -> Option<char> {
        self.skip_trivia();
        self.rest().chars().next()
    }

    fn expect(&mut self, ch: char) -> Result<(), ParseError> {
        match self.peek_char() {
            Some(c) if c == ch => {
                self.bump();
                Ok(())
            }
            Some(c) => Err(self.syntax(format!("expected '{ch}', found '{c}'"))),
            None => Err(self.syntax(format!("expected '{ch}', found end of input"))),
        }
    }

    fn ident(&mut self) -> Result<(&'a str, Mark), ParseError> {
        self.skip_trivia();
        let at = self.mark();
        let start = self.pos;
        let rest = self.rest();
        let first_ok = rest.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_');
        if !first_ok {
            return Err(match rest.chars().next() {
                Some(c) => self.syntax(format!("expected identifier, found '{c}'")),
                None => self.syntax("expected identifier, found end of input"),
            });
        }
        while self
            .rest()
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
        {
            self.bump();
        }
        Ok((&self.src[start..self.pos], at))
    }

    fn integer(&mut self) -> Result<(usize, Mark), ParseError> {
        self.skip_trivia();
        let at = self.mark();
        let start = self.pos;
        while self.rest().starts_with(|c: char| c.is_ascii_digit()) {
            self.bump();
        }
        let digits = &self.src[start..self.pos];
        if digits.is_empty() {
            return Err(self.syntax("expected integer"));
        }
        digits
            .parse()
            .map(|v| (v, at))
            .map_err(|_| self.error_at(at, ParseErrorKind::Syntax(format!("integer '{digits}' out of range"))))
    }

    fn program(mut self) -> Result<QuantumCircuit, ParseError> {
        let (mut word, mut at) = self.ident_or_eof("qreg declaration")?;
        if word == "OPENQASM" {
            self.skip_trivia();
            let start = self.pos;
            while self.rest().starts_with(|c: char| c.is_ascii_digit() || c == '.') {
                self.bump();
            }
            if &self.src[start..self.pos] != "2.0" {
                return Err(self.error_at(at, ParseErrorKind::Syntax("only 'OPENQASM 2.0' is accepted".into())));
            }
            self.expect(';')?;
            (word, at) = self.ident_or_eof("qreg declaration")?;
        }
        if word == "include" {
            self.string_literal()?;
            self.expect(';')?;
            (word, at) = self.ident_or_eof("qreg declaration")?;
        }
        if word != "qreg" {
            return Err(self.error_at(at, ParseErrorKind::Syntax(format!("expected 'qreg', found '{word}'"))));
        }
        let (reg, _) = self.ident()?;
        self.expect('[')?;
        let (size, _) = self.integer()?;
        self.expect(']')?;
        self.expect(';')?;

        let mut gates = Vec::new();
        let mut measured = std::collections::HashSet::new();
        while !self.at_end() {
            let (gate, at) = self.statement(reg, size)?;
            if gate.kind == GateKind::Measure {
                measured.insert(gate.operands[0]);
            } else if let Some(&q) = gate.operands.iter().find(|q| measured.contains(*q)) {
                return Err(self.error_at(
                    at,
                    ParseErrorKind::Invalid(CircuitError::GateAfterMeasure {
                        kind: gate.kind,
                        qubit: q,
                    }),
                ));
            }
            gates.push(gate);
        }
        QuantumCircuit::new(reg, size, gates).map_err(|e| self.error_at(self.mark(), ParseErrorKind::Invalid(e)))
    }

    fn ident_or_eof(&mut self, what: &str) -> Result<(&'a str, Mark), ParseError> {
        if self.at_end() {
            return Err(self.syntax(format!("expected {what}, found end of input")));
        }
        self.ident()
    }

    fn string_literal(&mut self) -> Result<(), ParseError> {
        self.expect('"')?;
        loop {
            match self.bump() {
                Some('"') => return Ok(()),
                Some('\n') | None => return Err(self.syntax("unterminated string")),
                Some(_) => {}
            }
        }
    }

    fn statement(&mut self, reg: &str, size: usize) -> Result<(GateApplication, Mark), ParseError> {
        let (name, at) = self.ident()?;
        if matches!(name, "qreg" | "creg" | "gate" | "if" | "reset" | "barrier" | "opaque") {
            return Err(self.error_at(at, ParseErrorKind::Syntax(format!("unsupported statement '{name}'"))));
        }
        let kind: GateKind = name
            .parse()
            .map_err(|_| self.error_at(at, ParseErrorKind::UnknownGate(name.to_string())))?;

        let mut params = Vec::new();
        if self.peek_char() == Some('(') {
            self.bump();
            params = self.angle_list()?;
        }
        if params.len() != kind.param_count() {
            return Err(self.error_at(
                at,
                ParseErrorKind::WrongParamCount {
                    gate: name.to_string(),
                    expected: kind.param_count(),
                    got: params.len(),
                },
            ));
        }

        let mut operands = vec![self.operand(reg, size)?];
        while self.peek_char() == Some(',') {
            self.bump();
            operands.push(self.operand(reg, size)?);
        }
        self.expect(';')?;
        let gate =
            GateApplication::new(kind, operands, params).map_err(|e| self.error_at(at, ParseErrorKind::Invalid(e)))?;
        Ok((gate, at))
    }

    fn angle_list(&mut self) -> Result<Vec<f64>, ParseError> {
        let mut out = Vec::new();
        loop {
            self.skip_trivia();
            let at = self.mark();
            let start = self.pos;
            let mut depth = 0usize;
            loop {
                match self.rest().chars().next() {
                    None => return Err(self.syntax("unterminated parameter list")),
                    Some('(') => depth += 1,
                    Some(')') if depth == 0 => break,
                    Some(')') => depth -= 1,
                    Some(',') if depth == 0 => break,
                    Some(';') | Some('\n') => return Err(self.syntax("unterminated parameter list")),
                    Some(_) => {}
                }
                self.bump();
            }
            let text = &self.src[start..self.pos];
            let value = AngleExpr::eval_closed(text).map_err(|e| {
                self.error_at(
                    Mark {
                        line: at.line,
                        column: at.column + e.offset,
                    },
                    ParseErrorKind::Syntax(e.message),
                )
            })?;
            out.push(value);
            match self.bump() {
                Some(',') => continue,
                _ => return Ok(out),
            }
        }
    }

    fn operand(&mut self, reg: &str, size: usize) -> Result<usize, ParseError> {
        let (name, at) = self.ident()?;
        if name != reg {
            return Err(self.error_at(at, ParseErrorKind::Syntax(format!("unknown register '{name}'"))));
        }
        self.expect('[')?;
        let (index, idx_at) = self.integer()?;
        self.expect(']')?;
        if index >= size {
            return Err(self.error_at(idx_at, ParseErrorKind::OperandOutOfRange { index, size }));
        }
        Ok(index)
    }
}
