//! Recursive-descent parser for operational-calculus expressions.
//!
//! Precedence from low to high: additive, multiplicative, unary minus,
//! integer power, atom. Whitespace is insignificant.

use std::collections::BTreeSet;
use std::fmt;

use opcalc::Cplx;

use crate::expr::{BinOp, Expr, OpKind};

/// Syntax error at a byte offset of the source.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub offset: usize,
    pub found: String,
    /// Sorted, deduplicated descriptions of acceptable tokens.
    pub expected: Vec<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at byte {}: found {}, expected one of: {}",
            self.offset,
            self.found,
            self.expected.join(", ")
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    /// Real literal with its source text.
    Num(f64, String),
    /// `bi`, or the bare `i` with value 1.
    Imag(f64),
    Ident(String),
    Sym(char),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(_, text) => format!("number `{text}`"),
            Tok::Imag(v) => format!("imaginary literal `{v}i`"),
            Tok::Ident(name) => format!("`{name}`"),
            Tok::Sym(c) => format!("`{c}`"),
            Tok::End => "end of input".into(),
        }
    }
}

const ATOM_START: [&str; 14] = [
    "number",
    "i",
    "s",
    "l",
    "h",
    "(",
    "-",
    "T",
    "tau",
    "sigma",
    "dds",
    "D",
    "Dp",
    "imaginary literal",
];

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit()
            || (c == b'.' && bytes.get(i + 1).is_some_and(u8::is_ascii_digit))
        {
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
            let text = &src[start..i];
            let value: f64 = text.parse().map_err(|_| ParseError {
                offset: start,
                found: format!("malformed number `{text}`"),
                expected: vec!["number".into()],
            })?;
            let imaginary = bytes.get(i) == Some(&b'i')
                && !bytes.get(i + 1).is_some_and(u8::is_ascii_alphanumeric);
            if imaginary {
                i += 1;
                out.push((start, Tok::Imag(value)));
            } else {
                out.push((start, Tok::Num(value, text.to_string())));
            }
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                i += 1;
            }
            let word = &src[start..i];
            out.push((
                start,
                if word == "i" {
                    Tok::Imag(1.0)
                } else {
                    Tok::Ident(word.to_string())
                },
            ));
        } else if "+-*/^()[]{}".contains(c as char) {
            out.push((i, Tok::Sym(c as char)));
            i += 1;
        } else {
            let ch = src[i..].chars().next().unwrap_or('?');
            return Err(ParseError {
                offset: i,
                found: format!("`{ch}`"),
                expected: ATOM_START.iter().map(|s| s.to_string()).collect(),
            });
        }
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    /// Tokens tried at the current position since the last advance.
    expected: BTreeSet<String>,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].1
    }

    fn advance(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        self.expected.clear();
        t
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.advance();
            true
        } else {
            self.expected.insert(c.to_string());
            false
        }
    }

    fn error(&self) -> ParseError {
        let (offset, tok) = &self.toks[self.pos];
        ParseError {
            offset: *offset,
            found: tok.describe(),
            expected: self.expected.iter().cloned().collect(),
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            Err(self.error())
        }
    }

    fn additive(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.multiplicative()?;
        loop {
            let op = if self.eat_sym('+') {
                BinOp::Add
            } else if self.eat_sym('-') {
                BinOp::Sub
            } else {
                return Ok(lhs);
            };
            lhs = Expr::bin(op, lhs, self.multiplicative()?);
        }
    }

    fn multiplicative(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = if self.eat_sym('*') {
                BinOp::Mul
            } else if self.eat_sym('/') {
                BinOp::Div
            } else {
                return Ok(lhs);
            };
            lhs = Expr::bin(op, lhs, self.unary()?);
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat_sym('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if !self.eat_sym('^') {
            return Ok(base);
        }
        let negative = self.eat_sym('-');
        let n = self.integer()?;
        let n = i32::try_from(n).map_err(|_| self.error())?;
        Ok(Expr::Pow(Box::new(base), if negative { -n } else { n }))
    }

    /// Unsigned integer literal (digits only).
    fn integer(&mut self) -> Result<i64, ParseError> {
        if let Tok::Num(_, text) = self.peek() {
            if let Ok(n) = text.parse::<u32>() {
                self.advance();
                return Ok(n.into());
            }
        }
        self.expected.insert("integer".into());
        Err(self.error())
    }

    fn real(&mut self) -> Result<f64, ParseError> {
        let negative = self.eat_sym('-');
        if !negative {
            self.eat_sym('+');
        }
        if let Tok::Num(v, _) = *self.peek() {
            self.advance();
            return Ok(if negative { -v } else { v });
        }
        self.expected.insert("number".into());
        Err(self.error())
    }

    /// `a`, `bi`, `a+bi`, `a-bi`, each with an optional leading sign.
    fn complex(&mut self) -> Result<Cplx, ParseError> {
        let negative = self.eat_sym('-');
        let sign = if negative { -1.0 } else { 1.0 };
        match *self.peek() {
            Tok::Imag(v) => {
                self.advance();
                Ok(Cplx::new(0.0, sign * v))
            }
            Tok::Num(v, _) => {
                self.advance();
                let re = sign * v;
                let im_sign = if self.eat_sym('+') {
                    1.0
                } else if self.eat_sym('-') {
                    -1.0
                } else {
                    return Ok(Cplx::new(re, 0.0));
                };
                if let Tok::Imag(v) = *self.peek() {
                    self.advance();
                    return Ok(Cplx::new(re, im_sign * v));
                }
                self.expected.insert("imaginary literal".into());
                Err(self.error())
            }
            _ => {
                self.expected.insert("number".into());
                self.expected.insert("imaginary literal".into());
                Err(self.error())
            }
        }
    }

    fn bracketed<T>(
        &mut self,
        inner: impl FnOnce(&mut Self) -> Result<T, ParseError>,
    ) -> Result<T, ParseError> {
        self.expect_sym('[')?;
        let v = inner(self)?;
        self.expect_sym(']')?;
        Ok(v)
    }

    fn argument(&mut self) -> Result<Expr, ParseError> {
        self.expect_sym('(')?;
        let e = self.additive()?;
        self.expect_sym(')')?;
        Ok(e)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let tok = self.peek().clone();
        let kind = match tok {
            Tok::Num(v, _) => {
                self.advance();
                return Ok(Expr::Num(Cplx::new(v, 0.0)));
            }
            Tok::Imag(v) => {
                self.advance();
                return Ok(Expr::Num(Cplx::new(0.0, v)));
            }
            Tok::Sym('(') => return self.argument(),
            Tok::Ident(ref name) => match name.as_str() {
                "s" | "l" => {
                    self.advance();
                    return Ok(if name == "s" { Expr::S } else { Expr::L });
                }
                "h" => {
                    self.advance();
                    if *self.peek() == Tok::Sym('^') && *self.peek_at(1) == Tok::Sym('{') {
                        self.advance();
                        self.advance();
                        let x = self.real()?;
                        self.expect_sym('}')?;
                        return Ok(Expr::HPow(x));
                    }
                    return Ok(Expr::H);
                }
                "T" => {
                    self.advance();
                    OpKind::T(self.bracketed(Self::complex)?)
                }
                "tau" => {
                    self.advance();
                    OpKind::Tau(self.bracketed(Self::real)?)
                }
                "sigma" => {
                    self.advance();
                    let d = self.bracketed(Self::integer)?;
                    OpKind::Sigma(d as u32)
                }
                "dds" | "D" | "Dp" => {
                    self.advance();
                    match name.as_str() {
                        "dds" => OpKind::Dds,
                        "D" => OpKind::D,
                        _ => OpKind::Dp,
                    }
                }
                _ => return Err(self.atom_error()),
            },
            _ => return Err(self.atom_error()),
        };
        Ok(Expr::op(kind, self.argument()?))
    }

    fn atom_error(&mut self) -> ParseError {
        self.expected
            .extend(ATOM_START.iter().map(|s| s.to_string()));
        self.error()
    }
}

/// Parses a complete expression.
pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        expected: BTreeSet::new(),
    };
    let e = p.additive()?;
    if *p.peek() != Tok::End {
        p.expected.insert("end of input".into());
        return Err(p.error());
    }
    Ok(e)
}

/// Parses a standalone complex literal such as `2`, `-0.5i` or `1-2i`.
pub fn parse_complex(src: &str) -> Result<Cplx, ParseError> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        expected: BTreeSet::new(),
    };
    let c = p.complex()?;
    if *p.peek() != Tok::End {
        p.expected.insert("end of input".into());
        return Err(p.error());
    }
    Ok(c)
}

/// Parses a comma-separated list of complex literals.
pub fn parse_complex_list(src: &str) -> Result<Vec<Cplx>, ParseError> {
    let mut out = Vec::new();
    let mut offset = 0;
    for item in src.split(',') {
        out.push(parse_complex(item).map_err(|e| ParseError {
            offset: e.offset + offset,
            ..e
        })?);
        offset += item.len() + 1;
    }
    Ok(out)
}
