//! Text grammar for polynomial I/O.
//!
//! Literals are integers or rationals (`3`, `3/2`), variables are `z1..zN`,
//! operators are `+ - * ^` with parentheses; juxtaposition multiplies.
//! Canonical printing sorts terms descending under the active order, so
//! `parse(print(p)) == p`.

use super::{Coeff, Exponent, MonomialOrder, Polynomial};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub message: String,
    pub position: usize,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Token {
    Int(BigInt),
    Var(usize),
    Wedge(usize),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

pub(crate) fn tokenize(input: &str) -> Result<Vec<(Token, usize)>, ParseError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut k = 0;
    while k < bytes.len() {
        let c = bytes[k] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                k += 1;
            }
            '+' => {
                out.push((Token::Plus, k));
                k += 1;
            }
            '-' => {
                out.push((Token::Minus, k));
                k += 1;
            }
            '*' => {
                out.push((Token::Star, k));
                k += 1;
            }
            '^' => {
                out.push((Token::Caret, k));
                k += 1;
            }
            '/' => {
                out.push((Token::Slash, k));
                k += 1;
            }
            '(' => {
                out.push((Token::LParen, k));
                k += 1;
            }
            ')' => {
                out.push((Token::RParen, k));
                k += 1;
            }
            '0'..='9' => {
                let start = k;
                while k < bytes.len() && bytes[k].is_ascii_digit() {
                    k += 1;
                }
                let digits = &input[start..k];
                out.push((Token::Int(digits.parse().unwrap()), start));
            }
            'z' | 'd' => {
                let start = k;
                let wedge = c == 'd';
                if wedge {
                    k += 1;
                    if k >= bytes.len() || bytes[k] as char != 'z' {
                        return Err(ParseError {
                            message: "expected 'dz' followed by a variable number".into(),
                            position: start,
                        });
                    }
                }
                k += 1;
                let num_start = k;
                while k < bytes.len() && bytes[k].is_ascii_digit() {
                    k += 1;
                }
                if num_start == k {
                    return Err(ParseError {
                        message: "variable needs a number, e.g. z2".into(),
                        position: start,
                    });
                }
                let idx: usize = input[num_start..k].parse().map_err(|_| ParseError {
                    message: "variable index too large".into(),
                    position: start,
                })?;
                if idx == 0 {
                    return Err(ParseError {
                        message: "variable indices start at 1".into(),
                        position: start,
                    });
                }
                out.push((
                    if wedge { Token::Wedge(idx) } else { Token::Var(idx) },
                    start,
                ));
            }
            _ => {
                return Err(ParseError {
                    message: format!("unexpected character '{c}'"),
                    position: k,
                })
            }
        }
    }
    Ok(out)
}

pub(crate) struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    pub nvars: usize,
}

impl Parser {
    pub fn new(input: &str, nvars: usize) -> Result<Self, ParseError> {
        Ok(Parser {
            tokens: tokenize(input)?,
            pos: 0,
            nvars,
        })
    }

    pub fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    pub fn position(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(_, p)| *p)
            .unwrap_or(usize::MAX)
    }

    pub fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    pub fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            message: message.into(),
            position: self.position(),
        })
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    pub fn expect_end(&self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            self.err("trailing input")
        }
    }

    pub fn parse_expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut negate = false;
        if matches!(self.peek(), Some(Token::Minus)) {
            self.bump();
            negate = true;
        } else if matches!(self.peek(), Some(Token::Plus)) {
            self.bump();
        }
        let mut acc = self.parse_term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    let t = self.parse_term()?;
                    acc = acc.add(&t);
                }
                Some(Token::Minus) => {
                    self.bump();
                    let t = self.parse_term()?;
                    acc = acc.sub(&t);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    pub(crate) fn parse_term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.parse_factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.bump();
                    let f = self.parse_factor()?;
                    acc = acc.mul(&f);
                }
                // Juxtaposition multiplies: `2z1`, `z1 z2`, `3(z1+1)`.
                Some(Token::Int(_)) | Some(Token::Var(_)) | Some(Token::LParen) => {
                    let f = self.parse_factor()?;
                    acc = acc.mul(&f);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_factor(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.parse_atom()?;
        if matches!(self.peek(), Some(Token::Caret)) {
            // Only an integer exponent continues a polynomial factor; a
            // wedge after '^' belongs to the surrounding form grammar.
            if let Some((Token::Int(_), _)) = self.tokens.get(self.pos + 1) {
                self.bump();
                let e = match self.bump() {
                    Some(Token::Int(n)) => n,
                    _ => unreachable!(),
                };
                let e: u32 = e
                    .try_into()
                    .map_err(|_| ParseError {
                        message: "exponent too large".into(),
                        position: self.position(),
                    })?;
                return Ok(base.pow(e));
            }
        }
        Ok(base)
    }

    fn parse_atom(&mut self) -> Result<Polynomial, ParseError> {
        match self.bump() {
            Some(Token::Int(n)) => {
                // Rational literal when followed by '/<int>'.
                if matches!(self.peek(), Some(Token::Slash)) {
                    if let Some((Token::Int(_), _)) = self.tokens.get(self.pos + 1) {
                        self.bump();
                        let d = match self.bump() {
                            Some(Token::Int(d)) => d,
                            _ => unreachable!(),
                        };
                        if d.is_zero() {
                            return self.err("zero denominator");
                        }
                        return Ok(Polynomial::constant(self.nvars, BigRational::new(n, d)));
                    }
                }
                Ok(Polynomial::constant(self.nvars, BigRational::from(n)))
            }
            Some(Token::Var(i)) => {
                if i > self.nvars {
                    return self.err(format!("variable z{i} exceeds {} variables", self.nvars));
                }
                Ok(Polynomial::var(self.nvars, i))
            }
            Some(Token::LParen) => {
                let inner = self.parse_expr()?;
                match self.bump() {
                    Some(Token::RParen) => Ok(inner),
                    _ => self.err("expected ')'"),
                }
            }
            Some(Token::Minus) => Ok(self.parse_atom()?.neg()),
            _ => self.err("expected a literal, variable, or '('"),
        }
    }
}

/// Parse a polynomial over `z1..z{nvars}`.
pub fn parse_polynomial(input: &str, nvars: usize) -> Result<Polynomial, ParseError> {
    let mut parser = Parser::new(input, nvars)?;
    let p = parser.parse_expr()?;
    parser.expect_end()?;
    Ok(p)
}

fn format_monomial(m: &Exponent) -> String {
    let mut parts = Vec::new();
    for i in 1..=m.nvars() {
        match m.exp(i) {
            0 => {}
            1 => parts.push(format!("z{i}")),
            e => parts.push(format!("z{i}^{e}")),
        }
    }
    parts.join("*")
}

fn format_coeff(c: &Coeff) -> String {
    if c.denom().is_one() {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub(crate) fn format_polynomial(p: &Polynomial, order: &MonomialOrder) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut terms: Vec<&(Exponent, Coeff)> = p.terms().iter().collect();
    terms.sort_by(|(a, _), (b, _)| order.cmp(b, a));
    let mut out = String::new();
    for (k, (m, c)) in terms.iter().enumerate() {
        let negative = c.is_negative();
        let abs = c.abs();
        if k == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if m.is_constant() {
            out.push_str(&format_coeff(&abs));
        } else if abs.is_one() {
            out.push_str(&format_monomial(m));
        } else {
            out.push_str(&format_coeff(&abs));
            out.push('*');
            out.push_str(&format_monomial(m));
        }
    }
    out
}
