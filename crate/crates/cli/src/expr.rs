//! Integer polynomials in `x` written as text, e.g. `x^2+4x-2` or `x^3 - 3*x + 3`.

use std::fmt;

use eisenstein_core::IntPoly;
use num_bigint::BigInt;

/// Error with the byte offset into the source text.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at position {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

/// Parsed polynomial together with the text it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyExpr {
    pub source: String,
    pub poly: IntPoly,
}

impl fmt::Display for PolyExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

struct Lexer {
    chars: Vec<(usize, char)>,
    at: usize,
    len: usize,
}

impl Lexer {
    fn new(src: &str) -> Self {
        Lexer {
            chars: src
                .char_indices()
                .filter(|(_, c)| !c.is_whitespace())
                .collect(),
            at: 0,
            len: src.len(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|&(_, c)| c)
    }

    fn pos(&self) -> usize {
        self.chars.get(self.at).map(|&(i, _)| i).unwrap_or(self.len)
    }

    fn bump(&mut self) {
        self.at += 1;
    }

    fn fail<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn number(&mut self) -> Option<BigInt> {
        let mut digits = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            digits.push(c);
            self.bump();
        }
        digits.parse().ok()
    }

    /// `coef | coef x [^ k] | coef * x [^ k] | x [^ k]`
    fn term(&mut self) -> Result<(BigInt, usize), ParseError> {
        let coef = self.number();
        let mut has_x = false;
        if coef.is_some() && self.peek() == Some('*') {
            self.bump();
            if !matches!(self.peek(), Some('x' | 'X')) {
                return self.fail("expected x after '*'");
            }
        }
        if matches!(self.peek(), Some('x' | 'X')) {
            self.bump();
            has_x = true;
        }
        if coef.is_none() && !has_x {
            return match self.peek() {
                Some(c) => self.fail(format!("expected a term, found '{}'", c)),
                None => self.fail("expected a term, found end of input"),
            };
        }
        let mut exp = usize::from(has_x);
        if has_x && self.peek() == Some('^') {
            self.bump();
            let at = self.pos();
            match self.number() {
                Some(k) => {
                    exp = usize::try_from(k).map_err(|_| ParseError {
                        pos: at,
                        msg: "exponent too large".into(),
                    })?
                }
                None => return self.fail("expected an exponent after '^'"),
            }
        }
        Ok((coef.unwrap_or_else(|| BigInt::from(1)), exp))
    }
}

pub fn parse_poly(text: &str) -> Result<PolyExpr, ParseError> {
    let mut lx = Lexer::new(text);
    let mut coeffs: Vec<BigInt> = Vec::new();
    let mut first = true;
    loop {
        let sign = match lx.peek() {
            Some('+') => {
                lx.bump();
                1
            }
            Some('-') => {
                lx.bump();
                -1
            }
            None if first => return lx.fail("empty polynomial"),
            None => break,
            Some(c) if !first => return lx.fail(format!("expected '+' or '-', found '{}'", c)),
            Some(_) => 1,
        };
        first = false;
        let (c, k) = lx.term()?;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, BigInt::from(0));
        }
        coeffs[k] += c * sign;
    }
    Ok(PolyExpr {
        source: text.to_string(),
        poly: IntPoly::new(coeffs),
    })
}
