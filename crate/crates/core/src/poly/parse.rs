//! Recursive-descent parser for the polynomial expression grammar:
//!
//! ```text
//! poly := term (("+"|"-") term)*
//! term := coef? ("*"? var ("^" uint)?)?
//! var  := "T"
//! coef := uint | "-" uint        (the sign only on the leading term)
//! ```
//!
//! Whitespace is ignored everywhere. Anchor templates may additionally use
//! the symbol `p` as a coefficient; it is substituted by a concrete prime.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use super::IntPoly;

/// Exponents above this are rejected rather than allocated.
pub const MAX_EXPONENT: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("syntax error at position {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

pub fn parse_poly(src: &str) -> Result<IntPoly, ParseError> {
    Parser::new(src, None).parse()
}

/// Parses a template in which `p` stands for the given prime value.
pub fn parse_poly_with_p(src: &str, p: &BigInt) -> Result<IntPoly, ParseError> {
    Parser::new(src, Some(p.clone())).parse()
}

/// True when the source uses the symbol `p` as a coefficient.
pub fn mentions_p(src: &str) -> bool {
    src.contains('p')
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    end: usize,
    p_value: Option<BigInt>,
}

impl Parser {
    fn new(src: &str, p_value: Option<BigInt>) -> Self {
        let chars: Vec<(usize, char)> = src
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .collect();
        Parser {
            chars,
            pos: 0,
            end: src.len(),
            p_value,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.end, |&(i, _)| i)
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            position: self.offset(),
            message: message.into(),
        }
    }

    fn parse(mut self) -> Result<IntPoly, ParseError> {
        if self.chars.is_empty() {
            return Err(self.error("empty expression"));
        }
        let mut coeffs: Vec<BigInt> = Vec::new();
        let mut negative = false;
        if self.peek() == Some('-') {
            negative = true;
            self.pos += 1;
        }
        loop {
            let (coef, degree) = self.term()?;
            if coeffs.len() <= degree {
                coeffs.resize(degree + 1, BigInt::zero());
            }
            if negative {
                coeffs[degree] -= coef;
            } else {
                coeffs[degree] += coef;
            }
            match self.peek() {
                None => break,
                Some('+') => negative = false,
                Some('-') => negative = true,
                Some(c) => return Err(self.unexpected(c)),
            }
            self.pos += 1;
        }
        Ok(IntPoly::new(coeffs))
    }

    fn unexpected(&self, c: char) -> ParseError {
        if c.is_alphabetic() {
            self.error(format!("unknown variable '{c}', only T is allowed"))
        } else {
            self.error(format!("unexpected character '{c}'"))
        }
    }

    fn term(&mut self) -> Result<(BigInt, usize), ParseError> {
        let coef = match self.peek() {
            Some(c) if c.is_ascii_digit() => Some(self.uint()?),
            Some('p') if self.p_value.is_some() => {
                self.pos += 1;
                self.p_value.clone()
            }
            Some('T') => None,
            Some(c) => return Err(self.unexpected(c)),
            None => return Err(self.error("expected a term")),
        };
        let star = self.peek() == Some('*');
        if star {
            if coef.is_none() {
                return Err(self.error("'*' needs a coefficient on its left"));
            }
            self.pos += 1;
        }
        match self.peek() {
            Some('T') => {
                self.pos += 1;
                let degree = if self.peek() == Some('^') {
                    self.pos += 1;
                    let at = self.offset();
                    let e = self.uint()?;
                    usize::try_from(&e)
                        .ok()
                        .filter(|&d| d <= MAX_EXPONENT)
                        .ok_or(ParseError {
                            position: at,
                            message: format!("exponent {e} exceeds {MAX_EXPONENT}"),
                        })?
                } else {
                    1
                };
                Ok((coef.unwrap_or_else(BigInt::one), degree))
            }
            Some(c) if star || c.is_alphabetic() => Err(self.unexpected(c)),
            None if star => Err(self.error("expected T after '*'")),
            _ => Ok((coef.expect("term has a coefficient or a variable"), 0)),
        }
    }

    fn uint(&mut self) -> Result<BigInt, ParseError> {
        let start = self.pos;
        let mut digits = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            digits.push(c);
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected an unsigned integer"));
        }
        Ok(digits.parse().expect("ascii digits parse"))
    }
}
