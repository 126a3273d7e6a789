//! Text grammar for integer polynomials in the variable `t`:
//!
//! ```text
//! poly := sign? term (('+' | '-') term)*
//! term := int | int '*'? 't' ('^' uint)? | 't' ('^' uint)?
//! ```
//!
//! Whitespace is allowed between any two tokens. Repeated powers are summed.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use super::IntPolynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty polynomial")]
    Empty,
    #[error("syntax error at position {position}: expected {expected}")]
    Syntax {
        position: usize,
        expected: &'static str,
    },
    #[error("rational coefficient at position {position}; integer coefficients required")]
    RationalCoefficient { position: usize },
    #[error("exponent at position {position} is too large")]
    ExponentOverflow { position: usize },
}

const MAX_EXPONENT: usize = 1 << 20;

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
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

    fn digits(&mut self) -> Option<(usize, String)> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        (self.pos > start).then(|| {
            (
                start,
                String::from_utf8_lossy(&self.src[start..self.pos]).into_owned(),
            )
        })
    }

    fn syntax(&self, expected: &'static str) -> ParseError {
        ParseError::Syntax {
            position: self.pos,
            expected,
        }
    }

    /// Parses one unsigned term, returning `(coefficient, power)`.
    fn term(&mut self) -> Result<(BigInt, usize), ParseError> {
        let coeff = match self.digits() {
            Some((_, d)) => {
                let c: BigInt = d.parse().unwrap();
                if self.peek() == Some(b'/') {
                    return Err(ParseError::RationalCoefficient { position: self.pos });
                }
                let star = self.eat(b'*');
                if self.peek() != Some(b't') {
                    if star {
                        return Err(self.syntax("'t' after '*'"));
                    }
                    return Ok((c, 0));
                }
                c
            }
            None => {
                if self.peek() != Some(b't') {
                    return Err(self.syntax("integer or 't'"));
                }
                BigInt::one()
            }
        };
        self.pos += 1; // 't'
        if !self.eat(b'^') {
            return Ok((coeff, 1));
        }
        let Some((start, d)) = self.digits() else {
            return Err(self.syntax("exponent after '^'"));
        };
        let power = d
            .parse::<usize>()
            .ok()
            .filter(|&e| e <= MAX_EXPONENT)
            .ok_or(ParseError::ExponentOverflow { position: start })?;
        Ok((coeff, power))
    }
}

/// Parses a polynomial such as `"8t^4 - 26t^3 + 35t^2 - 26t + 8"`.
pub fn parse_poly(s: &str) -> Result<IntPolynomial, ParseError> {
    let mut cur = Cursor {
        src: s.as_bytes(),
        pos: 0,
    };
    if cur.peek().is_none() {
        return Err(ParseError::Empty);
    }
    let mut coeffs: Vec<BigInt> = Vec::new();
    let mut negative = if cur.eat(b'-') {
        true
    } else {
        cur.eat(b'+');
        false
    };
    loop {
        let (c, k) = cur.term()?;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, BigInt::zero());
        }
        if negative {
            coeffs[k] -= c;
        } else {
            coeffs[k] += c;
        }
        match cur.peek() {
            None => break,
            Some(b'+') => negative = false,
            Some(b'-') => negative = true,
            Some(_) => return Err(cur.syntax("'+', '-' or end of input")),
        }
        cur.pos += 1;
    }
    Ok(IntPolynomial::new(coeffs))
}
