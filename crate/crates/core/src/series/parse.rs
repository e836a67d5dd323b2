//! Recursive-descent parser for series expressions in `u`:
//!
//! ```text
//! expr   := term (("+"|"-") term)*
//! term   := ("+"|"-")* factor (("*"|"/") factor)*
//! factor := base ("^" INT)?
//! base   := INT | "u" | "(" expr ")" | "sqrt" "(" expr ")"
//! ```
//!
//! Positions in errors are 1-based character offsets; end of input is
//! reported as `len + 1`.

use num_bigint::BigInt;
use thiserror::Error;

use crate::coeff::ExactComplex;

use super::{SeriesError, TruncatedSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("at position {position}: {source}")]
    Semantic { position: usize, source: SeriesError },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::Syntax { position, .. } | ParseError::Semantic { position, .. } => *position,
        }
    }
}

/// Expand `text` modulo `u^(order+1)`.
pub fn parse_series(text: &str, order: usize) -> Result<TruncatedSeries, ParseError> {
    let mut p = Parser { chars: text.chars().collect(), pos: 0, order };
    let s = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.syntax(format!("unexpected '{}'", p.chars[p.pos])));
    }
    Ok(s)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    order: usize,
}

impl Parser {
    fn syntax(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax { position: self.pos + 1, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.syntax(format!("expected '{c}'")))
        }
    }

    fn expr(&mut self) -> Result<TruncatedSeries, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<TruncatedSeries, ParseError> {
        let mut negate = false;
        loop {
            if self.eat('-') {
                negate = !negate;
            } else if !self.eat('+') {
                break;
            }
        }
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.factor()?;
            } else if self.eat('/') {
                let at = self.pos + 1;
                let den = self.factor()?;
                acc = acc.try_div(&den).map_err(|source| ParseError::Semantic { position: at, source })?;
            } else {
                break;
            }
        }
        Ok(if negate { -&acc } else { acc })
    }

    fn factor(&mut self) -> Result<TruncatedSeries, ParseError> {
        let base = self.base()?;
        if self.eat('^') {
            self.skip_ws();
            let n = self.integer()?;
            let n: u32 = n.try_into().map_err(|_| self.syntax("exponent too large"))?;
            return Ok(base.pow(n));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.syntax("expected an integer"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        Ok(digits.parse().expect("ascii digits"))
    }

    fn base(&mut self) -> Result<TruncatedSeries, ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(TruncatedSeries::constant(ExactComplex::from_rational(n.into()), self.order))
            }
            Some('u') => {
                self.pos += 1;
                Ok(TruncatedSeries::variable(self.order))
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            Some('s') if self.keyword("sqrt") => {
                let at = self.pos + 1;
                self.expect('(')?;
                let inner = self.expr()?;
                self.expect(')')?;
                inner.sqrt().map_err(|source| ParseError::Semantic { position: at, source })
            }
            Some(c) => Err(self.syntax(format!("unexpected '{c}'"))),
            None => Err(self.syntax("unexpected end of input")),
        }
    }

    fn keyword(&mut self, word: &str) -> bool {
        let end = self.pos + word.len();
        if end <= self.chars.len() && self.chars[self.pos..end].iter().copied().eq(word.chars()) {
            self.pos = end;
            true
        } else {
            false
        }
    }
}
