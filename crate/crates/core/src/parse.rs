//! Text grammar for polynomials.
//!
//! ```text
//! poly   := ["-"] term (("+" | "-") term)*
//! term   := factor ("*" factor)*
//! factor := int ["/" int] | "(" complex ")" | name ["^" int]
//! ```
//! Complex literals look like `(1/2-3i)`, `(i)` or `(-2/3i)`. Whitespace is
//! ignored everywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use thiserror::Error;

use crate::field::Field;
use crate::monomial::Monomial;
use crate::poly::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected {found} at offset {offset} in `{text}`")]
    Unexpected { text: String, offset: usize, found: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("coefficient `{0}` needs a square root of -1 in the field")]
    NeedsI(String),
    #[error("coefficient `{0}` is not defined in the field")]
    BadCoefficient(String),
    #[error("{0}")]
    Format(String),
}

struct Cursor<'a> {
    text: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { text, chars: text.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0 }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.pos += 1;
        c
    }

    fn error(&self) -> ParseError {
        ParseError::Unexpected {
            text: self.text.to_string(),
            offset: self.pos,
            found: self.peek().map(|c| format!("`{c}`")).unwrap_or_else(|| "end of input".into()),
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error())
        }
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error());
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("digits"))
    }

    fn rational(&mut self) -> Result<BigRational, ParseError> {
        let num = self.integer()?;
        if self.peek() == Some('/') {
            self.pos += 1;
            let den = self.integer()?;
            if den == BigInt::from(0) {
                return Err(ParseError::BadCoefficient(format!("{num}/0")));
            }
            Ok(BigRational::new(num, den))
        } else {
            Ok(BigRational::from_integer(num))
        }
    }

    fn name(&mut self) -> Option<String> {
        let start = self.pos;
        if !self.peek().is_some_and(|c| c.is_alphabetic() || c == '_') {
            return None;
        }
        while self.peek().is_some_and(|c| c.is_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        Some(self.chars[start..self.pos].iter().collect())
    }
}

fn lift<F: Field>(q: &BigRational) -> Result<F, ParseError> {
    F::from_rational(q).ok_or_else(|| ParseError::BadCoefficient(q.to_string()))
}

/// Parses the inside of `( ... )`: a sum of rational and imaginary parts.
fn complex<F: Field>(cur: &mut Cursor) -> Result<F, ParseError> {
    let start = cur.pos;
    let mut acc = F::zero();
    let mut first = true;
    loop {
        let negative = match cur.peek() {
            Some('-') => {
                cur.bump();
                true
            }
            Some('+') if !first => {
                cur.bump();
                false
            }
            _ if first => false,
            _ => break,
        };
        first = false;
        let mag = if cur.peek().is_some_and(|c| c.is_ascii_digit()) { cur.rational()? } else { BigRational::one() };
        let mut part = lift::<F>(&mag)?;
        if cur.peek() == Some('*') {
            cur.bump();
        }
        if cur.peek() == Some('i') {
            cur.bump();
            let text: String = cur.chars[start..cur.pos].iter().collect();
            let i = F::sqrt_minus_one().ok_or(ParseError::NeedsI(text))?;
            part = part.mul(&i);
        }
        if negative {
            part = part.neg();
        }
        acc = acc.add(&part);
        if cur.peek() == Some(')') {
            break;
        }
    }
    Ok(acc)
}

fn term<F: Field>(cur: &mut Cursor, names: &[String]) -> Result<(Monomial, F), ParseError> {
    let mut coeff = F::one();
    let mut exps = vec![0u32; names.len()];
    loop {
        match cur.peek() {
            Some(c) if c.is_ascii_digit() => {
                let q = cur.rational()?;
                coeff = coeff.mul(&lift::<F>(&q)?);
            }
            Some('(') => {
                cur.bump();
                let c = complex::<F>(cur)?;
                cur.expect(')')?;
                coeff = coeff.mul(&c);
            }
            _ => {
                let name = cur.name().ok_or_else(|| cur.error())?;
                let k = names.iter().position(|n| *n == name).ok_or(ParseError::UnknownVariable(name))?;
                let e = if cur.peek() == Some('^') {
                    cur.bump();
                    let e = cur.integer()?;
                    u32::try_from(e).map_err(|_| cur.error())?
                } else {
                    1
                };
                exps[k] += e;
            }
        }
        if cur.peek() == Some('*') {
            cur.bump();
        } else {
            break;
        }
    }
    Ok((Monomial::from_exponents(&exps), coeff))
}

/// Parses a polynomial in the variables `names`.
pub fn parse_polynomial<F: Field>(text: &str, names: &[String]) -> Result<Polynomial<F>, ParseError> {
    let mut cur = Cursor::new(text);
    let mut terms = Vec::new();
    let mut negative = false;
    if cur.peek() == Some('-') {
        cur.bump();
        negative = true;
    } else if cur.peek() == Some('+') {
        cur.bump();
    }
    loop {
        let (m, c) = term::<F>(&mut cur, names)?;
        terms.push((m, if negative { c.neg() } else { c }));
        match cur.bump() {
            None => break,
            Some('+') => negative = false,
            Some('-') => negative = true,
            Some(_) => {
                cur.pos -= 1;
                return Err(cur.error());
            }
        }
    }
    Ok(Polynomial::from_terms(names.len(), terms))
}

/// Splits `key: value`, requiring the given key.
pub(crate) fn keyed<'a>(line: Option<&'a str>, key: &str) -> Result<&'a str, ParseError> {
    let line = line.ok_or_else(|| ParseError::Format(format!("missing `{key}:` line")))?;
    line.strip_prefix(key)
        .and_then(|r| r.strip_prefix(':'))
        .map(str::trim)
        .ok_or_else(|| ParseError::Format(format!("expected `{key}:`, found `{line}`")))
}

/// Comma separated list; the empty string is the empty list.
pub(crate) fn split_list(s: &str) -> Vec<&str> {
    if s.trim().is_empty() {
        Vec::new()
    } else {
        s.split(',').map(str::trim).collect()
    }
}

pub(crate) fn int_list(s: &str) -> Result<Vec<i64>, ParseError> {
    split_list(s)
        .into_iter()
        .map(|t| t.parse::<i64>().map_err(|_| ParseError::Format(format!("not an integer: `{t}`"))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Gaussian, Rational, F65537};

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn roundtrip_through_formatter() {
        let n = names(&["x", "y", "u", "v", "t"]);
        for text in ["x^2 + u*v", "-3/2*x - u - 1", "x^2 + y^2 + u*v", "t^3", "0", "(i)*y + x", "(1/2-3i)*x*t - (2/3i)"]
        {
            let p: Polynomial<Gaussian> = parse_polynomial(text, &n).unwrap();
            let again: Polynomial<Gaussian> = parse_polynomial(&p.format(&n), &n).unwrap();
            assert_eq!(p, again, "{text}");
        }
    }

    #[test]
    fn whitespace_and_products() {
        let n = names(&["x", "y"]);
        let p: Polynomial<Rational> = parse_polynomial(" 2 * x ^ 2 *y - x*x*y ", &n).unwrap();
        assert_eq!(p.format(&n), "x^2*y");
    }

    #[test]
    fn errors() {
        let n = names(&["x"]);
        assert!(matches!(parse_polynomial::<Rational>("z", &n), Err(ParseError::UnknownVariable(_))));
        assert!(matches!(parse_polynomial::<Rational>("(i)*x", &n), Err(ParseError::NeedsI(_))));
        assert!(parse_polynomial::<Rational>("x +", &n).is_err());
        assert!(parse_polynomial::<Rational>("1/0", &n).is_err());
        let p: Polynomial<F65537> = parse_polynomial("(i)*x", &n).unwrap();
        assert_eq!(p.len(), 1);
    }
}
