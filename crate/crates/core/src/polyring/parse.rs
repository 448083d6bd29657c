//! Reader for the canonical polynomial text form: `X3*X5 - X4^2`,
//! `1/2*X1^3 + 7`, with explicit `*` and `^`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A term before variable names are resolved against a ring. Exponents are
/// unbounded here; the ring decides whether they fit.
#[derive(Debug, Clone, PartialEq)]
pub struct RawTerm {
    pub coeff: BigRational,
    pub factors: Vec<(String, BigUint)>,
}

pub fn parse_raw(input: &str) -> Result<Vec<RawTerm>> {
    let mut p = Parser {
        src: input.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    if p.at_end() {
        return Err(p.err("empty polynomial"));
    }
    let mut terms = Vec::new();
    let mut sign = match p.peek() {
        Some(b'-') => {
            p.pos += 1;
            -1
        }
        Some(b'+') => {
            p.pos += 1;
            1
        }
        _ => 1,
    };
    loop {
        let mut t = p.term()?;
        if sign < 0 {
            t.coeff = -t.coeff;
        }
        terms.push(t);
        p.skip_ws();
        match p.peek() {
            None => break,
            Some(b'+') => sign = 1,
            Some(b'-') => sign = -1,
            Some(c) => return Err(p.err(&format!("unexpected '{}'", c as char))),
        }
        p.pos += 1;
    }
    Ok(terms)
}

/// Names accepted as variables by the parser.
pub fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Every variable name used in `polys`, in natural order (`X2` before `X10`).
pub fn infer_variables(polys: &[&str]) -> Result<Vec<String>> {
    let mut names = std::collections::BTreeSet::new();
    for p in polys {
        for t in parse_raw(p)? {
            names.extend(t.factors.into_iter().map(|(n, _)| n));
        }
    }
    let mut names: Vec<String> = names.into_iter().collect();
    names.sort_by(|a, b| natural_key(a).cmp(&natural_key(b)));
    Ok(names)
}

fn natural_key(name: &str) -> (&str, usize, &str) {
    let stem = name.trim_end_matches(|c: char| c.is_ascii_digit());
    let digits = &name[stem.len()..];
    (stem, digits.len(), digits)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn term(&mut self) -> Result<RawTerm> {
        let mut coeff = BigRational::one();
        let mut factors = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let num = self.natural()?;
                    self.skip_ws();
                    let value = if self.peek() == Some(b'/') {
                        self.pos += 1;
                        self.skip_ws();
                        let den = self.natural()?;
                        if den.is_zero() {
                            return Err(self.err("zero denominator"));
                        }
                        BigRational::new(BigInt::from(num), BigInt::from(den))
                    } else {
                        BigRational::from_integer(BigInt::from(num))
                    };
                    coeff *= value;
                }
                Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                    let start = self.pos;
                    while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_')
                    {
                        self.pos += 1;
                    }
                    let name = std::str::from_utf8(&self.src[start..self.pos])
                        .expect("ascii")
                        .to_string();
                    self.skip_ws();
                    let exp = if self.peek() == Some(b'^') {
                        self.pos += 1;
                        self.skip_ws();
                        self.natural()?
                    } else {
                        BigUint::one()
                    };
                    factors.push((name, exp));
                }
                _ => return Err(self.err("expected a number or a variable")),
            }
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(RawTerm { coeff, factors })
    }

    fn natural(&mut self) -> Result<BigUint> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        Ok(digits.parse().expect("digits"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_scroll_polynomial() {
        let t = parse_raw("X5*X8^2 - 2*X6*X7*X8 + X7^3").unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t[1].coeff, BigRational::from_integer((-2).into()));
        assert_eq!(t[2].factors, vec![("X7".to_string(), BigUint::from(3u32))]);
    }

    #[test]
    fn parses_fractions_and_leading_sign() {
        let t = parse_raw("-1/2*x + 3").unwrap();
        assert_eq!(t[0].coeff, BigRational::new((-1).into(), 2.into()));
        assert!(t[1].factors.is_empty());
    }

    #[test]
    fn natural_variable_order() {
        let v = infer_variables(&["X10*X2 + y", "X1 - X2^3"]).unwrap();
        assert_eq!(v, ["X1", "X2", "X10", "y"]);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_raw("").is_err());
        assert!(parse_raw("X1 +").is_err());
        assert!(parse_raw("X1 ** X2").is_err());
        assert!(parse_raw("1/0").is_err());
        assert!(parse_raw("X1 (X2)").is_err());
    }
}
