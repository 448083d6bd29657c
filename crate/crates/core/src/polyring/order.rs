use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::Monomial;
use crate::error::{Error, Result};

/// Monomial orders with `x0 > x1 > ... > x(n-1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum MonomialOrder {
    Lex,
    #[default]
    DegRevLex,
    /// Weight order counting degree in the block variables, ties broken by
    /// DegRevLex. Any monomial involving a block variable beats every monomial
    /// free of them.
    Elimination(Vec<usize>),
}

impl MonomialOrder {
    pub fn elimination(block: impl IntoIterator<Item = usize>) -> Self {
        let mut b: Vec<usize> = block.into_iter().collect();
        b.sort_unstable();
        b.dedup();
        MonomialOrder::Elimination(b)
    }

    #[inline]
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => lex(a.exponents(), b.exponents()),
            MonomialOrder::DegRevLex => degrevlex(a, b),
            MonomialOrder::Elimination(block) => {
                let wa: u64 = block.iter().map(|&i| a.exponents()[i] as u64).sum();
                let wb: u64 = block.iter().map(|&i| b.exponents()[i] as u64).sum();
                wa.cmp(&wb).then_with(|| degrevlex(a, b))
            }
        }
    }

    pub fn name(&self) -> String {
        self.to_string()
    }

    pub(crate) fn validate(&self, nvars: usize) -> Result<()> {
        if let MonomialOrder::Elimination(block) = self {
            if let Some(&bad) = block.iter().find(|&&i| i >= nvars) {
                return Err(Error::Input(format!(
                    "elimination block index {bad} out of range for {nvars} variables"
                )));
            }
        }
        Ok(())
    }
}

#[inline]
fn lex(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

#[inline]
fn degrevlex(a: &Monomial, b: &Monomial) -> Ordering {
    match a.degree().cmp(&b.degree()) {
        Ordering::Equal => {}
        o => return o,
    }
    for (x, y) in a.exponents().iter().zip(b.exponents()).rev() {
        match x.cmp(y) {
            Ordering::Equal => continue,
            // smaller exponent in the last differing variable wins
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::DegRevLex => write!(f, "degrevlex"),
            MonomialOrder::Elimination(block) => {
                let idx: Vec<String> = block.iter().map(|i| i.to_string()).collect();
                write!(f, "elim({})", idx.join(","))
            }
        }
    }
}

impl FromStr for MonomialOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        match s.as_str() {
            "lex" => Ok(MonomialOrder::Lex),
            "degrevlex" | "grevlex" | "drl" => Ok(MonomialOrder::DegRevLex),
            _ => {
                let inner = s
                    .strip_prefix("elim(")
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| Error::Input(format!("unknown monomial order '{s}'")))?;
                let block = inner
                    .split(',')
                    .filter(|t| !t.trim().is_empty())
                    .map(|t| {
                        t.trim()
                            .parse::<usize>()
                            .map_err(|_| Error::Input(format!("bad block index '{t}'")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(MonomialOrder::elimination(block))
            }
        }
    }
}
