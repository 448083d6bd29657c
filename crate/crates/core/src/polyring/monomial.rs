use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

pub(crate) type ExpVec = SmallVec<[u32; 12]>;

/// Exponent vector over a fixed variable set, with its total degree cached.
///
/// Exponents are `u32` and every product is checked; overflow is reported as
/// [`Error::ExponentOverflow`], never wrapped.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: ExpVec,
    degree: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
            degree: 0,
        }
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[index] = 1;
        m.degree = 1;
        m
    }

    pub fn new(exps: &[u32]) -> Result<Self> {
        let degree = exps
            .iter()
            .try_fold(0u32, |acc, &e| acc.checked_add(e))
            .ok_or_else(|| Error::ExponentOverflow("total degree exceeds u32".into()))?;
        Ok(Monomial {
            exps: SmallVec::from_slice(exps),
            degree,
        })
    }

    #[inline]
    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    /// Indices of variables with a positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    /// `self | other`, componentwise `self <= other`.
    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        let mut exps = ExpVec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_add(*b).ok_or_else(|| overflow(self, other))?);
        }
        let degree = self
            .degree
            .checked_add(other.degree)
            .ok_or_else(|| overflow(self, other))?;
        Ok(Monomial { exps, degree })
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect(),
            degree: self.degree - other.degree,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: ExpVec = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.max(b))
            .collect();
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn pow(&self, e: u32) -> Result<Monomial> {
        let mut exps = ExpVec::with_capacity(self.exps.len());
        for a in &self.exps {
            exps.push(a.checked_mul(e).ok_or_else(|| {
                Error::ExponentOverflow(format!("{self:?}^{e}"))
            })?);
        }
        let degree = self
            .degree
            .checked_mul(e)
            .ok_or_else(|| Error::ExponentOverflow(format!("{self:?}^{e}")))?;
        Ok(Monomial { exps, degree })
    }

    /// Same exponents followed by `extra` zero slots.
    pub fn extended(&self, extra: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps.extend(std::iter::repeat_n(0, extra));
        Monomial {
            exps,
            degree: self.degree,
        }
    }

    pub(crate) fn fmt_with(&self, names: &[String], f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", names[i])?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

fn overflow(a: &Monomial, b: &Monomial) -> Error {
    Error::ExponentOverflow(format!("{a:?} * {b:?}"))
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisibility_and_quotient() {
        let a = Monomial::new(&[1, 0, 2]).unwrap();
        let b = Monomial::new(&[2, 1, 2]).unwrap();
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(b.div(&a).unwrap().exponents(), &[1, 1, 0]);
        assert!(a.div(&b).is_none());
    }

    #[test]
    fn lcm_and_coprime() {
        let a = Monomial::new(&[1, 0, 2]).unwrap();
        let b = Monomial::new(&[0, 3, 1]).unwrap();
        assert_eq!(a.lcm(&b).exponents(), &[1, 3, 2]);
        assert_eq!(a.lcm(&b).degree(), 6);
        assert!(!a.is_coprime(&b));
        assert!(Monomial::var(3, 0).is_coprime(&Monomial::var(3, 1)));
    }

    #[test]
    fn overflow_is_an_error() {
        let big = Monomial::new(&[u32::MAX, 0]).unwrap();
        assert!(matches!(
            big.mul(&Monomial::var(2, 0)),
            Err(Error::ExponentOverflow(_))
        ));
        assert!(Monomial::new(&[u32::MAX, 1]).is_err());
        assert!(Monomial::var(2, 1).pow(u32::MAX).is_ok());
        assert!(Monomial::new(&[2, 0]).unwrap().pow(u32::MAX).is_err());
    }
}
