//! Exact coefficient fields.
//!
//! A field is a small value object (`Rationals` or `PrimeField { p }`) that
//! performs arithmetic on its element type. Elements carry no context of their
//! own, so a polynomial ring stores the field once and all coefficient
//! arithmetic goes through it.

use std::fmt::{self, Debug};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which field a computation runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    ExactRationals,
    PrimeField(u64),
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::ExactRationals => write!(f, "QQ"),
            FieldSpec::PrimeField(p) => write!(f, "GF({p})"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `q`, `qq`, `rationals`, or `gf:<p>`.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        match lower.as_str() {
            "q" | "qq" | "rationals" => Ok(FieldSpec::ExactRationals),
            _ => {
                let p = lower
                    .strip_prefix("gf:")
                    .or_else(|| lower.strip_prefix("gf"))
                    .ok_or_else(|| Error::Input(format!("unknown field '{s}'")))?;
                let p: u64 = p
                    .trim_matches(|c| c == '(' || c == ')')
                    .parse()
                    .map_err(|_| Error::Input(format!("bad prime in '{s}'")))?;
                PrimeField::new(p)?;
                Ok(FieldSpec::PrimeField(p))
            }
        }
    }
}

pub trait Field: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Debug + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// Image of a rational number. Fails when the denominator is not
    /// invertible in the field.
    fn from_rational(&self, r: &BigRational) -> Result<Self::Elem>;

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_rational(&BigRational::from_integer(BigInt::from(n)))
            .expect("integers always embed")
    }

    /// Canonical rational representative (symmetric residue for prime fields).
    fn to_rational(&self, a: &Self::Elem) -> BigRational;

    /// Residue modulo `p`, used to move integer-defined data into GF(p).
    fn reduce_mod(&self, a: &Self::Elem, p: u64) -> Result<u64>;

    fn is_negative(&self, a: &Self::Elem) -> bool {
        self.to_rational(a).is_negative()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::ExactRationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn from_rational(&self, r: &BigRational) -> Result<BigRational> {
        Ok(r.clone())
    }
    fn to_rational(&self, a: &BigRational) -> BigRational {
        a.clone()
    }
    fn reduce_mod(&self, a: &BigRational, p: u64) -> Result<u64> {
        let m = BigInt::from(p);
        let num = a.numer().mod_floor(&m).to_u64().unwrap_or(0);
        let den = a.denom().mod_floor(&m).to_u64().unwrap_or(0);
        if den == 0 {
            return Err(Error::Domain(format!(
                "denominator of {a} vanishes modulo {p}"
            )));
        }
        let f = PrimeField { p };
        Ok(f.mul(&num, &f.inv(&den).expect("nonzero")))
    }
    fn is_negative(&self, a: &BigRational) -> bool {
        a.is_negative()
    }
}

/// GF(p) for a prime `p < 2^31`, elements stored as residues in `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub const MAX_PRIME: u64 = (1 << 31) - 1;

    pub fn new(p: u64) -> Result<Self> {
        if p > Self::MAX_PRIME {
            return Err(Error::Domain(format!("prime {p} exceeds {}", Self::MAX_PRIME)));
        }
        if !is_prime(p) {
            return Err(Error::Domain(format!("{p} is not prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::PrimeField(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn is_one(&self, a: &u64) -> bool {
        *a == 1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // extended Euclid on signed values
        let (mut r0, mut r1) = (self.p as i64, *a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Some(t0.rem_euclid(self.p as i64) as u64)
    }
    fn from_rational(&self, r: &BigRational) -> Result<u64> {
        Rationals.reduce_mod(r, self.p)
    }
    fn to_rational(&self, a: &u64) -> BigRational {
        let v = if *a > self.p / 2 {
            *a as i64 - self.p as i64
        } else {
            *a as i64
        };
        BigRational::from_integer(BigInt::from(v))
    }
    fn reduce_mod(&self, a: &u64, p: u64) -> Result<u64> {
        if p == self.p {
            Ok(*a)
        } else {
            Err(Error::Context(format!(
                "cannot move GF({}) data into GF({p})",
                self.p
            )))
        }
    }
    fn is_negative(&self, a: &u64) -> bool {
        *a > self.p / 2
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverse() {
        let f = PrimeField::new(32003).unwrap();
        for a in [1u64, 2, 3, 17, 32002, 12345] {
            assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
        }
        assert_eq!(f.inv(&0), None);
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(PrimeField::new(32004).is_err());
        assert!(PrimeField::new(1).is_err());
    }

    #[test]
    fn rational_reduction() {
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(Rationals.reduce_mod(&half, 5).unwrap(), 3);
        assert!(Rationals.reduce_mod(&half, 2).is_err());
        let minus_one = BigRational::from_integer((-1).into());
        assert_eq!(Rationals.reduce_mod(&minus_one, 7).unwrap(), 6);
    }

    #[test]
    fn symmetric_representative() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.to_rational(&6), BigRational::from_integer((-1).into()));
        assert_eq!(f.to_rational(&3), BigRational::from_integer(3.into()));
    }

    #[test]
    fn field_spec_parsing() {
        assert_eq!("q".parse::<FieldSpec>().unwrap(), FieldSpec::ExactRationals);
        assert_eq!(
            "gf:32003".parse::<FieldSpec>().unwrap(),
            FieldSpec::PrimeField(32003)
        );
        assert!("gf:10".parse::<FieldSpec>().is_err());
        assert!("reals".parse::<FieldSpec>().is_err());
    }
}
