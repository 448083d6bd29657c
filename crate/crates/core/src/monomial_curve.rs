//! Exponent arithmetic for monomial parametrizations.
//!
//! A binomial `x^a - x^b` lies in the toric ideal of a parametrization
//! exactly when `a` and `b` have the same image under its exponent matrix.
//! Exponents are arbitrary precision and never touch the Gröbner kernel.

use std::time::Instant;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyring::parse;
use crate::report::{GeneratorResult, VerificationReport, Verdict};

/// Row `i` holds the exponents of the parameters in coordinate `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialParametrization {
    coordinates: Vec<String>,
    parameters: Vec<String>,
    rows: Vec<Vec<BigUint>>,
}

/// `plus - minus` over the ambient coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Binomial {
    pub plus: Vec<BigUint>,
    pub minus: Vec<BigUint>,
}

impl MonomialParametrization {
    pub fn new(coordinates: Vec<String>, parameters: Vec<String>, rows: Vec<Vec<BigUint>>) -> Result<Self> {
        if rows.len() != coordinates.len() {
            return Err(Error::Context(format!(
                "{} coordinates but {} exponent rows",
                coordinates.len(),
                rows.len()
            )));
        }
        for (name, row) in coordinates.iter().zip(&rows) {
            if row.len() != parameters.len() {
                return Err(Error::Context(format!(
                    "row of {name} has {} entries, expected {}",
                    row.len(),
                    parameters.len()
                )));
            }
            if row.iter().all(Zero::is_zero) {
                return Err(Error::Input(format!("{name} is parametrized by a constant")));
            }
        }
        for names in [&coordinates, &parameters] {
            for (k, n) in names.iter().enumerate() {
                if !parse::is_identifier(n) || names[..k].contains(n) {
                    return Err(Error::Input(format!("bad or repeated name '{n}'")));
                }
            }
        }
        Ok(MonomialParametrization {
            coordinates,
            parameters,
            rows,
        })
    }

    pub fn coordinates(&self) -> &[String] {
        &self.coordinates
    }

    pub fn parameters(&self) -> &[String] {
        &self.parameters
    }

    pub fn rows(&self) -> &[Vec<BigUint>] {
        &self.rows
    }

    /// Parameter exponents of `x^a` after substitution.
    pub fn image(&self, a: &[BigUint]) -> Result<Vec<BigUint>> {
        if a.len() != self.coordinates.len() {
            return Err(Error::Context(format!(
                "exponent vector of length {} over {} coordinates",
                a.len(),
                self.coordinates.len()
            )));
        }
        let mut out = vec![BigUint::zero(); self.parameters.len()];
        for (ai, row) in a.iter().zip(&self.rows) {
            for (o, r) in out.iter_mut().zip(row) {
                *o += ai * r;
            }
        }
        Ok(out)
    }

    /// Reads `x^a - x^b` in canonical text form. Both sides must be monic
    /// monomials with coefficients `+1` and `-1`.
    pub fn parse_binomial(&self, text: &str) -> Result<Binomial> {
        let terms = parse::parse_raw(text)?;
        let [p, m] = terms.as_slice() else {
            return Err(Error::Input(format!("'{text}' is not a binomial")));
        };
        let one = num_rational::BigRational::one();
        if p.coeff != one || m.coeff != -one {
            return Err(Error::Input(format!("'{text}' must read x^a - x^b")));
        }
        Ok(Binomial {
            plus: self.exponent_vector(&p.factors)?,
            minus: self.exponent_vector(&m.factors)?,
        })
    }

    fn exponent_vector(&self, factors: &[(String, BigUint)]) -> Result<Vec<BigUint>> {
        let mut v = vec![BigUint::zero(); self.coordinates.len()];
        for (name, e) in factors {
            let i = self
                .coordinates
                .iter()
                .position(|c| c == name)
                .ok_or_else(|| Error::Input(format!("unknown coordinate '{name}'")))?;
            v[i] += e;
        }
        Ok(v)
    }

    pub fn format_binomial(&self, b: &Binomial) -> String {
        format!("{} - {}", self.format_monomial(&b.plus), self.format_monomial(&b.minus))
    }

    fn format_monomial(&self, a: &[BigUint]) -> String {
        let parts: Vec<String> = self
            .coordinates
            .iter()
            .zip(a)
            .filter(|(_, e)| !e.is_zero())
            .map(|(n, e)| if e.is_one() { n.clone() } else { format!("{n}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// The parametrization kills `b`.
pub fn binomial_in_toric(p: &MonomialParametrization, b: &Binomial) -> Result<bool> {
    Ok(p.image(&b.plus)? == p.image(&b.minus)?)
}

/// Both sides have the same total parameter degree.
pub fn homogeneity_check(p: &MonomialParametrization, b: &Binomial) -> Result<bool> {
    let total = |v: Vec<BigUint>| v.into_iter().fold(BigUint::zero(), |a, x| a + x);
    Ok(total(p.image(&b.plus)?) == total(p.image(&b.minus)?))
}

/// Exponent entry in a fixture: a JSON number or a decimal string.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Exponent {
    Small(u64),
    Big(String),
}

impl Exponent {
    fn value(&self) -> Result<BigUint> {
        match self {
            Exponent::Small(n) => Ok(BigUint::from(*n)),
            Exponent::Big(s) => s
                .parse()
                .map_err(|_| Error::Input(format!("'{s}' is not a non-negative integer"))),
        }
    }
}

/// JSON fixture: a parametrization and the binomials claimed to vanish on it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ToricFixture {
    pub coordinates: Vec<String>,
    pub parameters: Vec<String>,
    pub exponents: Vec<Vec<Exponent>>,
    pub binomials: Vec<String>,
}

impl ToricFixture {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Input(format!("toric fixture: {e}")))
    }

    pub fn load(&self) -> Result<(MonomialParametrization, Vec<Binomial>)> {
        let rows = self
            .exponents
            .iter()
            .map(|r| r.iter().map(Exponent::value).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let p = MonomialParametrization::new(self.coordinates.clone(), self.parameters.clone(), rows)?;
        let bs = self
            .binomials
            .iter()
            .map(|s| p.parse_binomial(s))
            .collect::<Result<Vec<_>>>()?;
        Ok((p, bs))
    }

    /// Both checks for every binomial.
    pub fn check(&self) -> Result<VerificationReport> {
        let start = Instant::now();
        let (p, bs) = self.load()?;
        let mut report = VerificationReport::new("binomials vanish on the parametrization", Verdict::True);
        for b in &bs {
            let name = p.format_binomial(b);
            let (lhs, rhs) = (p.image(&b.plus)?, p.image(&b.minus)?);
            let show = |v: &[BigUint]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
            report.per_generator.push(GeneratorResult {
                generator: name.clone(),
                check: "toric".into(),
                result: Verdict::from_bool(binomial_in_toric(&p, b)?),
                power: None,
                detail: Some(format!("parameter degrees ({}) vs ({})", show(&lhs), show(&rhs))),
            });
            report.per_generator.push(GeneratorResult {
                generator: name,
                check: "homogeneous".into(),
                result: Verdict::from_bool(homogeneity_check(&p, b)?),
                power: None,
                detail: None,
            });
        }
        report.verdict = Verdict::all(report.per_generator.iter().map(|g| g.result));
        Ok(report.timed(start))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve() -> MonomialParametrization {
        let n = |v: &[u64]| v.iter().map(|&x| BigUint::from(x)).collect::<Vec<_>>();
        MonomialParametrization::new(
            ["x1", "x2", "y1", "y2"].map(String::from).to_vec(),
            ["u1", "u2"].map(String::from).to_vec(),
            vec![n(&[534, 0]), n(&[0, 534]), n(&[245, 289]), n(&[144, 390])],
        )
        .unwrap()
    }

    #[test]
    fn first_binomial_vanishes() {
        let c = curve();
        let b = c.parse_binomial("y1^42 - x1^19*x2^22*y2").unwrap();
        assert_eq!(c.image(&b.plus).unwrap(), [BigUint::from(10290u32), BigUint::from(12138u32)]);
        assert!(binomial_in_toric(&c, &b).unwrap());
        assert!(homogeneity_check(&c, &b).unwrap());
        let swapped = Binomial {
            plus: b.minus.clone(),
            minus: b.plus.clone(),
        };
        assert!(binomial_in_toric(&c, &swapped).unwrap());
        assert_eq!(c.format_binomial(&b), "y1^42 - x1^19*x2^22*y2");
    }

    #[test]
    fn negative_cases() {
        let c = curve();
        let b = c.parse_binomial("y1 - y2").unwrap();
        assert!(!binomial_in_toric(&c, &b).unwrap());
        assert!(homogeneity_check(&c, &b).unwrap());
        let b = c.parse_binomial("y1 - x1^2").unwrap();
        assert!(!homogeneity_check(&c, &b).unwrap());
        let b = c.parse_binomial("y1*x1 - x1*y1").unwrap();
        assert!(binomial_in_toric(&c, &b).unwrap());
    }

    #[test]
    fn malformed_input() {
        let c = curve();
        assert!(c.parse_binomial("y1 + y2").is_err());
        assert!(c.parse_binomial("y1 - y2 - x1").is_err());
        assert!(c.parse_binomial("y1 - z").is_err());
        assert!(c.image(&[BigUint::one()]).is_err());
        let zero_row = MonomialParametrization::new(vec!["x".into()], vec!["u".into()], vec![vec![BigUint::zero()]]);
        assert!(zero_row.is_err());
    }

    #[test]
    fn huge_exponents() {
        let text = r#"{"coordinates": ["x", "y"], "parameters": ["u"],
            "exponents": [[2], ["340282366920938463463374607431768211456"]],
            "binomials": ["x^170141183460469231731687303715884105728 - y"]}"#;
        let rep = ToricFixture::from_json(text).unwrap().check().unwrap();
        assert!(rep.passed(), "{rep}");
    }
}
