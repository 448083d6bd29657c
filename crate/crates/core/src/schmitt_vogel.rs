//! Layered-partition criterion for radical equality.
//!
//! Given layers `P_0, ..., P_r` of polynomials where `P_0` is a single
//! element and, for every `l > 0` and every pair `p ≠ p''` in `P_l`, some
//! `p'` in an earlier layer has `(p·p'')^m ∈ (p')` for some `m ≥ 1`, the
//! radical of the ideal generated by all layers equals the radical of the
//! layer sums `q_l = Σ_{p ∈ P_l} p^{e(p)}`.

use std::collections::BTreeMap;
use std::time::Instant;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, Rationals};
use crate::groebner::{self, GbConfig, IdealGens};
use crate::polyring::{parse, MonomialOrder, Polynomial, Ring, RingExt, RingRef, VariableSet};
use crate::report::{GeneratorResult, VerificationReport, Verdict};

#[derive(Debug, Clone)]
pub struct SvSystem<F: Field> {
    ring: RingRef<F>,
    layers: Vec<Vec<Polynomial<F>>>,
    exponents: Vec<Vec<u32>>,
}

/// How a pair in condition (iii) was settled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairWitness {
    pub layer: usize,
    pub element: usize,
    pub power: u32,
}

impl<F: Field> SvSystem<F> {
    /// All exponents default to 1.
    pub fn new(ring: &RingRef<F>, layers: Vec<Vec<Polynomial<F>>>) -> Result<Self> {
        let exponents = layers.iter().map(|l| vec![1; l.len()]).collect();
        Self::with_exponents(ring, layers, exponents)
    }

    pub fn with_exponents(
        ring: &RingRef<F>,
        layers: Vec<Vec<Polynomial<F>>>,
        exponents: Vec<Vec<u32>>,
    ) -> Result<Self> {
        if layers.is_empty() {
            return Err(Error::Input("a layered system needs at least one layer".into()));
        }
        if exponents.len() != layers.len()
            || exponents.iter().zip(&layers).any(|(e, l)| e.len() != l.len())
        {
            return Err(Error::Input("exponents do not match the layer shape".into()));
        }
        if exponents.iter().flatten().any(|&e| e == 0) {
            return Err(Error::Input("exponents must be at least 1".into()));
        }
        let mut seen: Vec<&Polynomial<F>> = Vec::new();
        for (l, layer) in layers.iter().enumerate() {
            if layer.is_empty() {
                return Err(Error::Input(format!("layer {l} is empty")));
            }
            for p in layer {
                if !Ring::same_context(p.ring(), ring) {
                    return Err(Error::Context(format!("'{p}' in layer {l} lives in another ring")));
                }
                if p.is_zero() {
                    return Err(Error::Input(format!("layer {l} contains zero")));
                }
                if seen.contains(&p) {
                    return Err(Error::Input(format!("'{p}' appears twice across the layers")));
                }
                seen.push(p);
            }
        }
        Ok(SvSystem {
            ring: ring.clone(),
            layers,
            exponents,
        })
    }

    pub fn ring(&self) -> &RingRef<F> {
        &self.ring
    }

    pub fn layers(&self) -> &[Vec<Polynomial<F>>] {
        &self.layers
    }

    pub fn exponents(&self) -> &[Vec<u32>] {
        &self.exponents
    }

    /// Every element of every layer, in layer order.
    pub fn union(&self) -> Result<IdealGens<F>> {
        IdealGens::new(&self.ring, "P", self.layers.iter().flatten().cloned().collect())
    }

    /// Searches for `(l', p', m)` with `l' < layer` and `(a·b)^m ∈ (p')`.
    /// For single-term inputs the test is support containment and the
    /// least `m` is exact; otherwise powers up to `power_cap` are tried.
    /// Among all witnesses the smallest `m` wins, ties by scan order.
    fn pair_witness(
        &self,
        layer: usize,
        a: &Polynomial<F>,
        b: &Polynomial<F>,
        power_cap: u32,
        cfg: &GbConfig,
    ) -> Result<(Option<PairWitness>, bool)> {
        let prod = a.try_mul(b)?;
        let mut best: Option<PairWitness> = None;
        let mut exact = true;
        for (l, earlier) in self.layers[..layer].iter().enumerate() {
            for (k, p) in earlier.iter().enumerate() {
                let m = if prod.len() == 1 && p.len() == 1 {
                    monomial_power(&prod, p)
                } else {
                    exact = false;
                    let principal = IdealGens::new(&self.ring, "(p')", vec![p.clone()])?;
                    let gb = groebner::groebner_basis(&principal, cfg)?;
                    groebner::min_power_with_basis(&prod, &gb, power_cap)?
                };
                if let Some(m) = m {
                    if best.as_ref().is_none_or(|w| m < w.power) {
                        best = Some(PairWitness {
                            layer: l,
                            element: k,
                            power: m,
                        });
                    }
                }
            }
        }
        Ok((best, exact))
    }

    /// Checks the singleton first layer and the pair condition on every
    /// later layer. Pairs left undecided within `power_cap` make the verdict
    /// inconclusive rather than false.
    pub fn verify_conditions(&self, power_cap: u32, cfg: &GbConfig) -> Result<VerificationReport> {
        let start = Instant::now();
        let claim = "layered system meets the pair condition";
        let mut report = VerificationReport::new(claim, Verdict::True)
            .with_field(self.ring.field().spec())
            .with_order(self.ring.order());
        if self.layers[0].len() != 1 {
            return Ok(report
                .with_witness(format!("P_0 has {} elements, expected one", self.layers[0].len()))
                .timed(start)
                .tap_verdict(Verdict::False));
        }
        let pairs: Vec<(usize, usize, usize)> = self
            .layers
            .iter()
            .enumerate()
            .skip(1)
            .flat_map(|(l, layer)| (0..layer.len()).tuple_combinations().map(move |(a, b)| (l, a, b)))
            .collect();
        let outcomes = cfg.execution.map(&pairs, |&(l, a, b)| {
            self.pair_witness(l, &self.layers[l][a], &self.layers[l][b], power_cap, cfg)
        });
        for (&(l, a, b), outcome) in pairs.iter().zip(outcomes) {
            let (pa, pb) = (&self.layers[l][a], &self.layers[l][b]);
            let mut entry = GeneratorResult {
                generator: format!("({pa})*({pb})"),
                check: format!("pair in P_{l}"),
                result: Verdict::True,
                power: None,
                detail: None,
            };
            match outcome {
                Ok((Some(w), _)) => {
                    entry.power = Some(w.power);
                    entry.detail = Some(format!(
                        "divisible-in-radical by {} in P_{}",
                        self.layers[w.layer][w.element], w.layer
                    ));
                }
                Ok((None, exact)) => {
                    entry.result = if exact {
                        Verdict::False
                    } else {
                        Verdict::Inconclusive
                    };
                    entry.detail = Some(if exact {
                        "no earlier element divides a power".into()
                    } else {
                        format!("no witness within power cap {power_cap}")
                    });
                    if exact && report.witness.is_none() {
                        report.witness = Some(entry.generator.clone());
                    }
                }
                Err(e) => {
                    entry.result = if e.is_cap() {
                        Verdict::Inconclusive
                    } else {
                        Verdict::False
                    };
                    entry.detail = Some(e.to_string());
                }
            }
            report.per_generator.push(entry);
        }
        report.verdict = Verdict::all(report.per_generator.iter().map(|g| g.result));
        report.notes.push(format!("{} pairs checked", pairs.len()));
        Ok(report.timed(start))
    }

    /// `q_l = Σ_{p ∈ P_l} p^{e(p)}` for every layer.
    pub fn build_sums(&self) -> Result<Vec<Polynomial<F>>> {
        self.layers
            .iter()
            .zip(&self.exponents)
            .map(|(layer, exps)| {
                layer
                    .iter()
                    .zip(exps)
                    .try_fold(self.ring.zero(), |acc, (p, &e)| Ok(acc.try_add(&p.pow(e)?)?))
            })
            .collect()
    }

    /// `√(P) = √(q_0, ..., q_r)`, certified by the Gröbner engine
    /// independently of [`verify_conditions`](Self::verify_conditions).
    pub fn check_radical_claim(&self, cfg: &GbConfig) -> Result<VerificationReport> {
        let sums = self.build_sums()?;
        let q = IdealGens::new(&self.ring, "q", sums)?;
        groebner::radical_equal(&self.union()?, &q, cfg)
    }
}

/// Least `m` with `p | prod^m` for single-term polynomials, if any.
fn monomial_power<F: Field>(prod: &Polynomial<F>, p: &Polynomial<F>) -> Option<u32> {
    let have = prod.terms()[0].mono.exponents();
    let need = p.terms()[0].mono.exponents();
    let mut m = 1u32;
    for (&h, &n) in have.iter().zip(need) {
        if n == 0 {
            continue;
        }
        if h == 0 {
            return None;
        }
        m = m.max(n.div_ceil(h));
    }
    Some(m)
}

trait TapVerdict {
    fn tap_verdict(self, v: Verdict) -> Self;
}

impl TapVerdict for VerificationReport {
    fn tap_verdict(mut self, v: Verdict) -> Self {
        self.verdict = v;
        self
    }
}

/// JSON layout of a layered system. `variables` is optional; when absent the
/// names are collected from the polynomials in natural order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SvFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variables: Option<Vec<String>>,
    pub layers: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponents: Option<BTreeMap<String, u32>>,
}

impl SvFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Input(format!("system file: {e}")))
    }

    pub fn load(&self) -> Result<SvSystem<Rationals>> {
        let vars = match &self.variables {
            Some(v) => VariableSet::new(v.clone())?,
            None => {
                let all: Vec<&str> = self.layers.iter().flatten().map(String::as_str).collect();
                VariableSet::new(parse::infer_variables(&all)?)?
            }
        };
        let ring = Ring::new(Rationals, vars, MonomialOrder::DegRevLex)?;
        let layers = self
            .layers
            .iter()
            .map(|l| l.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let mut exponents: Vec<Vec<u32>> = layers.iter().map(|l| vec![1; l.len()]).collect();
        if let Some(map) = &self.exponents {
            for (key, &e) in map {
                let target = ring.parse(key)?;
                let slot = layers
                    .iter()
                    .enumerate()
                    .find_map(|(l, layer)| layer.iter().position(|p| *p == target).map(|k| (l, k)))
                    .ok_or_else(|| Error::Input(format!("exponent given for '{key}', which is in no layer")))?;
                exponents[slot.0][slot.1] = e;
            }
        }
        SvSystem::with_exponents(&ring, layers, exponents)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(layers: &[&[&str]], n: usize) -> SvSystem<Rationals> {
        let ring = Ring::new(Rationals, VariableSet::indexed("X", n).unwrap(), MonomialOrder::DegRevLex).unwrap();
        let layers = layers
            .iter()
            .map(|l| l.iter().map(|s| ring.parse(s).unwrap()).collect())
            .collect();
        SvSystem::new(&ring, layers).unwrap()
    }

    #[test]
    fn single_layer_is_vacuous() {
        let s = sys(&[&["X1^2 + X2"]], 2);
        assert!(s.verify_conditions(16, &GbConfig::default()).unwrap().passed());
        assert!(s.check_radical_claim(&GbConfig::default()).unwrap().passed());
    }

    #[test]
    fn failing_pair_condition() {
        let s = sys(&[&["X1"], &["X2", "X3"]], 3);
        let rep = s.verify_conditions(16, &GbConfig::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::False);
        assert_eq!(rep.witness.as_deref(), Some("(X2)*(X3)"));
        // the radical claim is checked on its own and fails here too
        let claim = s.check_radical_claim(&GbConfig::default()).unwrap();
        assert_eq!(claim.verdict, Verdict::False);
    }

    #[test]
    fn p0_must_be_singleton() {
        let s = sys(&[&["X1", "X2"]], 2);
        let rep = s.verify_conditions(16, &GbConfig::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::False);
    }

    #[test]
    fn monomial_power_is_exact() {
        let s = sys(&[&["X1^3"], &["X1*X2", "X1*X3"]], 3);
        let rep = s.verify_conditions(1, &GbConfig::default()).unwrap();
        assert!(rep.passed());
        // (X1*X2*X1*X3)^m = X1^(2m)... needs m = 2 to absorb X1^3
        assert_eq!(rep.per_generator[0].power, Some(2));
    }

    #[test]
    fn general_polynomial_pairs() {
        let s = sys(&[&["X1 + X2"], &["X1^2 + X1*X2", "X3"]], 3);
        let rep = s.verify_conditions(4, &GbConfig::default()).unwrap();
        assert!(rep.passed(), "{rep}");
        let s = sys(&[&["X1 + X2"], &["X1", "X3"]], 3);
        let rep = s.verify_conditions(4, &GbConfig::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn sums_with_exponents() {
        let ring = Ring::new(Rationals, VariableSet::indexed("X", 2).unwrap(), MonomialOrder::DegRevLex).unwrap();
        let f = ring.parse("X1 + X2").unwrap();
        let s = SvSystem::with_exponents(&ring, vec![vec![f.clone()]], vec![vec![2]]).unwrap();
        assert_eq!(s.build_sums().unwrap(), vec![f.pow(2).unwrap()]);
    }

    #[test]
    fn rejects_malformed_systems() {
        let ring = Ring::new(Rationals, VariableSet::indexed("X", 2).unwrap(), MonomialOrder::DegRevLex).unwrap();
        let x = ring.var(0);
        assert!(SvSystem::new(&ring, vec![]).is_err());
        assert!(SvSystem::new(&ring, vec![vec![x.clone()], vec![]]).is_err());
        assert!(SvSystem::new(&ring, vec![vec![x.clone()], vec![x.clone()]]).is_err());
        assert!(SvSystem::with_exponents(&ring, vec![vec![x]], vec![vec![0]]).is_err());
    }

    #[test]
    fn file_format() {
        let text = r#"{"layers": [["X1*X11"], ["X1*X8", "X3*X11"]], "exponents": {"X3*X11": 2}}"#;
        let s = SvFile::from_json(text).unwrap().load().unwrap();
        assert_eq!(s.ring().vars().names(), &["X1", "X3", "X8", "X11"]);
        assert_eq!(s.exponents(), &[vec![1], vec![1, 2]]);
        let bad = r#"{"layers": [["X1"]], "exponents": {"X2": 2}}"#;
        assert!(SvFile::from_json(bad).unwrap().load().is_err());
    }
}
