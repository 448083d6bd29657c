//! Brute-force zero sets over GF(p).
//!
//! Gröbner-free: every point of `GF(p)^N` is evaluated against every
//! generator. Agreement of two zero sets is a necessary condition for
//! radical equality, so reports call it a consistency check.

use std::fmt::Write as _;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::field::{Field, PrimeField};
use crate::groebner::IdealGens;
use crate::polyring::{Polynomial, Ring};
use crate::report::{GeneratorResult, VerificationReport, Verdict};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

const CHUNK: u64 = 1 << 14;

/// Sorted common zeros of a generator set in `GF(p)^dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    p: u64,
    dim: usize,
    points: Vec<Vec<u64>>,
}

impl PointSet {
    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Vec<u64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, x: &[u64]) -> bool {
        self.points.binary_search_by(|q| q.as_slice().cmp(x)).is_ok()
    }

    /// Second pass: every stored point zeroes every generator of `ideal`.
    pub fn reverify<F: Field>(&self, ideal: &IdealGens<F>) -> Result<bool> {
        let compiled = Compiled::new(ideal, self.p)?;
        Ok(self.points.iter().all(|x| compiled.first_nonzero(x).is_none()))
    }

    /// One point per line, residues separated by commas.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for x in &self.points {
            let line: Vec<String> = x.iter().map(u64::to_string).collect();
            writeln!(out, "{}", line.join(",")).expect("string write");
        }
        out
    }
}

/// Generators reduced mod `p` with exponents kept as plain vectors.
struct Compiled {
    p: u64,
    polys: Vec<Vec<(u64, Vec<(usize, u32)>)>>,
}

impl Compiled {
    fn new<F: Field>(ideal: &IdealGens<F>, p: u64) -> Result<Self> {
        PrimeField::new(p)?;
        let polys = ideal
            .gens()
            .iter()
            .map(|g| {
                Ok(g.reduce_mod(p)?
                    .into_iter()
                    .map(|(c, m)| (c, m.support().map(|i| (i, m.exponents()[i])).collect()))
                    .collect())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Compiled { p, polys })
    }

    fn eval(&self, k: usize, x: &[u64]) -> u64 {
        let p = self.p;
        self.polys[k].iter().fold(0, |acc, (c, factors)| {
            let t = factors
                .iter()
                .fold(*c, |t, &(i, e)| t * pow_mod(x[i], e, p) % p);
            (acc + t) % p
        })
    }

    /// Index of the first generator not vanishing at `x`.
    fn first_nonzero(&self, x: &[u64]) -> Option<usize> {
        (0..self.polys.len()).find(|&k| self.eval(k, x) != 0)
    }
}

fn pow_mod(mut b: u64, mut e: u32, p: u64) -> u64 {
    let mut r = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn point_count(p: u64, n: usize, budget: u64) -> Result<u64> {
    let total = u32::try_from(n)
        .ok()
        .and_then(|n| p.checked_pow(n))
        .filter(|&t| t <= budget);
    total.ok_or_else(|| Error::Refused {
        what: format!("enumerating GF({p})^{n}"),
        required: format!("{}^{} points", p, n),
        budget: budget.to_string(),
    })
}

/// The point with odometer index `idx`; the last coordinate moves fastest.
fn decode(mut idx: u64, p: u64, n: usize, out: &mut [u64]) {
    for slot in out[..n].iter_mut().rev() {
        *slot = idx % p;
        idx /= p;
    }
}

/// All common zeros of `ideal` in `GF(p)^N`. Refuses when `p^N > budget`.
pub fn enumerate_points<F: Field>(
    ideal: &IdealGens<F>,
    p: u64,
    budget: u64,
    exec: Execution,
) -> Result<PointSet> {
    let n = ideal.ring().nvars();
    let total = point_count(p, n, budget)?;
    let compiled = Compiled::new(ideal, p)?;
    let points = exec.map_chunks(total, CHUNK, |range| {
        let mut x = vec![0; n];
        let mut found = Vec::new();
        for idx in range {
            decode(idx, p, n, &mut x);
            if compiled.first_nonzero(&x).is_none() {
                found.push(x.clone());
            }
        }
        found
    });
    Ok(PointSet { p, dim: n, points })
}

fn fmt_point(x: &[u64]) -> String {
    let parts: Vec<String> = x.iter().map(u64::to_string).collect();
    format!("({})", parts.join(","))
}

/// Compares the zero sets of `a` and `b` over `GF(p)`. On disagreement the
/// witness names a point in one set only and a generator of the other set
/// that does not vanish there.
pub fn same_vanishing_set<F: Field>(
    a: &IdealGens<F>,
    b: &IdealGens<F>,
    p: u64,
    budget: u64,
    exec: Execution,
) -> Result<VerificationReport> {
    if !Ring::same_context(a.ring(), b.ring()) {
        return Err(Error::Context(format!(
            "'{}' and '{}' live in different rings",
            a.label(),
            b.label()
        )));
    }
    let start = Instant::now();
    let va = enumerate_points(a, p, budget, exec)?;
    let vb = enumerate_points(b, p, budget, exec)?;
    let mut report = VerificationReport::new(
        format!("V({}) = V({}) over GF({p}) (consistency check)", a.label(), b.label()),
        Verdict::from_bool(va == vb),
    )
    .with_field(format!("GF({p})"))
    .note(format!("|V({})| = {}, |V({})| = {}", a.label(), va.len(), b.label(), vb.len()));
    for (mine, other_set, other, label) in [(&va, &vb, b, a.label()), (&vb, &va, a, b.label())] {
        let Some(x) = mine.points().iter().find(|x| !other_set.contains(x)) else {
            continue;
        };
        let compiled = Compiled::new(other, p)?;
        let k = compiled
            .first_nonzero(x)
            .expect("a point outside the zero set violates some generator");
        let g: &Polynomial<F> = &other.gens()[k];
        report.per_generator.push(GeneratorResult {
            generator: g.to_string(),
            check: format!("vanishes on V({label})"),
            result: Verdict::False,
            power: None,
            detail: Some(format!("value {} at {}", compiled.eval(k, x), fmt_point(x))),
        });
        if report.witness.is_none() {
            report.witness = Some(format!("{} violates {}", fmt_point(x), g));
        }
    }
    Ok(report.timed(start))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::polyring::{MonomialOrder, VariableSet};

    fn ideal(n: usize, gens: &[&str]) -> IdealGens<Rationals> {
        let ring = Ring::new(Rationals, VariableSet::indexed("X", n).unwrap(), MonomialOrder::DegRevLex).unwrap();
        IdealGens::parse(&ring, "I", gens).unwrap()
    }

    #[test]
    fn product_of_two_variables() {
        let v = enumerate_points(&ideal(2, &["X1*X2"]), 2, DEFAULT_BUDGET, Execution::Sequential).unwrap();
        assert_eq!(v.points(), &[vec![0, 0], vec![0, 1], vec![1, 0]]);
        assert_eq!(v.to_text(), "0,0\n0,1\n1,0\n");
    }

    #[test]
    fn unit_ideal_has_no_points() {
        let v = enumerate_points(&ideal(3, &["1"]), 3, DEFAULT_BUDGET, Execution::Parallel).unwrap();
        assert!(v.is_empty());
    }

    #[test]
    fn quadric_cone_over_gf2() {
        // x*z = y^2 over GF(2): y = 0 forces x*z = 0 (3 points), y = 1
        // forces x = z = 1 (1 point)
        let r = ideal(5, &["X3*X5 - X4^2"]);
        let r3 = IdealGens::parse(
            &Ring::new(Rationals, VariableSet::new(["X3", "X4", "X5"]).unwrap(), MonomialOrder::DegRevLex).unwrap(),
            "I",
            &["X3*X5 - X4^2"],
        )
        .unwrap();
        let v = enumerate_points(&r3, 2, DEFAULT_BUDGET, Execution::Sequential).unwrap();
        assert_eq!(v.len(), 4);
        assert!(v.reverify(&r3).unwrap());
        assert_eq!(enumerate_points(&r, 2, DEFAULT_BUDGET, Execution::Parallel).unwrap().len(), 16);
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let i = ideal(6, &["X1*X4 - X2*X3", "X3*X6 - X5*X4"]);
        let a = enumerate_points(&i, 3, DEFAULT_BUDGET, Execution::Sequential).unwrap();
        let b = enumerate_points(&i, 3, DEFAULT_BUDGET, Execution::Parallel).unwrap();
        assert_eq!(a, b);
        assert!(a.points().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn budget_refusal() {
        let e = enumerate_points(&ideal(11, &["X1"]), 5, DEFAULT_BUDGET, Execution::Sequential).unwrap_err();
        match e {
            Error::Refused { required, .. } => assert_eq!(required, "5^11 points"),
            other => panic!("{other:?}"),
        }
        assert!(enumerate_points(&ideal(2, &["X1"]), 4, 100, Execution::Sequential).is_err());
    }

    #[test]
    fn disagreement_has_witness() {
        let ring = Ring::new(Rationals, VariableSet::indexed("X", 2).unwrap(), MonomialOrder::DegRevLex).unwrap();
        let a = IdealGens::parse(&ring, "A", &["X1"]).unwrap();
        let b = IdealGens::parse(&ring, "B", &["X2"]).unwrap();
        let rep = same_vanishing_set(&a, &b, 2, DEFAULT_BUDGET, Execution::Sequential).unwrap();
        assert_eq!(rep.verdict, Verdict::False);
        assert_eq!(rep.witness.as_deref(), Some("(0,1) violates X2"));
        assert!(same_vanishing_set(&a, &a, 3, DEFAULT_BUDGET, Execution::Parallel).unwrap().passed());
    }

    #[test]
    fn radical_equal_sets_agree() {
        let ring = Ring::new(Rationals, VariableSet::indexed("X", 2).unwrap(), MonomialOrder::DegRevLex).unwrap();
        let a = IdealGens::parse(&ring, "A", &["X1^2", "X1*X2^3"]).unwrap();
        let b = IdealGens::parse(&ring, "B", &["X1"]).unwrap();
        assert!(same_vanishing_set(&a, &b, 5, DEFAULT_BUDGET, Execution::Parallel).unwrap().passed());
    }
}
