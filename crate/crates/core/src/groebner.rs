//! Buchberger's algorithm and the membership oracles built on it.
//!
//! Pairs are selected by the normal strategy (smallest lcm in the ring's
//! order, ties by basis index) and pruned with the Gebauer–Möller installation, which
//! subsumes Buchberger's coprime and chain criteria. Every computation runs
//! under a [`GbConfig`] cap; exceeding it yields [`Error::Capped`], never a
//! guessed answer.

use std::time::Instant;

use itertools::Itertools;
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::field::{Field, PrimeField, Rationals};
use crate::polyring::{
    self, Monomial, MonomialOrder, Polynomial, Ring, RingExt, RingRef, Term,
};
use crate::report::{GeneratorResult, VerificationReport, Verdict};

/// A labelled, ordered list of nonzero generators over one ring.
#[derive(Clone, Debug, PartialEq)]
pub struct IdealGens<F: Field> {
    ring: RingRef<F>,
    gens: Vec<Polynomial<F>>,
    label: String,
}

impl<F: Field> IdealGens<F> {
    pub fn new(ring: &RingRef<F>, label: impl Into<String>, gens: Vec<Polynomial<F>>) -> Result<Self> {
        let label = label.into();
        for (k, g) in gens.iter().enumerate() {
            if !Ring::same_context(g.ring(), ring) {
                return Err(Error::Context(format!("generator {k} of '{label}' lives in another ring")));
            }
            if g.is_zero() {
                return Err(Error::Input(format!("generator {k} of '{label}' is zero")));
            }
        }
        Ok(IdealGens {
            ring: ring.clone(),
            gens,
            label,
        })
    }

    pub fn parse(ring: &RingRef<F>, label: impl Into<String>, gens: &[&str]) -> Result<Self> {
        let polys = gens.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>>>()?;
        Self::new(ring, label, polys)
    }

    pub fn ring(&self) -> &RingRef<F> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial<F>] {
        &self.gens
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.to_string()).collect()
    }

    pub fn relabel(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Appends generators, skipping exact duplicates.
    pub fn union(&self, other: &IdealGens<F>, label: impl Into<String>) -> Result<Self> {
        let mut gens = self.gens.clone();
        for g in &other.gens {
            if !gens.contains(g) {
                gens.push(g.clone());
            }
        }
        Self::new(&self.ring, label, gens)
    }

    /// The same generators re-sorted for another order on the same variables.
    pub fn with_order(&self, order: &MonomialOrder) -> Result<Self> {
        if self.ring.order() == order {
            return Ok(self.clone());
        }
        let ring = self.ring.with_order(order.clone())?;
        let gens = self.gens.iter().map(|g| g.embed(&ring)).collect::<Result<Vec<_>>>()?;
        Self::new(&ring, self.label.clone(), gens)
    }

    /// Coefficient-wise image over another field. Generators that vanish
    /// there are an error (the ideal would change shape).
    pub fn to_field<G: Field>(&self, field: G) -> Result<IdealGens<G>> {
        let ring = self.ring.with_field(field);
        let gens = self.gens.iter().map(|g| g.to_field(&ring)).collect::<Result<Vec<_>>>()?;
        IdealGens::new(&ring, self.label.clone(), gens)
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.gens.iter().all(|g| g.has_integer_coefficients())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GbConfig {
    pub max_spairs: u64,
    pub max_degree: u32,
    pub execution: Execution,
}

impl Default for GbConfig {
    fn default() -> Self {
        GbConfig {
            max_spairs: 100_000,
            max_degree: 60,
            execution: Execution::default(),
        }
    }
}

impl GbConfig {
    pub fn sequential(mut self) -> Self {
        self.execution = Execution::Sequential;
        self
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GbStats {
    /// S-pairs actually reduced.
    pub spairs: u64,
    pub zero_reductions: u64,
    /// Pairs discarded by the Gebauer–Möller criteria.
    pub pairs_pruned: u64,
    pub max_degree: u32,
    pub basis_size: usize,
    pub millis: u64,
}

/// Reduced Gröbner basis: monic elements sorted by ascending leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    ring: RingRef<F>,
    basis: Vec<Polynomial<F>>,
    source: IdealGens<F>,
    stats: GbStats,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn basis(&self) -> &[Polynomial<F>] {
        &self.basis
    }

    pub fn ring(&self) -> &RingRef<F> {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        self.ring.order()
    }

    pub fn source(&self) -> &IdealGens<F> {
        &self.source
    }

    pub fn stats(&self) -> &GbStats {
        &self.stats
    }

    /// The ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant()
    }

    /// Remainder of full multivariate division by the basis.
    pub fn normal_form(&self, f: &Polynomial<F>) -> Result<Polynomial<F>> {
        if !Ring::same_context(f.ring(), &self.ring) {
            return Err(Error::Context(format!(
                "normal form of '{f}' against a basis in another ring"
            )));
        }
        let reducers: Vec<&[Term<F::Elem>]> = self.basis.iter().map(|g| g.terms()).collect();
        let terms = reduce_full(&self.ring, f.terms().to_vec(), &reducers)?;
        Ok(Polynomial::from_sorted(&self.ring, terms))
    }

    pub fn contains(&self, f: &Polynomial<F>) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Post-hoc audit independent of the pair-selection strategy: every basis
    /// element is monic, leading monomials are pairwise non-divisible, no
    /// term is reducible by another element, and every S-polynomial reduces
    /// to zero.
    pub fn audit(&self) -> std::result::Result<(), String> {
        let f = self.ring.field();
        for (i, g) in self.basis.iter().enumerate() {
            if g.is_zero() || !f.is_one(g.leading_coeff().expect("nonzero")) {
                return Err(format!("element {i} '{g}' is not monic"));
            }
            for (j, h) in self.basis.iter().enumerate() {
                if i == j {
                    continue;
                }
                let lm = h.leading_monomial().expect("nonzero");
                if let Some(t) = g.terms().iter().find(|t| lm.divides(&t.mono)) {
                    return Err(format!(
                        "term {:?} of '{g}' is divisible by the leading monomial of '{h}'",
                        t.mono
                    ));
                }
            }
        }
        let reducers: Vec<&[Term<F::Elem>]> = self.basis.iter().map(|g| g.terms()).collect();
        for (i, j) in (0..self.basis.len()).tuple_combinations() {
            let s = spoly(&self.ring, self.basis[i].terms(), self.basis[j].terms())
                .map_err(|e| e.to_string())?;
            let r = reduce_full(&self.ring, s, &reducers).map_err(|e| e.to_string())?;
            if !r.is_empty() {
                return Err(format!(
                    "S-polynomial of '{}' and '{}' does not reduce to zero",
                    self.basis[i], self.basis[j]
                ));
            }
        }
        Ok(())
    }
}

/// Reduced Gröbner basis of `ideal` under `order`.
pub fn buchberger<F: Field>(
    ideal: &IdealGens<F>,
    order: &MonomialOrder,
    cfg: &GbConfig,
) -> Result<GroebnerBasis<F>> {
    let ideal = ideal.with_order(order)?;
    run_buchberger(&ideal, cfg)
}

/// Reduced Gröbner basis under the ideal's own ring order.
pub fn groebner_basis<F: Field>(ideal: &IdealGens<F>, cfg: &GbConfig) -> Result<GroebnerBasis<F>> {
    run_buchberger(ideal, cfg)
}

fn run_buchberger<F: Field>(
    ideal: &IdealGens<F>,
    cfg: &GbConfig,
) -> Result<GroebnerBasis<F>> {
    let start = Instant::now();
    let ring = ideal.ring().clone();
    let mut engine = Engine::new(&ring, *cfg);
    let basis = engine.run(ideal.gens())?;
    let mut stats = engine.stats;
    stats.basis_size = basis.len();
    stats.millis = start.elapsed().as_millis() as u64;
    Ok(GroebnerBasis {
        basis: basis
            .into_iter()
            .map(|t| Polynomial::from_sorted(&ring, t))
            .collect(),
        ring,
        source: ideal.clone(),
        stats,
    })
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Engine<'a, F: Field> {
    ring: &'a RingRef<F>,
    cfg: GbConfig,
    polys: Vec<Vec<Term<F::Elem>>>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
    stats: GbStats,
}

enum Insert {
    Continue,
    Unit,
}

impl<'a, F: Field> Engine<'a, F> {
    fn new(ring: &'a RingRef<F>, cfg: GbConfig) -> Self {
        Engine {
            ring,
            cfg,
            polys: Vec::new(),
            active: Vec::new(),
            pairs: Vec::new(),
            stats: GbStats::default(),
        }
    }

    fn lm(&self, i: usize) -> &Monomial {
        &self.polys[i][0].mono
    }

    fn capped(&self, reason: String) -> Error {
        Error::Capped {
            reason,
            stats: self.stats,
        }
    }

    /// Returns as soon as a unit shows up; the remaining pairs cannot change
    /// the answer `{1}`.
    fn run(&mut self, gens: &[Polynomial<F>]) -> Result<Vec<Vec<Term<F::Elem>>>> {
        let one = || vec![vec![Term {
            coeff: self.ring.field().one(),
            mono: Monomial::one(self.ring.nvars()),
        }]];
        for g in gens {
            let h = self.reduce(g.terms().to_vec())?;
            if let Insert::Unit = self.insert(h)? {
                return Ok(one());
            }
        }
        while let Some(pair) = self.next_pair() {
            self.stats.spairs += 1;
            if self.stats.spairs > self.cfg.max_spairs {
                self.stats.spairs -= 1;
                return Err(self.capped(format!("S-pair cap {}", self.cfg.max_spairs)));
            }
            let deg = pair.lcm.degree();
            if deg > self.cfg.max_degree {
                return Err(self.capped(format!(
                    "degree bound {} (pair of degree {deg})",
                    self.cfg.max_degree
                )));
            }
            self.stats.max_degree = self.stats.max_degree.max(deg);
            let s = spoly(self.ring, &self.polys[pair.i], &self.polys[pair.j])?;
            let h = self.reduce(s)?;
            if h.is_empty() {
                self.stats.zero_reductions += 1;
                continue;
            }
            if let Insert::Unit = self.insert(h)? {
                return Ok(one());
            }
        }
        self.finish()
    }

    fn next_pair(&mut self) -> Option<Pair> {
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| self.ring.compare(&a.lcm, &b.lcm).then((a.i, a.j).cmp(&(b.i, b.j))))
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(best))
    }

    fn reduce(&self, p: Vec<Term<F::Elem>>) -> Result<Vec<Term<F::Elem>>> {
        let reducers: Vec<&[Term<F::Elem>]> = self.active.iter().map(|&i| self.polys[i].as_slice()).collect();
        reduce_full(self.ring, p, &reducers)
    }

    /// Adds a reduced nonzero polynomial to the basis with the Gebauer–Möller
    /// pair update.
    fn insert(&mut self, h: Vec<Term<F::Elem>>) -> Result<Insert> {
        if h.is_empty() {
            return Ok(Insert::Continue);
        }
        let h = make_monic(self.ring, h);
        if h[0].mono.is_one() {
            return Ok(Insert::Unit);
        }
        self.stats.max_degree = self.stats.max_degree.max(h[0].mono.degree());
        let hi = self.polys.len();
        self.polys.push(h);
        let lm_h = self.lm(hi).clone();

        // new pairs (g, h), pruned by the chain criterion among themselves
        let mut cands: Vec<(usize, Monomial, bool)> = self
            .active
            .iter()
            .map(|&g| {
                let lm_g = self.lm(g);
                (g, lm_g.lcm(&lm_h), lm_g.is_coprime(&lm_h))
            })
            .collect();
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::with_capacity(cands.len());
        while !cands.is_empty() {
            let (g, l, coprime) = cands.remove(0);
            let dominated = cands.iter().any(|(_, l2, _)| l2.divides(&l))
                || kept.iter().any(|(_, l2, _)| l2.divides(&l));
            if coprime || !dominated {
                kept.push((g, l, coprime));
            } else {
                self.stats.pairs_pruned += 1;
            }
        }
        // old pairs made redundant by h
        let before = self.pairs.len();
        let polys = &self.polys;
        self.pairs.retain(|p| {
            let lm_i = &polys[p.i][0].mono;
            let lm_j = &polys[p.j][0].mono;
            !(lm_h.divides(&p.lcm) && lm_i.lcm(&lm_h) != p.lcm && lm_j.lcm(&lm_h) != p.lcm)
        });
        self.stats.pairs_pruned += (before - self.pairs.len()) as u64;
        for (g, l, coprime) in kept {
            if coprime {
                self.stats.pairs_pruned += 1;
            } else {
                self.pairs.push(Pair { i: g, j: hi, lcm: l });
            }
        }
        let polys = &self.polys;
        self.active.retain(|&g| !lm_h.divides(&polys[g][0].mono));
        self.active.push(hi);
        Ok(Insert::Continue)
    }

    /// Interreduces the surviving elements into the reduced basis.
    fn finish(&mut self) -> Result<Vec<Vec<Term<F::Elem>>>> {
        let mut elems: Vec<Vec<Term<F::Elem>>> =
            self.active.iter().map(|&i| self.polys[i].clone()).collect();
        elems.sort_by(|a, b| self.ring.compare(&a[0].mono, &b[0].mono));
        let mut out = Vec::with_capacity(elems.len());
        for k in 0..elems.len() {
            let others: Vec<&[Term<F::Elem>]> = elems
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != k)
                .map(|(_, e)| e.as_slice())
                .collect();
            let head = elems[k][0].clone();
            let tail = reduce_full(self.ring, elems[k][1..].to_vec(), &others)?;
            let mut g = Vec::with_capacity(tail.len() + 1);
            g.push(head);
            g.extend(tail);
            out.push(g);
        }
        Ok(out)
    }
}

fn make_monic<F: Field>(ring: &Ring<F>, mut p: Vec<Term<F::Elem>>) -> Vec<Term<F::Elem>> {
    let f = ring.field();
    if let Some(first) = p.first() {
        if !f.is_one(&first.coeff) {
            let inv = f.inv(&first.coeff).expect("nonzero");
            for t in &mut p {
                t.coeff = f.mul(&t.coeff, &inv);
            }
        }
    }
    p
}

/// S-polynomial of two monic term lists.
fn spoly<F: Field>(ring: &Ring<F>, f: &[Term<F::Elem>], g: &[Term<F::Elem>]) -> Result<Vec<Term<F::Elem>>> {
    let field = ring.field();
    let lcm = f[0].mono.lcm(&g[0].mono);
    let u = lcm.div(&f[0].mono).expect("lcm");
    let v = lcm.div(&g[0].mono).expect("lcm");
    let cf = field.inv(&f[0].coeff).expect("nonzero");
    let cg = field.inv(&g[0].coeff).expect("nonzero");
    let left = polyring::mul_term(ring, &f[1..], &cf, &u)?;
    polyring::sub_mul_term(ring, &left, &cg, &v, &g[1..])
}

/// Full reduction of `p` by `reducers` (each with nonzero leading term).
fn reduce_full<F: Field>(
    ring: &Ring<F>,
    mut p: Vec<Term<F::Elem>>,
    reducers: &[&[Term<F::Elem>]],
) -> Result<Vec<Term<F::Elem>>> {
    let field = ring.field();
    let inv_lc: Vec<F::Elem> = reducers
        .iter()
        .map(|g| field.inv(&g[0].coeff).expect("nonzero"))
        .collect();
    let mut rem: Vec<Term<F::Elem>> = Vec::new();
    let mut i = 0;
    while i < p.len() {
        let divisor = reducers
            .iter()
            .position(|g| g[0].mono.divides(&p[i].mono));
        match divisor {
            Some(k) => {
                let g = reducers[k];
                let q = p[i].mono.div(&g[0].mono).expect("divides");
                let c = field.mul(&p[i].coeff, &inv_lc[k]);
                p = polyring::sub_mul_term(ring, &p[i + 1..], &c, &q, &g[1..])?;
                i = 0;
            }
            None => {
                rem.push(p[i].clone());
                i += 1;
            }
        }
    }
    Ok(rem)
}

/// Division remainder of `f` by the reduced basis.
pub fn normal_form<F: Field>(f: &Polynomial<F>, gb: &GroebnerBasis<F>) -> Result<Polynomial<F>> {
    gb.normal_form(f)
}

pub fn ideal_contains<F: Field>(ideal: &IdealGens<F>, f: &Polynomial<F>, cfg: &GbConfig) -> Result<bool> {
    check_same(ideal, f)?;
    if f.is_zero() {
        return Ok(true);
    }
    groebner_basis(ideal, cfg)?.contains(f)
}

fn check_same<F: Field>(ideal: &IdealGens<F>, f: &Polynomial<F>) -> Result<()> {
    if Ring::same_context(ideal.ring(), f.ring()) {
        Ok(())
    } else {
        Err(Error::Context(format!(
            "'{f}' is not in the ring of '{}'",
            ideal.label()
        )))
    }
}

/// Radical membership via the Rabinowitsch device: `f` vanishes on `V(I)` iff
/// `1 ∈ I + (t·f − 1)` with `t` a fresh last variable.
pub fn radical_contains<F: Field>(ideal: &IdealGens<F>, f: &Polynomial<F>, cfg: &GbConfig) -> Result<bool> {
    Ok(rabinowitsch(ideal, f, cfg)?.0)
}

fn rabinowitsch<F: Field>(
    ideal: &IdealGens<F>,
    f: &Polynomial<F>,
    cfg: &GbConfig,
) -> Result<(bool, GbStats)> {
    check_same(ideal, f)?;
    if f.is_zero() {
        return Ok((true, GbStats::default()));
    }
    // whether 1 is in the ideal does not depend on the order; DegRevLex is
    // by far the cheapest way to find out
    let ext = ideal.ring().extended("t").with_order(MonomialOrder::DegRevLex)?;
    let t = ext.var(ext.nvars() - 1);
    let mut gens = ideal
        .gens()
        .iter()
        .map(|g| g.embed(&ext))
        .collect::<Result<Vec<_>>>()?;
    gens.push(&t * &f.embed(&ext)? - ext.one());
    let lifted = IdealGens::new(&ext, format!("{} + (t*f - 1)", ideal.label()), gens)?;
    let gb = run_buchberger(&lifted, cfg)?;
    Ok((gb.is_unit(), gb.stats))
}

/// Outcome of one generator-in-radical query.
fn radical_query<F: Field>(
    target: &IdealGens<F>,
    gb: &GroebnerBasis<F>,
    f: &Polynomial<F>,
    check: &str,
    cfg: &GbConfig,
) -> (GeneratorResult, GbStats) {
    let mut res = GeneratorResult {
        generator: f.to_string(),
        check: check.to_string(),
        result: Verdict::Inconclusive,
        power: None,
        detail: None,
    };
    match gb.contains(f) {
        Ok(true) => {
            res.result = Verdict::True;
            res.power = Some(1);
            res.detail = Some("ideal member".into());
            return (res, GbStats::default());
        }
        Ok(false) => {}
        Err(e) => {
            res.result = Verdict::False;
            res.detail = Some(e.to_string());
            return (res, GbStats::default());
        }
    }
    match rabinowitsch(target, f, cfg) {
        Ok((inside, stats)) => {
            res.result = Verdict::from_bool(inside);
            res.detail = Some(if inside {
                "radical member (Rabinowitsch)".into()
            } else {
                "not in the radical".into()
            });
            (res, stats)
        }
        Err(e) => {
            res.result = if e.is_cap() {
                Verdict::Inconclusive
            } else {
                Verdict::False
            };
            let stats = match &e {
                Error::Capped { stats, .. } => *stats,
                _ => GbStats::default(),
            };
            res.detail = Some(e.to_string());
            (res, stats)
        }
    }
}

/// `√A = √B`, checked generator by generator in both directions.
///
/// Cap exhaustion on any query makes the verdict inconclusive; the report
/// still lists every query that finished.
pub fn radical_equal<F: Field>(a: &IdealGens<F>, b: &IdealGens<F>, cfg: &GbConfig) -> Result<VerificationReport> {
    if !Ring::same_context(a.ring(), b.ring()) {
        return Err(Error::Context(format!(
            "'{}' and '{}' live in different rings",
            a.label(),
            b.label()
        )));
    }
    let start = Instant::now();
    let claim = format!("sqrt({}) = sqrt({})", a.label(), b.label());
    let mut report = VerificationReport::new(claim.clone(), Verdict::True)
        .with_field(a.ring().field().spec())
        .with_order(a.ring().order());

    let mut witness = None;
    for (src, dst, check) in [(a, b, "in sqrt(B)"), (b, a, "in sqrt(A)")] {
        let gb = match groebner_basis(dst, cfg) {
            Ok(gb) => gb,
            Err(e) => {
                let mut r = VerificationReport::from_error(claim, &e)
                    .with_field(a.ring().field().spec())
                    .with_order(a.ring().order());
                r.per_generator = report.per_generator;
                return Ok(r.timed(start));
            }
        };
        report.stats.absorb(&gb.stats);
        let results = cfg
            .execution
            .map(src.gens(), |g| radical_query(dst, &gb, g, check, cfg));
        for (res, stats) in results {
            report.stats.absorb(&stats);
            if res.result == Verdict::False && witness.is_none() {
                witness = Some(format!("{} not {}", res.generator, check));
            }
            report.per_generator.push(res);
        }
    }
    report.verdict = Verdict::all(report.per_generator.iter().map(|g| g.result));
    if let Some(w) = witness {
        report = report.with_witness(w);
    }
    Ok(report.timed(start))
}

/// How a radical-equality claim over integer data gets certified.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certification {
    /// Modular run only.
    Modular(u64),
    /// Modular pre-check over GF(p), then the certified run over QQ.
    PrecheckThenRational(u64),
    RationalOnly,
}

impl Default for Certification {
    fn default() -> Self {
        Certification::PrecheckThenRational(32003)
    }
}

/// [`radical_equal`] for rational input under a certification policy. The
/// report's `field` names the field whose run decided the verdict.
pub fn certify_radical_equal(
    a: &IdealGens<Rationals>,
    b: &IdealGens<Rationals>,
    cfg: &GbConfig,
    mode: Certification,
) -> Result<VerificationReport> {
    let modular = |p: u64| -> Result<VerificationReport> {
        let f = PrimeField::new(p)?;
        radical_equal(&a.to_field(f)?, &b.to_field(f)?, cfg)
    };
    match mode {
        Certification::Modular(p) => modular(p),
        Certification::RationalOnly => radical_equal(a, b, cfg),
        Certification::PrecheckThenRational(p) => {
            let pre = modular(p)?;
            let mut rep = radical_equal(a, b, cfg)?;
            rep.stats.spairs += pre.stats.spairs;
            rep.stats.max_degree = rep.stats.max_degree.max(pre.stats.max_degree);
            let note = format!(
                "modular pre-check over GF({p}): {} ({} ms)",
                pre.verdict, pre.stats.millis
            );
            rep.notes.insert(0, note);
            if pre.verdict != rep.verdict {
                rep.notes.push(format!(
                    "GF({p}) and QQ disagree; the QQ verdict is the certified one"
                ));
            }
            Ok(rep)
        }
    }
}

/// Least `e <= cap` with `f^e` in the ideal, if any.
pub fn min_power_in_ideal<F: Field>(
    f: &Polynomial<F>,
    ideal: &IdealGens<F>,
    cap: u32,
    cfg: &GbConfig,
) -> Result<Option<u32>> {
    check_same(ideal, f)?;
    let gb = groebner_basis(ideal, cfg)?;
    min_power_with_basis(f, &gb, cap)
}

/// [`min_power_in_ideal`] against a precomputed basis. Uses
/// `NF(f^e) = NF(NF(f) · NF(f^(e-1)))` so intermediate powers stay reduced.
pub fn min_power_with_basis<F: Field>(f: &Polynomial<F>, gb: &GroebnerBasis<F>, cap: u32) -> Result<Option<u32>> {
    if cap == 0 {
        return Err(Error::Domain("power cap must be at least 1".into()));
    }
    let r1 = gb.normal_form(f)?;
    let mut r = r1.clone();
    for e in 1..=cap {
        if e > 1 {
            r = gb.normal_form(&r.try_mul(&r1)?)?;
        }
        if r.is_zero() {
            return Ok(Some(e));
        }
    }
    Ok(None)
}

/// Number of degree-`m` products of `n` generators with repetition,
/// `C(n + m - 1, m)`.
pub fn product_count(n: usize, m: u32) -> BigUint {
    if n == 0 {
        return BigUint::from((m == 0) as u32);
    }
    polyring::binomial_coefficient(n as u64 + m as u64 - 1, m as u64).expect("k <= n")
}

/// `J^m ⊆ I`: every product of `m` generators of `J` (with repetition) has
/// zero normal form modulo `I`. Refuses when the product count exceeds
/// `product_cap`.
pub fn ideal_power_contained<F: Field>(
    j: &IdealGens<F>,
    i: &IdealGens<F>,
    m: u32,
    product_cap: u64,
    cfg: &GbConfig,
) -> Result<VerificationReport> {
    if m == 0 {
        return Err(Error::Domain("power must be positive".into()));
    }
    if !Ring::same_context(j.ring(), i.ring()) {
        return Err(Error::Context("J and I live in different rings".into()));
    }
    let count = product_count(j.len(), m);
    if count > BigUint::from(product_cap) {
        return Err(Error::Refused {
            what: format!(
                "{}^{m} in ({}) by product enumeration (use per-generator min_power_in_ideal instead)",
                j.label(),
                i.label()
            ),
            required: format!("{count} products"),
            budget: product_cap.to_string(),
        });
    }
    let start = Instant::now();
    let claim = format!("({})^{m} in ({})", j.label(), i.label());
    let gb = groebner_basis(i, cfg)?;
    let reduced = j
        .gens()
        .iter()
        .map(|g| gb.normal_form(g))
        .collect::<Result<Vec<_>>>()?;
    let combos: Vec<Vec<usize>> = (0..j.len()).combinations_with_replacement(m as usize).collect();
    let outcomes = cfg.execution.map(&combos, |combo| -> Result<bool> {
        let mut acc = reduced[combo[0]].clone();
        for &k in &combo[1..] {
            if acc.is_zero() {
                break;
            }
            acc = gb.normal_form(&acc.try_mul(&reduced[k])?)?;
        }
        Ok(acc.is_zero())
    });
    let mut report = VerificationReport::new(claim, Verdict::True)
        .with_field(i.ring().field().spec())
        .with_order(i.ring().order());
    report.stats.absorb(&gb.stats);
    let list_all = combos.len() <= 64;
    for (combo, outcome) in combos.iter().zip(outcomes) {
        let inside = outcome?;
        if inside && !list_all {
            continue;
        }
        let name = combo
            .iter()
            .map(|&k| format!("({})", j.gens()[k]))
            .join("*");
        if !inside && report.witness.is_none() {
            report.witness = Some(name.clone());
        }
        report.per_generator.push(GeneratorResult {
            generator: name,
            check: format!("in ({})", i.label()),
            result: Verdict::from_bool(inside),
            power: Some(m),
            detail: None,
        });
    }
    report.verdict = if report.witness.is_some() {
        Verdict::False
    } else {
        Verdict::True
    };
    report.notes.push(format!("{} products tested", combos.len()));
    Ok(report.timed(start))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::VariableSet;

    fn ring(n: usize) -> RingRef<Rationals> {
        Ring::new(Rationals, VariableSet::indexed("X", n).unwrap(), MonomialOrder::DegRevLex).unwrap()
    }

    fn gens(r: &RingRef<Rationals>, g: &[&str]) -> IdealGens<Rationals> {
        IdealGens::parse(r, "I", g).unwrap()
    }

    #[test]
    fn already_reduced_basis() {
        let r = ring(2);
        let gb = groebner_basis(&gens(&r, &["X1^2", "X1*X2"]), &GbConfig::default()).unwrap();
        let mut got: Vec<String> = gb.basis().iter().map(|g| g.to_string()).collect();
        got.sort();
        assert_eq!(got, vec!["X1*X2", "X1^2"]);
        gb.audit().unwrap();
    }

    #[test]
    fn principal_ideal_is_made_monic() {
        let r = ring(2);
        let gb = groebner_basis(&gens(&r, &["3*X1^2 - 6*X2"]), &GbConfig::default()).unwrap();
        assert_eq!(gb.basis().len(), 1);
        assert_eq!(gb.basis()[0].to_string(), "X1^2 - 2*X2");
    }

    #[test]
    fn outer_scroll_minors_with_coprime_leads() {
        // Leading monomials X2^2 and X3^2 are coprime under DegRevLex (X1*X3 and
        // X2*X4 under Lex), so the pair is already a Groebner basis.
        let r = ring(4);
        let i = gens(&r, &["X1*X3 - X2^2", "X2*X4 - X3^2"]);
        for order in [MonomialOrder::DegRevLex, MonomialOrder::Lex] {
            let gb = buchberger(&i, &order, &GbConfig::default()).unwrap();
            assert_eq!(gb.basis().len(), 2, "{order}");
            gb.audit().unwrap();
        }
        let gb = groebner_basis(&i, &GbConfig::default()).unwrap();
        let middle = r.parse("X1*X4 - X2*X3").unwrap();
        assert!(!gb.normal_form(&middle).unwrap().is_zero());
    }

    #[test]
    fn twisted_cubic_needs_a_third_element() {
        let r = ring(4);
        let i = gens(&r, &["X1*X3 - X2^2", "X1*X4 - X2*X3"]);
        let gb = groebner_basis(&i, &GbConfig::default()).unwrap();
        assert_eq!(gb.basis().len(), 3);
        assert!(gb.contains(&(r.parse("X2*X4 - X3^2").unwrap() * r.var(1))).unwrap());
        gb.audit().unwrap();
    }

    #[test]
    fn lex_stays_in_low_degree() {
        let r = ring(3);
        let cases: [(&[&str], usize, u32); 2] = [
            (&["1 - X1^2*X2", "X2^2 - X1^2*X3", "X1^2 + X1 + X3^2"], 4, 13),
            (&["-X1 - X1^2*X2^2*X3", "X3 - 1 + X1^2*X2*X3^2", "X1^2 - X1 + X2^2"], 4, 8),
        ];
        for (polys, len, deg) in cases {
            let i = gens(&r, polys)
                .with_order(&MonomialOrder::Lex)
                .unwrap()
                .to_field(PrimeField::new(32003).unwrap())
                .unwrap();
            let gb = groebner_basis(&i, &GbConfig::default()).unwrap();
            assert_eq!(gb.basis().len(), len);
            assert!(gb.basis().iter().all(|g| g.total_degree().unwrap() <= deg));
            gb.audit().unwrap();
        }
    }

    #[test]
    fn membership_examples() {
        let r = ring(2);
        let cfg = GbConfig::default();
        assert!(!ideal_contains(&gens(&r, &["X1"]), &r.var(1), &cfg).unwrap());
        let g = r.parse("X1^2 - X2").unwrap();
        let i = IdealGens::new(&r, "g", vec![g.clone()]).unwrap();
        assert!(groebner_basis(&i, &cfg).unwrap().normal_form(&g).unwrap().is_zero());
    }

    #[test]
    fn radical_examples() {
        let r = ring(2);
        let cfg = GbConfig::default();
        let sq = gens(&r, &["X1^2"]);
        assert!(radical_contains(&sq, &r.var(0), &cfg).unwrap());
        assert!(!radical_contains(&sq, &r.var(1), &cfg).unwrap());
        assert!(radical_contains(&sq, &r.parse("X1^2").unwrap(), &cfg).unwrap());
    }

    #[test]
    fn radical_equal_reports_witness() {
        let r = ring(2);
        let rep = radical_equal(&gens(&r, &["X1"]), &gens(&r, &["X2"]), &GbConfig::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::False);
        assert!(rep.witness.unwrap().starts_with("X1"));
        let same = gens(&r, &["X1^2 + X2", "X2^3"]);
        assert!(radical_equal(&same, &same, &GbConfig::default()).unwrap().passed());
    }

    #[test]
    fn min_power_examples() {
        let r = ring(1);
        let cfg = GbConfig::default();
        let i = gens(&r, &["X1^3"]);
        assert_eq!(min_power_in_ideal(&r.var(0), &i, 5, &cfg).unwrap(), Some(3));
        assert_eq!(min_power_in_ideal(&r.var(0), &i, 2, &cfg).unwrap(), None);
        assert!(min_power_in_ideal(&r.var(0), &i, 0, &cfg).is_err());
    }

    #[test]
    fn power_containment_refuses_huge_counts() {
        assert_eq!(product_count(6, 2), BigUint::from(21u32));
        assert_eq!(product_count(28, 13), polyring::binomial_coefficient(40, 13).unwrap());
        let r = ring(2);
        let i = gens(&r, &["X1", "X2"]);
        let err = ideal_power_contained(&i, &i, 3, 3, &GbConfig::default()).unwrap_err();
        assert!(matches!(err, Error::Refused { ref required, .. } if required == "4 products"));
        let rep = ideal_power_contained(&i, &i, 1, 10, &GbConfig::default()).unwrap();
        assert!(rep.passed());
    }

    #[test]
    fn caps_are_reported_not_guessed() {
        let r = ring(4);
        let i = gens(&r, &["X1*X3 - X2^2", "X1*X4 - X2*X3"]);
        let cfg = GbConfig {
            max_spairs: 0,
            ..GbConfig::default()
        };
        assert!(matches!(groebner_basis(&i, &cfg), Err(Error::Capped { .. })));
        let cfg = GbConfig {
            max_degree: 2,
            ..GbConfig::default()
        };
        assert!(matches!(groebner_basis(&i, &cfg), Err(Error::Capped { .. })));
    }

    #[test]
    fn lex_elimination_of_twisted_cubic() {
        // x = s, y = s^2, z = s^3 eliminated from the lex basis
        let r = Ring::new(
            Rationals,
            VariableSet::new(["s", "x", "y", "z"]).unwrap(),
            MonomialOrder::elimination([0]),
        )
        .unwrap();
        let i = IdealGens::parse(&r, "param", &["x - s", "y - s^2", "z - s^3"]).unwrap();
        let gb = groebner_basis(&i, &GbConfig::default()).unwrap();
        gb.audit().unwrap();
        let s_free: Vec<_> = gb
            .basis()
            .iter()
            .filter(|g| g.terms().iter().all(|t| t.mono.exponents()[0] == 0))
            .collect();
        assert!(!s_free.is_empty());
        assert!(gb.contains(&r.parse("x*z - y^2").unwrap()).unwrap());
        assert!(gb.contains(&r.parse("y - x^2").unwrap()).unwrap());
    }
}
