//! Named example scenarios and matrix-file runs, bundled into reports.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::field::{Field, FieldSpec, PrimeField, Rationals};
use crate::fixtures;
use crate::groebner::{self, Certification, GbConfig, IdealGens};
use crate::polyring::{MonomialOrder, Polynomial, RingExt};
use crate::random;
use crate::report::{GeneratorResult, VerificationReport, Verdict};
use crate::schmitt_vogel::SvSystem;
use crate::scroll::BarredMatrix;
use crate::varieties;

/// Least `e` with `g^e` in the seven-polynomial system, per generator of
/// [`fixtures::EX1_J`], as computed by an independent implementation.
pub const EX1_MIN_POWERS: [u32; 28] = [
    1, 1, 2, 2, 1, 3, 3, 3, 3, 2, 2, 1, 12, 6, 3, 4, 2, 12, 6, 6, 4, 2, 6, 3, 6, 3, 6, 5,
];

/// Power bound that every entry of [`EX1_MIN_POWERS`] must respect.
pub const EX1_POWER_BOUND: u32 = 13;

/// Primes used by the point-enumeration consistency checks.
pub const POINT_PRIMES: [u64; 2] = [2, 3];

/// `F_1 .. F_{c-1}` of one scroll block in `X1..X_{c+1}`, for `c = 2, 3, 4`.
pub const SCROLL_SYSTEMS: [&[&str]; 3] = [
    &["X1*X3 - X2^2"],
    &["X1*X3 - X2^2", "X1*X4^2 - 2*X2*X3*X4 + X3^3"],
    &[
        "X1*X3 - X2^2",
        "X1*X4^2 - 2*X2*X3*X4 + X3^3",
        "X1*X5^3 - 3*X2*X4*X5^2 + 3*X3*X4^2*X5 - X4^4",
    ],
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckId {
    Validate,
    Generators,
    System,
    Membership,
    RadicalEqual,
    Sv,
    Points,
    MinPower,
    PowerContained,
    Toric,
    Certificates,
    RandomMembership,
}

impl CheckId {
    pub const ALL: [CheckId; 12] = [
        CheckId::Validate,
        CheckId::Generators,
        CheckId::System,
        CheckId::Membership,
        CheckId::RadicalEqual,
        CheckId::Sv,
        CheckId::Points,
        CheckId::MinPower,
        CheckId::PowerContained,
        CheckId::Toric,
        CheckId::Certificates,
        CheckId::RandomMembership,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckId::Validate => "validate",
            CheckId::Generators => "generators",
            CheckId::System => "system",
            CheckId::Membership => "membership",
            CheckId::RadicalEqual => "radical-equal",
            CheckId::Sv => "sv",
            CheckId::Points => "points",
            CheckId::MinPower => "min-power",
            CheckId::PowerContained => "power-contained",
            CheckId::Toric => "toric",
            CheckId::Certificates => "certificates",
            CheckId::RandomMembership => "random-membership",
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckId::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| {
                let known: Vec<&str> = CheckId::ALL.iter().map(|c| c.name()).collect();
                Error::Input(format!("unknown check '{s}' (known: {})", known.join(", ")))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExampleName {
    Ex1,
    Ex3,
    Ex4,
    Ex4Prime,
    Ex5,
    ScrollC(usize),
}

impl ExampleName {
    pub const NAMES: [&'static str; 6] = ["ex1", "ex3", "ex4", "ex4prime", "ex5", "scroll-c"];

    /// `c` is only read for `scroll-c`.
    pub fn parse(name: &str, c: usize) -> Result<Self> {
        Ok(match name {
            "ex1" => ExampleName::Ex1,
            "ex3" => ExampleName::Ex3,
            "ex4" => ExampleName::Ex4,
            "ex4prime" => ExampleName::Ex4Prime,
            "ex5" => ExampleName::Ex5,
            "scroll-c" => {
                if c == 0 {
                    return Err(Error::Input("scroll width must be at least 1".into()));
                }
                ExampleName::ScrollC(c)
            }
            other => {
                return Err(Error::Input(format!(
                    "unknown example '{other}' (known: {})",
                    Self::NAMES.join(", ")
                )))
            }
        })
    }

    /// Checks run when none are selected.
    pub fn default_checks(self) -> &'static [CheckId] {
        use CheckId::*;
        match self {
            ExampleName::Ex1 => &[Validate, Generators, System, Membership],
            ExampleName::Ex3 => &[System, Membership, RadicalEqual, Sv, Points, MinPower],
            ExampleName::Ex4 => &[Validate, Generators, System, RadicalEqual, PowerContained, Points, Toric],
            ExampleName::Ex4Prime => &[Validate, Generators, Certificates, RadicalEqual, Points],
            ExampleName::Ex5 => &[Validate, Generators, RadicalEqual, Points],
            ExampleName::ScrollC(_) => &[Validate, System, RadicalEqual, Points],
        }
    }
}

impl fmt::Display for ExampleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExampleName::Ex1 => f.write_str("ex1"),
            ExampleName::Ex3 => f.write_str("ex3"),
            ExampleName::Ex4 => f.write_str("ex4"),
            ExampleName::Ex4Prime => f.write_str("ex4prime"),
            ExampleName::Ex5 => f.write_str("ex5"),
            ExampleName::ScrollC(c) => write!(f, "scroll-c (c = {c})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub spairs: u64,
    pub degree: u32,
    pub power: u32,
    pub products: u64,
    pub points_budget: u64,
}

impl Default for Caps {
    fn default() -> Self {
        let gb = GbConfig::default();
        Caps {
            spairs: gb.max_spairs,
            degree: gb.max_degree,
            power: 16,
            products: 10_000,
            points_budget: varieties::DEFAULT_BUDGET,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub field: FieldSpec,
    pub order: MonomialOrder,
    pub caps: Caps,
    /// Empty selects the scenario's default list.
    pub checks: Vec<CheckId>,
    pub seed: u64,
    pub execution: Execution,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            field: FieldSpec::ExactRationals,
            order: MonomialOrder::DegRevLex,
            caps: Caps::default(),
            checks: Vec::new(),
            seed: random::DEFAULT_SEED,
            execution: Execution::default(),
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        let c = &self.caps;
        if c.spairs == 0 || c.degree == 0 || c.power == 0 || c.products == 0 || c.points_budget == 0 {
            return Err(Error::Input("all caps must be positive".into()));
        }
        if let FieldSpec::PrimeField(p) = self.field {
            PrimeField::new(p)?;
        }
        Ok(())
    }

    pub fn gb(&self) -> GbConfig {
        GbConfig {
            max_spairs: self.caps.spairs,
            max_degree: self.caps.degree,
            execution: self.execution,
        }
    }

    /// Rational input is pre-checked modulo 32003 and then certified over
    /// QQ; a prime field runs modularly only.
    pub fn certification(&self) -> Certification {
        match self.field {
            FieldSpec::ExactRationals => Certification::default(),
            FieldSpec::PrimeField(p) => Certification::Modular(p),
        }
    }

    fn selected(&self, available: &[CheckId]) -> Vec<CheckId> {
        if self.checks.is_empty() {
            available.to_vec()
        } else {
            let mut v = self.checks.clone();
            v.sort();
            v.dedup();
            v
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub check: CheckId,
    pub report: VerificationReport,
}

/// Reports for one scenario, in canonical check order.
#[derive(Debug, Clone, Serialize)]
pub struct Bundle {
    pub subject: String,
    pub verdict: Verdict,
    pub reports: Vec<CheckReport>,
}

/// Bundles reports produced outside the scenario runners.
pub fn bundle(subject: String, reports: Vec<(CheckId, VerificationReport)>) -> Bundle {
    Bundle::new(
        subject,
        reports
            .into_iter()
            .map(|(check, report)| CheckReport { check, report })
            .collect(),
    )
}

impl Bundle {
    fn new(subject: String, reports: Vec<CheckReport>) -> Self {
        let verdict = Verdict::all(reports.iter().map(|r| r.report.verdict));
        Bundle {
            subject,
            verdict,
            reports,
        }
    }

    pub fn report(&self, check: CheckId) -> Option<&VerificationReport> {
        self.reports.iter().find(|r| r.check == check).map(|r| &r.report)
    }

    /// 0 all true, 1 some false, 2 some inconclusive.
    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Verdict::True => 0,
            Verdict::False => 1,
            Verdict::Inconclusive => 2,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("bundle serializes")
    }
}

impl fmt::Display for Bundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "== {} ==", self.subject)?;
        for r in &self.reports {
            writeln!(f, "{:<18}{}", r.check.name(), r.report)?;
        }
        write!(f, "overall: {}", self.verdict)
    }
}

/// Runs `f` over the configured field, converting rational data as needed.
macro_rules! on_field {
    ($cfg:expr, [$($x:ident),+], $body:expr) => {
        match $cfg.field {
            FieldSpec::ExactRationals => $body,
            FieldSpec::PrimeField(p) => {
                let fld = PrimeField::new(p)?;
                $(let $x = $x.to_field(fld)?;)+
                $(let $x = &$x;)+
                $body
            }
        }
    };
}

/// Lexicographic display of each generator.
fn lex_strings(ideal: &IdealGens<Rationals>) -> Result<Vec<String>> {
    Ok(ideal.with_order(&MonomialOrder::Lex)?.to_strings())
}

/// Exact match between computed generators and a reference list: the same
/// polynomials and the same lexicographic display strings.
fn generators_report(computed: &IdealGens<Rationals>, reference: &IdealGens<Rationals>) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut report = VerificationReport::new(
        format!("{} has the {} reference generators", computed.label(), reference.len()),
        Verdict::True,
    );
    let shown = lex_strings(computed)?;
    let wanted = lex_strings(reference)?;
    for (g, text) in reference.gens().iter().zip(&wanted) {
        let found = computed.gens().iter().position(|c| c == g);
        let ok = found.is_some_and(|k| shown[k] == *text);
        report.per_generator.push(GeneratorResult {
            generator: text.clone(),
            check: "listed".into(),
            result: Verdict::from_bool(ok),
            power: None,
            detail: found.map(|k| format!("computed #{}", k + 1)),
        });
    }
    let extra: Vec<&String> = computed
        .gens()
        .iter()
        .zip(&shown)
        .filter(|(c, _)| !reference.gens().contains(c))
        .map(|(_, s)| s)
        .collect();
    let mut verdict = Verdict::all(report.per_generator.iter().map(|g| g.result));
    if !extra.is_empty() || computed.len() != reference.len() {
        verdict = Verdict::False;
        report.witness = Some(match extra.first() {
            Some(e) => format!("unexpected generator {e}"),
            None => format!("{} generators, expected {}", computed.len(), reference.len()),
        });
    }
    report.verdict = verdict;
    report.notes.push(format!("{} = ({})", computed.label(), shown.join(", ")));
    Ok(report.timed(start))
}

/// Named system against named reference polynomials.
fn system_report(
    computed: &[(String, Polynomial<Rationals>)],
    reference: &[(String, Polynomial<Rationals>)],
) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut report = VerificationReport::new(
        format!("system matches {} reference polynomial(s)", reference.len()),
        Verdict::True,
    );
    for (name, want) in reference {
        let lex = want.ring().with_order(MonomialOrder::Lex)?;
        let want_text = want.embed(&lex)?.to_string();
        let got = computed.iter().find(|(n, _)| n == name);
        let (result, detail) = match got {
            None => (Verdict::False, "missing".to_string()),
            Some((_, p)) => {
                let text = p.embed(&lex)?.to_string();
                (Verdict::from_bool(p == want && text == want_text), text)
            }
        };
        report.per_generator.push(GeneratorResult {
            generator: format!("{name} = {want_text}"),
            check: "term-for-term".into(),
            result,
            power: None,
            detail: Some(detail),
        });
    }
    report.verdict = Verdict::all(report.per_generator.iter().map(|g| g.result));
    if computed.len() != reference.len() {
        report.verdict = Verdict::False;
        report.witness = Some(format!("{} polynomials, expected {}", computed.len(), reference.len()));
    }
    Ok(report.timed(start))
}

/// The computed named system alone, listed in the notes.
fn system_listing(computed: &[(String, Polynomial<Rationals>)], expected: usize) -> Result<VerificationReport> {
    let mut lines = Vec::with_capacity(computed.len());
    for (n, p) in computed {
        let lex = p.ring().with_order(MonomialOrder::Lex)?;
        lines.push(format!("{n} = {}", p.embed(&lex)?));
    }
    let mut r = VerificationReport::new(
        format!("system has {expected} polynomial(s)"),
        Verdict::from_bool(computed.len() == expected),
    );
    r.notes = lines;
    Ok(r)
}

/// Every element of `b` lies in the ideal generated by `a`.
fn membership<F: Field>(a: &IdealGens<F>, b: &IdealGens<F>, cfg: &GbConfig) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut report = VerificationReport::new(format!("{} in ({})", b.label(), a.label()), Verdict::True)
        .with_field(a.ring().field().spec())
        .with_order(a.ring().order());
    let gb = match groebner::groebner_basis(a, cfg) {
        Ok(gb) => gb,
        Err(e) => return Ok(VerificationReport::from_error(report.claim, &e).timed(start)),
    };
    report.stats.absorb(gb.stats());
    for g in b.gens() {
        let inside = gb.contains(g)?;
        report.per_generator.push(GeneratorResult {
            generator: g.to_string(),
            check: format!("in ({})", a.label()),
            result: Verdict::from_bool(inside),
            power: Some(1),
            detail: None,
        });
    }
    report.verdict = Verdict::all(report.per_generator.iter().map(|g| g.result));
    Ok(report.timed(start))
}

/// Least powers of the generators of `j` inside `(i)`, compared with a
/// frozen table when one is given.
fn min_power_table<F: Field>(
    j: &IdealGens<F>,
    i: &IdealGens<F>,
    bound: u32,
    frozen: Option<&[u32]>,
    cfg: &GbConfig,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut report = VerificationReport::new(
        format!("every generator of {} has a power <= {bound} in ({})", j.label(), i.label()),
        Verdict::True,
    )
    .with_field(j.ring().field().spec())
    .with_order(j.ring().order());
    let gb = match groebner::groebner_basis(i, cfg) {
        Ok(gb) => gb,
        Err(e) => return Ok(VerificationReport::from_error(report.claim, &e).timed(start)),
    };
    report.stats.absorb(gb.stats());
    let powers = cfg
        .execution
        .map(j.gens(), |g| groebner::min_power_with_basis(g, &gb, bound));
    let mut table = Vec::with_capacity(powers.len());
    for (k, (g, e)) in j.gens().iter().zip(powers).enumerate() {
        let e = e?;
        let mut result = Verdict::from_bool(e.is_some());
        let mut detail = None;
        if let (Some(frozen), Some(got)) = (frozen, e) {
            if frozen.get(k) != Some(&got) {
                result = Verdict::False;
                detail = Some(format!("frozen value {:?}", frozen.get(k)));
            }
        }
        table.push(e.map_or("-".to_string(), |x| x.to_string()));
        report.per_generator.push(GeneratorResult {
            generator: g.to_string(),
            check: "least power".into(),
            result,
            power: e,
            detail,
        });
    }
    report.verdict = Verdict::all(report.per_generator.iter().map(|g| g.result));
    report.notes.push(format!("least powers: [{}]", table.join(", ")));
    Ok(report.timed(start))
}

fn radical_report(a: &IdealGens<Rationals>, b: &IdealGens<Rationals>, cfg: &RunConfig) -> VerificationReport {
    let claim = format!("sqrt({}) = sqrt({})", a.label(), b.label());
    groebner::certify_radical_equal(a, b, &cfg.gb(), cfg.certification())
        .unwrap_or_else(|e| VerificationReport::from_error(claim, &e))
}

fn points_report(a: &IdealGens<Rationals>, b: &IdealGens<Rationals>, cfg: &RunConfig) -> VerificationReport {
    let start = Instant::now();
    let mut reports = Vec::new();
    for p in POINT_PRIMES {
        let claim = format!("V({}) = V({}) over GF({p}) (consistency check)", a.label(), b.label());
        reports.push(
            varieties::same_vanishing_set(a, b, p, cfg.caps.points_budget, cfg.execution)
                .unwrap_or_else(|e| VerificationReport::from_error(claim, &e)),
        );
    }
    let mut out = VerificationReport::new(
        format!("V({}) = V({}) over GF(2), GF(3) (consistency check)", a.label(), b.label()),
        Verdict::all(reports.iter().map(|r| r.verdict)),
    );
    for r in reports {
        out.notes.push(format!("{}: {}", r.claim, r.verdict));
        out.notes.extend(r.notes);
        out.per_generator.extend(r.per_generator);
        if out.witness.is_none() {
            out.witness = r.witness;
        }
    }
    out.timed(start)
}

fn random_membership(j: &IdealGens<Rationals>, cfg: &RunConfig) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut rng = random::rng(cfg.seed);
    let combos = (0..20)
        .map(|_| random::combination(&mut rng, j, 2))
        .collect::<Result<Vec<_>>>()?;
    let nonzero = combos.into_iter().filter(|f| !f.is_zero()).collect();
    let sample = &IdealGens::new(j.ring(), "random combinations", nonzero)?;
    let r = on_field!(cfg, [j, sample], membership(j, sample, &cfg.gb()))?;
    Ok(r.note(format!("seed {}", cfg.seed)).timed(start))
}

/// Heading line of a bundle.
fn subject(name: ExampleName, cfg: &RunConfig) -> String {
    format!("example {name} over {} ({})", cfg.field, cfg.order)
}

fn load(name: ExampleName, order: &MonomialOrder) -> Result<BarredMatrix> {
    let m = match name {
        ExampleName::Ex1 | ExampleName::Ex3 => fixtures::ex1_matrix(),
        ExampleName::Ex4 => fixtures::ex4_matrix(),
        ExampleName::Ex4Prime => fixtures::ex4prime_matrix(),
        ExampleName::Ex5 => fixtures::ex5_matrix(),
        ExampleName::ScrollC(c) => fixtures::scroll_block(c)?,
    };
    m.with_order(order.clone())
}

/// Runs one named scenario. Checks not listed for the scenario (other than
/// `random-membership`) are rejected as input errors.
pub fn run_example(name: ExampleName, cfg: &RunConfig) -> Result<Bundle> {
    cfg.validate()?;
    let defaults = name.default_checks();
    let checks = cfg.selected(defaults);
    if let Some(bad) = checks
        .iter()
        .find(|c| !defaults.contains(c) && **c != CheckId::RandomMembership)
    {
        return Err(Error::Input(format!("check '{bad}' does not apply to {name}")));
    }
    let m = load(name, &cfg.order)?;
    let j = &m.ideal_j()?;
    let gb = cfg.gb();
    let mut out = Vec::with_capacity(checks.len());
    for check in checks {
        let report = match (check, name) {
            (CheckId::Validate, _) => m.validate(),
            (CheckId::Generators, _) => {
                let reference: &[&str] = match name {
                    ExampleName::Ex1 | ExampleName::Ex3 => &fixtures::EX1_J,
                    ExampleName::Ex4 => &fixtures::EX4_J,
                    ExampleName::Ex4Prime => &fixtures::EX4PRIME_J,
                    ExampleName::Ex5 => &fixtures::EX5_J,
                    ExampleName::ScrollC(_) => unreachable!("not in the scroll list"),
                };
                generators_report(j, &fixtures::parse_in(&m, "reference", reference)?)?
            }
            (CheckId::System, ExampleName::ScrollC(c)) => {
                let named = m.stci_named()?;
                match SCROLL_SYSTEMS.get(c.wrapping_sub(2)) {
                    Some(list) => {
                        let reference: Vec<(String, &str)> = list
                            .iter()
                            .enumerate()
                            .map(|(k, s)| (format!("F^1_{}", k + 1), *s))
                            .collect();
                        let refs: Vec<(&str, &str)> = reference.iter().map(|(n, s)| (n.as_str(), *s)).collect();
                        system_report(&named, &fixtures::parse_named(&m, &refs)?)?
                    }
                    None => system_listing(&named, m.expected_height())?,
                }
            }
            (CheckId::System, _) => {
                let reference: &[(&str, &str)] = match name {
                    ExampleName::Ex4 => &fixtures::EX4_SYSTEM,
                    _ => &fixtures::EX1_SYSTEM,
                };
                system_report(&m.stci_named()?, &fixtures::parse_named(&m, reference)?)?
            }
            (CheckId::Membership, _) => {
                let s = &m.stci_system()?;
                on_field!(cfg, [j, s], membership(j, s, &gb))?
            }
            (CheckId::RadicalEqual, _) => {
                let other = match name {
                    ExampleName::Ex4Prime => fixtures::ex4prime_p(&m)?,
                    ExampleName::Ex5 => fixtures::parse_in(&m, "5 equations", &fixtures::EX5_EQUATIONS)?,
                    _ => m.stci_system()?,
                };
                radical_report(j, &other, cfg)
            }
            (CheckId::Sv, _) => sv_report(&m, cfg)?,
            (CheckId::Points, _) => {
                let other = match name {
                    ExampleName::Ex4Prime => fixtures::ex4prime_p(&m)?,
                    ExampleName::Ex5 => fixtures::parse_in(&m, "5 equations", &fixtures::EX5_EQUATIONS)?,
                    _ => m.stci_system()?,
                };
                points_report(j, &other, cfg)
            }
            (CheckId::MinPower, _) => {
                let s = &m.stci_system()?;
                on_field!(
                    cfg,
                    [j, s],
                    min_power_table(j, s, EX1_POWER_BOUND, Some(&EX1_MIN_POWERS), &gb)
                )?
            }
            (CheckId::PowerContained, _) => {
                let s = &m.stci_system()?;
                let claim = format!("({})^2 in ({})", j.label(), s.label());
                on_field!(cfg, [j, s], {
                    groebner::ideal_power_contained(j, s, 2, cfg.caps.products, &gb)
                        .unwrap_or_else(|e| VerificationReport::from_error(claim.clone(), &e))
                })
            }
            (CheckId::Toric, _) => fixtures::ex4_curve().check()?,
            (CheckId::Certificates, _) => certificates_report(&m)?,
            (CheckId::RandomMembership, _) => random_membership(j, cfg)?,
        };
        out.push(CheckReport { check, report });
    }
    Ok(Bundle::new(subject(name, cfg), out))
}

fn sv_report(m: &BarredMatrix, cfg: &RunConfig) -> Result<VerificationReport> {
    let layers = m.sv_partition()?;
    let sys = SvSystem::new(m.ring(), layers)?;
    let mut report = sys.verify_conditions(cfg.caps.power, &cfg.gb())?;
    let mut gs = m.corner_sums()?;
    gs.reverse();
    let sums = sys.build_sums()?;
    if sums != gs {
        report.verdict = Verdict::False;
        report.witness = Some("layer sums differ from the corner sums".into());
    } else {
        report.notes.push("layer sums equal G_{r-1}, ..., G_1".into());
    }
    Ok(report)
}

/// Both displayed identities `lhs = c1*P1 + c2*P2`, expanded exactly.
fn certificates_report(m: &BarredMatrix) -> Result<VerificationReport> {
    let start = Instant::now();
    let p = fixtures::ex4prime_p(m)?;
    let r = m.ring();
    let mut report = VerificationReport::new("certificate identities hold exactly", Verdict::True);
    for cert in &fixtures::EX4PRIME_CERTIFICATES {
        let lhs = r.parse(cert.lhs)?;
        let mut rhs = r.zero();
        for (c, pi) in cert.cofactors.iter().zip(p.gens()) {
            rhs = rhs.try_add(&r.parse(c)?.try_mul(pi)?)?;
        }
        let diff = lhs.try_sub(&rhs)?;
        report.per_generator.push(GeneratorResult {
            generator: format!("{lhs} = ({})*P1 + ({})*P2", cert.cofactors[0], cert.cofactors[1]),
            check: "identity".into(),
            result: Verdict::from_bool(diff.is_zero()),
            power: None,
            detail: (!diff.is_zero()).then(|| format!("difference {diff}")),
        });
    }
    report.verdict = Verdict::all(report.per_generator.iter().map(|g| g.result));
    Ok(report.timed(start))
}

/// validate, then `J`, the cutting system when the matrix is simple, the
/// radical comparison and the point comparison.
pub fn run_matrix(m: &BarredMatrix, source: &str, cfg: &RunConfig) -> Result<Bundle> {
    cfg.validate()?;
    let m = m.clone().with_order(cfg.order.clone())?;
    let subject = format!("matrix {source} over {} ({})", cfg.field, cfg.order);
    let validation = m.validate();
    let mut out = vec![CheckReport {
        check: CheckId::Validate,
        report: validation.clone(),
    }];
    if !validation.passed() {
        return Ok(Bundle::new(subject, out));
    }
    let j = m.ideal_j()?;
    out.push(CheckReport {
        check: CheckId::Generators,
        report: VerificationReport::new(format!("J has {} generators", j.len()), Verdict::True)
            .note(format!("J = ({})", lex_strings(&j)?.join(", "))),
    });
    if !m.is_simple() {
        out.push(CheckReport {
            check: CheckId::System,
            report: VerificationReport::new("cutting system", Verdict::True)
                .note("generalized matrix: no F,G-system is defined; supply equations with `sv` instead"),
        });
        return Ok(Bundle::new(subject, out));
    }
    let named = m.stci_named()?;
    out.push(CheckReport {
        check: CheckId::System,
        report: system_listing(&named, m.expected_height())?,
    });
    let s = m.stci_system()?;
    let selected = cfg.selected(&[CheckId::RadicalEqual, CheckId::Points]);
    if selected.contains(&CheckId::RadicalEqual) {
        out.push(CheckReport {
            check: CheckId::RadicalEqual,
            report: radical_report(&j, &s, cfg),
        });
    }
    if selected.contains(&CheckId::Points) {
        out.push(CheckReport {
            check: CheckId::Points,
            report: points_report(&j, &s, cfg),
        });
    }
    Ok(Bundle::new(subject, out))
}

/// Pair conditions and the radical claim for a layered system.
pub fn run_sv(sys: &SvSystem<Rationals>, source: &str, cfg: &RunConfig) -> Result<Bundle> {
    cfg.validate()?;
    let conditions = sys.verify_conditions(cfg.caps.power, &cfg.gb())?;
    let sums = sys.build_sums()?;
    let union = sys.union()?;
    let q = IdealGens::new(sys.ring(), "q", sums.clone())?;
    let mut claim = radical_report(&union, &q, cfg);
    claim.notes.push(format!(
        "q = ({})",
        sums.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", ")
    ));
    Ok(Bundle::new(
        format!("layered system {source}"),
        vec![
            CheckReport {
                check: CheckId::Sv,
                report: conditions,
            },
            CheckReport {
                check: CheckId::RadicalEqual,
                report: claim,
            },
        ],
    ))
}
