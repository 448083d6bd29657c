//! Exact sparse multivariate polynomials over [`Rationals`] and prime fields.
//!
//! A [`Ring`] bundles the coefficient field, the variable names and the
//! monomial order. Every [`Polynomial`] holds an `Arc` to its ring and keeps
//! its terms sorted strictly descending under the ring's order, with no zero
//! coefficients. Two polynomials are equal iff their term lists are equal.
//!
//! [`Rationals`]: crate::field::Rationals

mod monomial;
mod order;
pub mod parse;

use std::cmp::Ordering;
use std::fmt;
use std::ops;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use monomial::Monomial;
pub use order::MonomialOrder;

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals};

/// Display names for the ring variables; identity is the index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VariableSet {
    names: Vec<String>,
}

impl VariableSet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::Input("a ring needs at least one variable".into()));
        }
        for (i, n) in names.iter().enumerate() {
            if !parse::is_identifier(n) {
                return Err(Error::Input(format!("'{n}' is not a valid variable name")));
            }
            if names[..i].contains(n) {
                return Err(Error::Input(format!("duplicate variable name '{n}'")));
            }
        }
        Ok(VariableSet { names })
    }

    /// `prefix1 .. prefixN`.
    pub fn indexed(prefix: &str, count: usize) -> Result<Self> {
        Self::new((1..=count).map(|i| format!("{prefix}{i}")))
    }

    pub fn count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Ring<F: Field> {
    field: F,
    vars: VariableSet,
    order: MonomialOrder,
}

pub type RingRef<F> = Arc<Ring<F>>;

impl<F: Field> Ring<F> {
    pub fn new(field: F, vars: VariableSet, order: MonomialOrder) -> Result<RingRef<F>> {
        order.validate(vars.count())?;
        Ok(Arc::new(Ring { field, vars, order }))
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn vars(&self) -> &VariableSet {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.count()
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    #[inline]
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.compare(a, b)
    }

    /// Same field and variables under a different order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<RingRef<F>> {
        Ring::new(self.field.clone(), self.vars.clone(), order)
    }

    /// Same variables and order over another field.
    pub fn with_field<G: Field>(&self, field: G) -> RingRef<G> {
        Arc::new(Ring {
            field,
            vars: self.vars.clone(),
            order: self.order.clone(),
        })
    }

    /// One fresh variable appended last. The name avoids collisions.
    pub fn extended(&self, name: &str) -> RingRef<F> {
        let mut fresh = name.to_string();
        let mut k = 0;
        while self.vars.index_of(&fresh).is_some() {
            k += 1;
            fresh = format!("{name}_{k}");
        }
        let mut names = self.vars.names.clone();
        names.push(fresh);
        Arc::new(Ring {
            field: self.field.clone(),
            vars: VariableSet { names },
            order: self.order.clone(),
        })
    }

    pub fn same_context(a: &RingRef<F>, b: &RingRef<F>) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }
}

/// Constructors that need the shared handle.
pub trait RingExt<F: Field> {
    fn zero(&self) -> Polynomial<F>;
    fn one(&self) -> Polynomial<F>;
    fn constant(&self, c: F::Elem) -> Polynomial<F>;
    fn int(&self, n: i64) -> Polynomial<F>;
    fn var(&self, index: usize) -> Polynomial<F>;
    fn var_named(&self, name: &str) -> Result<Polynomial<F>>;
    fn monomial(&self, c: F::Elem, m: Monomial) -> Result<Polynomial<F>>;
    fn parse(&self, text: &str) -> Result<Polynomial<F>>;
}

impl<F: Field> RingExt<F> for RingRef<F> {
    fn zero(&self) -> Polynomial<F> {
        Polynomial {
            ring: self.clone(),
            terms: Vec::new(),
        }
    }

    fn one(&self) -> Polynomial<F> {
        self.constant(self.field.one())
    }

    fn constant(&self, c: F::Elem) -> Polynomial<F> {
        let terms = if self.field.is_zero(&c) {
            Vec::new()
        } else {
            vec![Term {
                coeff: c,
                mono: Monomial::one(self.nvars()),
            }]
        };
        Polynomial {
            ring: self.clone(),
            terms,
        }
    }

    fn int(&self, n: i64) -> Polynomial<F> {
        self.constant(self.field.from_i64(n))
    }

    fn var(&self, index: usize) -> Polynomial<F> {
        assert!(index < self.nvars(), "variable index {index} out of range");
        Polynomial {
            ring: self.clone(),
            terms: vec![Term {
                coeff: self.field.one(),
                mono: Monomial::var(self.nvars(), index),
            }],
        }
    }

    fn var_named(&self, name: &str) -> Result<Polynomial<F>> {
        self.vars
            .index_of(name)
            .map(|i| self.var(i))
            .ok_or_else(|| Error::Input(format!("unknown variable '{name}'")))
    }

    fn monomial(&self, c: F::Elem, m: Monomial) -> Result<Polynomial<F>> {
        Polynomial::from_terms(self, vec![(c, m)])
    }

    fn parse(&self, text: &str) -> Result<Polynomial<F>> {
        let raw = parse::parse_raw(text)?;
        let n = self.nvars();
        let mut terms = Vec::with_capacity(raw.len());
        for t in raw {
            let mut exps = vec![0u32; n];
            for (name, e) in &t.factors {
                let i = self
                    .vars
                    .index_of(name)
                    .ok_or_else(|| Error::Input(format!("unknown variable '{name}' in '{text}'")))?;
                let e = e
                    .to_u32()
                    .ok_or_else(|| Error::ExponentOverflow(format!("{name}^{e}")))?;
                exps[i] = exps[i]
                    .checked_add(e)
                    .ok_or_else(|| Error::ExponentOverflow(format!("{name} in '{text}'")))?;
            }
            terms.push((self.field.from_rational(&t.coeff)?, Monomial::new(&exps)?));
        }
        Polynomial::from_terms(self, terms)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term<E> {
    pub coeff: E,
    pub mono: Monomial,
}

#[derive(Clone)]
pub struct Polynomial<F: Field> {
    ring: RingRef<F>,
    terms: Vec<Term<F::Elem>>,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        Ring::same_context(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl<F: Field> Eq for Polynomial<F> {}

impl<F: Field> Polynomial<F> {
    /// Builds a normalized polynomial from arbitrary `(coefficient, monomial)`
    /// pairs: sorts, merges equal monomials and drops zeros.
    pub fn from_terms(ring: &RingRef<F>, terms: Vec<(F::Elem, Monomial)>) -> Result<Self> {
        let n = ring.nvars();
        if let Some((_, m)) = terms.iter().find(|(_, m)| m.nvars() != n) {
            return Err(Error::Context(format!(
                "monomial with {} exponents in a ring of {n} variables",
                m.nvars()
            )));
        }
        let mut terms: Vec<Term<F::Elem>> = terms
            .into_iter()
            .map(|(coeff, mono)| Term { coeff, mono })
            .collect();
        terms.sort_by(|a, b| ring.compare(&b.mono, &a.mono));
        let f = &ring.field;
        let mut out: Vec<Term<F::Elem>> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.mono == t.mono => last.coeff = f.add(&last.coeff, &t.coeff),
                _ => {
                    if let Some(last) = out.last() {
                        if f.is_zero(&last.coeff) {
                            out.pop();
                        }
                    }
                    out.push(t)
                }
            }
        }
        if matches!(out.last(), Some(last) if f.is_zero(&last.coeff)) {
            out.pop();
        }
        Ok(Polynomial {
            ring: ring.clone(),
            terms: out,
        })
    }

    /// Trusted constructor for term lists already in normal form.
    pub(crate) fn from_sorted(ring: &RingRef<F>, terms: Vec<Term<F::Elem>>) -> Self {
        debug_assert!(is_normalized(ring, &terms));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &RingRef<F> {
        &self.ring
    }

    pub fn terms(&self) -> &[Term<F::Elem>] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&Term<F::Elem>> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.mono)
    }

    pub fn leading_coeff(&self) -> Option<&F::Elem> {
        self.terms.first().map(|t| &t.coeff)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.mono.degree()).max()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.mono.is_one())
    }

    /// A single term with coefficient one.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1 && self.ring.field.is_one(&self.terms[0].coeff)
    }

    pub fn is_normalized(&self) -> bool {
        is_normalized(&self.ring, &self.terms)
    }

    /// Re-runs normalization; the identity on any constructed polynomial.
    pub fn normalized(&self) -> Self {
        let raw = self
            .terms
            .iter()
            .map(|t| (t.coeff.clone(), t.mono.clone()))
            .collect();
        Polynomial::from_terms(&self.ring, raw).expect("same ring")
    }

    fn check_context(&self, other: &Self) -> Result<()> {
        if Ring::same_context(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::Context(format!(
                "{:?}/{} over {} vs {:?}/{} over {}",
                self.ring.vars.names,
                self.ring.order,
                self.ring.field.spec(),
                other.ring.vars.names,
                other.ring.order,
                other.ring.field.spec()
            )))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_context(other)?;
        let f = &self.ring.field;
        let terms = merge_with(&self.ring, &self.terms, other.terms.iter().cloned(), |a, b| {
            f.add(a, b)
        });
        Ok(Polynomial::from_sorted(&self.ring, terms))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_context(other)?;
        let f = &self.ring.field;
        let negated = other.terms.iter().map(|t| Term {
            coeff: f.neg(&t.coeff),
            mono: t.mono.clone(),
        });
        let terms = merge_with(&self.ring, &self.terms, negated, |a, b| f.add(a, b));
        Ok(Polynomial::from_sorted(&self.ring, terms))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_context(other)?;
        let (short, long) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc: Vec<Term<F::Elem>> = Vec::new();
        for t in &short.terms {
            let row = mul_term(&self.ring, &long.terms, &t.coeff, &t.mono)?;
            let f = &self.ring.field;
            acc = merge_with(&self.ring, &acc, row.into_iter(), |a, b| f.add(a, b));
        }
        Ok(Polynomial::from_sorted(&self.ring, acc))
    }

    pub fn neg(&self) -> Self {
        let f = &self.ring.field;
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: f.neg(&t.coeff),
                    mono: t.mono.clone(),
                })
                .collect(),
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.ring.field;
        if f.is_zero(c) {
            return self.ring.zero();
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: f.mul(&t.coeff, c),
                    mono: t.mono.clone(),
                })
                .collect(),
        }
    }

    /// `c * m * self`.
    pub fn mul_term(&self, c: &F::Elem, m: &Monomial) -> Result<Self> {
        if m.nvars() != self.ring.nvars() {
            return Err(Error::Context("monomial length mismatch".into()));
        }
        Ok(Polynomial::from_sorted(
            &self.ring,
            mul_term(&self.ring, &self.terms, c, m)?,
        ))
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = self.ring.one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.try_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Divides by the leading coefficient. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => {
                let inv = self.ring.field.inv(lc).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn eval(&self, point: &[F::Elem]) -> Result<F::Elem> {
        let n = self.ring.nvars();
        if point.len() != n {
            return Err(Error::Context(format!(
                "point of length {} for a ring of {n} variables",
                point.len()
            )));
        }
        let f = &self.ring.field;
        let mut acc = f.zero();
        for t in &self.terms {
            let mut v = t.coeff.clone();
            for (x, &e) in point.iter().zip(t.mono.exponents()) {
                for _ in 0..e {
                    v = f.mul(&v, x);
                }
            }
            acc = f.add(&acc, &v);
        }
        Ok(acc)
    }

    /// The same polynomial in `target`, which must share the field and have
    /// at least as many variables; extra variables get exponent zero.
    pub fn embed(&self, target: &RingRef<F>) -> Result<Self> {
        if target.field != self.ring.field || target.nvars() < self.ring.nvars() {
            return Err(Error::Context(format!(
                "cannot embed a {}-variable polynomial into a {}-variable ring",
                self.ring.nvars(),
                target.nvars()
            )));
        }
        let extra = target.nvars() - self.ring.nvars();
        let terms = self
            .terms
            .iter()
            .map(|t| (t.coeff.clone(), t.mono.extended(extra)))
            .collect();
        Polynomial::from_terms(target, terms)
    }

    /// Coefficient-wise image in another field through the canonical rational
    /// representative (exact for integer data).
    pub fn to_field<G: Field>(&self, target: &RingRef<G>) -> Result<Polynomial<G>> {
        if target.nvars() != self.ring.nvars() {
            return Err(Error::Context("variable count mismatch".into()));
        }
        let f = &self.ring.field;
        let terms = self
            .terms
            .iter()
            .map(|t| Ok((target.field.from_rational(&f.to_rational(&t.coeff))?, t.mono.clone())))
            .collect::<Result<Vec<_>>>()?;
        Polynomial::from_terms(target, terms)
    }

    /// True when every coefficient is an integer.
    pub fn has_integer_coefficients(&self) -> bool {
        let f = &self.ring.field;
        self.terms.iter().all(|t| f.to_rational(&t.coeff).is_integer())
    }

    /// Image in GF(p) as `(residue, monomial)` pairs with zero residues dropped.
    pub fn reduce_mod(&self, p: u64) -> Result<Vec<(u64, Monomial)>> {
        let f = &self.ring.field;
        let mut out = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let r = f.reduce_mod(&t.coeff, p)?;
            if r != 0 {
                out.push((r, t.mono.clone()));
            }
        }
        Ok(out)
    }
}

impl Polynomial<Rationals> {
    /// Integer multiple with coprime coefficients and positive leading
    /// coefficient; used for display-stable output.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let den_lcm = self
            .terms
            .iter()
            .fold(BigInt::one(), |acc, t| acc.lcm(t.coeff.denom()));
        let num_gcd = self
            .terms
            .iter()
            .fold(BigInt::zero(), |acc, t| acc.gcd(t.coeff.numer()));
        let mut scale = BigRational::new(den_lcm, num_gcd);
        if self.terms[0].coeff.is_negative() {
            scale = -scale;
        }
        self.scale(&scale)
    }
}

impl Polynomial<PrimeField> {
    pub fn modulus(&self) -> u64 {
        self.ring.field().modulus()
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = &self.ring.field;
        let names = self.ring.vars.names();
        for (k, t) in self.terms.iter().enumerate() {
            let mut c = field.to_rational(&t.coeff);
            let neg = c.is_negative();
            if neg {
                c = -c;
            }
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if t.mono.is_one() {
                write!(f, "{c}")?;
            } else {
                if !c.is_one() {
                    write!(f, "{c}*")?;
                }
                t.mono.fmt_with(names, f)?;
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<F: Field> ops::$trait<&Polynomial<F>> for &Polynomial<F> {
            type Output = Polynomial<F>;
            fn $method(self, rhs: &Polynomial<F>) -> Polynomial<F> {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl<F: Field> ops::$trait<Polynomial<F>> for Polynomial<F> {
            type Output = Polynomial<F>;
            fn $method(self, rhs: Polynomial<F>) -> Polynomial<F> {
                (&self).$checked(&rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl<F: Field> ops::$trait<&Polynomial<F>> for Polynomial<F> {
            type Output = Polynomial<F>;
            fn $method(self, rhs: &Polynomial<F>) -> Polynomial<F> {
                (&self).$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl<F: Field> ops::$trait<Polynomial<F>> for &Polynomial<F> {
            type Output = Polynomial<F>;
            fn $method(self, rhs: Polynomial<F>) -> Polynomial<F> {
                self.$checked(&rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl<F: Field> ops::Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        Polynomial::neg(self)
    }
}

impl<F: Field> ops::Neg for Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        Polynomial::neg(&self)
    }
}

/// Exact `C(n, k)`.
pub fn binomial_coefficient(n: u64, k: u64) -> Result<BigUint> {
    if k > n {
        return Err(Error::Domain(format!("binomial({n}, {k}) with k > n")));
    }
    Ok(num_integer::binomial(BigUint::from(n), BigUint::from(k)))
}

fn is_normalized<F: Field>(ring: &Ring<F>, terms: &[Term<F::Elem>]) -> bool {
    terms.iter().all(|t| !ring.field.is_zero(&t.coeff) && t.mono.nvars() == ring.nvars())
        && terms
            .windows(2)
            .all(|w| ring.compare(&w[0].mono, &w[1].mono) == Ordering::Greater)
}

/// Merges two descending term lists, combining equal monomials with `combine`
/// and dropping cancellations.
pub(crate) fn merge_with<F: Field>(
    ring: &Ring<F>,
    a: &[Term<F::Elem>],
    b: impl Iterator<Item = Term<F::Elem>>,
    combine: impl Fn(&F::Elem, &F::Elem) -> F::Elem,
) -> Vec<Term<F::Elem>> {
    let mut out = Vec::with_capacity(a.len() + b.size_hint().0);
    let mut i = 0;
    for t in b {
        while i < a.len() && ring.compare(&a[i].mono, &t.mono) == Ordering::Greater {
            out.push(a[i].clone());
            i += 1;
        }
        if i < a.len() && a[i].mono == t.mono {
            let c = combine(&a[i].coeff, &t.coeff);
            if !ring.field.is_zero(&c) {
                out.push(Term { coeff: c, mono: t.mono });
            }
            i += 1;
        } else {
            out.push(t);
        }
    }
    out.extend_from_slice(&a[i..]);
    out
}

/// `c * m * terms`; order is preserved because monomial orders are
/// multiplicative.
pub(crate) fn mul_term<F: Field>(
    ring: &Ring<F>,
    terms: &[Term<F::Elem>],
    c: &F::Elem,
    m: &Monomial,
) -> Result<Vec<Term<F::Elem>>> {
    let f = &ring.field;
    if f.is_zero(c) {
        return Ok(Vec::new());
    }
    terms
        .iter()
        .map(|t| {
            Ok(Term {
                coeff: f.mul(&t.coeff, c),
                mono: t.mono.mul(m)?,
            })
        })
        .collect()
}

/// `a - c * m * b` over descending term lists.
pub(crate) fn sub_mul_term<F: Field>(
    ring: &Ring<F>,
    a: &[Term<F::Elem>],
    c: &F::Elem,
    m: &Monomial,
    b: &[Term<F::Elem>],
) -> Result<Vec<Term<F::Elem>>> {
    let f = &ring.field;
    let neg_c = f.neg(c);
    let scaled = mul_term(ring, b, &neg_c, m)?;
    Ok(merge_with(ring, a, scaled.into_iter(), |x, y| f.add(x, y)))
}
