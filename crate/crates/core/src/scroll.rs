//! Barred matrices built from scroll blocks, their ideal `J`, and the
//! equation system `F^i_j, G_k` that cuts out `V(J)` set-theoretically.
//!
//! A scroll block of width `c` is given by `c + 1` variable indices
//! `e_1..e_{c+1}`; column `j` is `(e_j, e_{j+1})`. A big block is a run of
//! scroll blocks with disjoint entries. Variables are shared between big
//! blocks only by reusing an index: the lower-right entry of big block `i`
//! may equal the upper-left entry of one later big block.
//!
//! For matrices whose big blocks consist of several small blocks the ideal
//! `J` is taken to be all 2-minors inside each big block plus all
//! upper × lower cross products between big blocks. This rule is inferred
//! from worked examples rather than from a general definition.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, Rationals};
use crate::groebner::IdealGens;
use crate::polyring::{
    binomial_coefficient, Monomial, MonomialOrder, Polynomial, Ring, RingExt, RingRef, VariableSet,
};
use crate::report::{VerificationReport, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SmallBlock {
    entries: Vec<usize>,
}

impl SmallBlock {
    pub fn new(entries: Vec<usize>) -> Self {
        SmallBlock { entries }
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    /// Number of columns.
    pub fn width(&self) -> usize {
        self.entries.len().saturating_sub(1)
    }

    pub fn top(&self) -> &[usize] {
        &self.entries[..self.width()]
    }

    pub fn bottom(&self) -> &[usize] {
        &self.entries[1.min(self.entries.len())..]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BigBlock {
    small_blocks: Vec<SmallBlock>,
}

impl BigBlock {
    pub fn new(small_blocks: Vec<SmallBlock>) -> Self {
        BigBlock { small_blocks }
    }

    pub fn scroll(entries: Vec<usize>) -> Self {
        BigBlock::new(vec![SmallBlock::new(entries)])
    }

    pub fn small_blocks(&self) -> &[SmallBlock] {
        &self.small_blocks
    }

    pub fn width(&self) -> usize {
        self.small_blocks.iter().map(SmallBlock::width).sum()
    }

    pub fn top(&self) -> Vec<usize> {
        self.small_blocks.iter().flat_map(|b| b.top().iter().copied()).collect()
    }

    pub fn bottom(&self) -> Vec<usize> {
        self.small_blocks.iter().flat_map(|b| b.bottom().iter().copied()).collect()
    }

    /// Columns as `(top, bottom)` pairs.
    pub fn columns(&self) -> Vec<(usize, usize)> {
        self.top().into_iter().zip(self.bottom()).collect()
    }

    pub fn upper_left(&self) -> usize {
        self.small_blocks[0].entries[0]
    }

    pub fn lower_right(&self) -> usize {
        *self
            .small_blocks
            .last()
            .and_then(|b| b.entries.last())
            .expect("nonempty block")
    }

    fn entry_set(&self) -> BTreeSet<usize> {
        self.small_blocks.iter().flat_map(|b| b.entries.iter().copied()).collect()
    }
}

/// On-disk matrix description. Indices are 0-based positions in `variables`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub variables: Vec<String>,
    pub big_blocks: Vec<Vec<Vec<usize>>>,
}

#[derive(Debug, Clone)]
pub struct BarredMatrix {
    big_blocks: Vec<BigBlock>,
    ring: RingRef<Rationals>,
}

impl PartialEq for BarredMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.big_blocks == other.big_blocks && self.ring.vars() == other.ring.vars()
    }
}

impl BarredMatrix {
    /// Structural constructor; sharing rules are checked by [`validate`].
    ///
    /// [`validate`]: BarredMatrix::validate
    pub fn new(vars: VariableSet, big_blocks: Vec<BigBlock>) -> Result<Self> {
        let ring = Ring::new(Rationals, vars, MonomialOrder::DegRevLex)?;
        Ok(BarredMatrix { big_blocks, ring })
    }

    /// Simple matrix from one entry list per big block.
    pub fn simple(vars: VariableSet, blocks: Vec<Vec<usize>>) -> Result<Self> {
        Self::new(vars, blocks.into_iter().map(BigBlock::scroll).collect())
    }

    pub fn from_file(file: MatrixFile) -> Result<Self> {
        let vars = VariableSet::new(file.variables)?;
        let blocks = file
            .big_blocks
            .into_iter()
            .map(|b| BigBlock::new(b.into_iter().map(SmallBlock::new).collect()))
            .collect();
        Self::new(vars, blocks)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: MatrixFile =
            serde_json::from_str(text).map_err(|e| Error::Input(format!("matrix file: {e}")))?;
        Self::from_file(file)
    }

    pub fn to_file(&self) -> MatrixFile {
        MatrixFile {
            variables: self.ring.vars().names().to_vec(),
            big_blocks: self
                .big_blocks
                .iter()
                .map(|b| b.small_blocks.iter().map(|s| s.entries.clone()).collect())
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("serializes")
    }

    pub fn with_order(mut self, order: MonomialOrder) -> Result<Self> {
        self.ring = self.ring.with_order(order)?;
        Ok(self)
    }

    pub fn ring(&self) -> &RingRef<Rationals> {
        &self.ring
    }

    pub fn big_blocks(&self) -> &[BigBlock] {
        &self.big_blocks
    }

    pub fn widths(&self) -> Vec<usize> {
        self.big_blocks.iter().map(BigBlock::width).collect()
    }

    pub fn is_simple(&self) -> bool {
        self.big_blocks.iter().all(|b| b.small_blocks.len() == 1)
    }

    /// `Σ c_i − 1`, the height of `J` and the length of the equation system.
    pub fn expected_height(&self) -> usize {
        self.widths().iter().sum::<usize>().saturating_sub(1)
    }

    /// First structural or sharing-rule violation, if any.
    pub fn first_violation(&self) -> Option<String> {
        let n = self.ring.nvars();
        if self.big_blocks.is_empty() {
            return Some("matrix has no big blocks".into());
        }
        for (i, big) in self.big_blocks.iter().enumerate() {
            if big.small_blocks.is_empty() {
                return Some(format!("big block {} has no small blocks", i + 1));
            }
            let mut seen = HashSet::new();
            for (s, small) in big.small_blocks.iter().enumerate() {
                if small.entries.len() < 2 {
                    return Some(format!(
                        "small block {} of big block {} needs at least 2 entries",
                        s + 1,
                        i + 1
                    ));
                }
                let mut local = HashSet::new();
                for &e in &small.entries {
                    if e >= n {
                        return Some(format!(
                            "entry {e} in big block {} is out of range for {n} variables",
                            i + 1
                        ));
                    }
                    if !local.insert(e) {
                        return Some(format!(
                            "variable {} repeats inside small block {} of big block {}",
                            self.name(e),
                            s + 1,
                            i + 1
                        ));
                    }
                }
                if let Some(&e) = local.iter().find(|e| seen.contains(*e)) {
                    return Some(format!(
                        "small blocks of big block {} share variable {}",
                        i + 1,
                        self.name(e)
                    ));
                }
                seen.extend(local);
            }
        }
        let sets: Vec<BTreeSet<usize>> = self.big_blocks.iter().map(BigBlock::entry_set).collect();
        for i in 0..sets.len() {
            let mut partners = Vec::new();
            for k in i + 1..sets.len() {
                for &v in sets[i].intersection(&sets[k]) {
                    let allowed = v == self.big_blocks[i].lower_right()
                        && v == self.big_blocks[k].upper_left();
                    if !allowed {
                        return Some(format!(
                            "big blocks {} and {} share {} outside the corner rule",
                            i + 1,
                            k + 1,
                            self.name(v)
                        ));
                    }
                    partners.push(k);
                }
            }
            if partners.len() > 1 {
                return Some(format!(
                    "big block {} shares its lower-right corner with {} later blocks",
                    i + 1,
                    partners.len()
                ));
            }
        }
        None
    }

    pub fn validate(&self) -> VerificationReport {
        let claim = "barred matrix satisfies the block and sharing rules";
        let mut report = match self.first_violation() {
            None => VerificationReport::new(claim, Verdict::True),
            Some(v) => VerificationReport::new(claim, Verdict::False).with_witness(v),
        };
        report.notes.push(format!(
            "big block widths {:?}, {}",
            self.widths(),
            if self.is_simple() { "simple" } else { "generalized" }
        ));
        report
    }

    fn ensure_valid(&self) -> Result<()> {
        match self.first_violation() {
            None => Ok(()),
            Some(v) => Err(Error::Input(format!("invalid barred matrix: {v}"))),
        }
    }

    fn ensure_simple(&self, what: &str) -> Result<()> {
        self.ensure_valid()?;
        if self.is_simple() {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "{what} is only defined for matrices whose big blocks are single scroll blocks"
            )))
        }
    }

    fn name(&self, v: usize) -> &str {
        self.ring.vars().names().get(v).map(String::as_str).unwrap_or("?")
    }

    fn x(&self, v: usize) -> Polynomial<Rationals> {
        self.ring.var(v)
    }

    fn product(&self, a: usize, b: usize) -> Polynomial<Rationals> {
        let mut e = vec![0u32; self.ring.nvars()];
        e[a] += 1;
        e[b] += 1;
        self.ring
            .monomial(Rationals.one(), Monomial::new(&e).expect("small"))
            .expect("same ring")
    }

    /// All 2-minors inside each big block, in `(i, j, j')` order.
    pub fn minors(&self) -> Result<IdealGens<Rationals>> {
        self.ensure_valid()?;
        let mut out: Vec<Polynomial<Rationals>> = Vec::new();
        for big in &self.big_blocks {
            let cols = big.columns();
            for j in 0..cols.len() {
                for k in j + 1..cols.len() {
                    let (tj, bj) = cols[j];
                    let (tk, bk) = cols[k];
                    let m = self.product(tj, bk) - self.product(tk, bj);
                    if !m.is_zero() && !out.contains(&m) {
                        out.push(m);
                    }
                }
            }
        }
        IdealGens::new(&self.ring, "minors", out)
    }

    /// Upper-row entry of block `i` times lower-row entry of a later block,
    /// each monomial once, ordered by `(i, top entry, i', bottom entry)`.
    pub fn cross_products(&self) -> Result<IdealGens<Rationals>> {
        self.ensure_valid()?;
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for (i, big) in self.big_blocks.iter().enumerate() {
            for t in big.top() {
                for later in &self.big_blocks[i + 1..] {
                    for b in later.bottom() {
                        let key = (t.min(b), t.max(b));
                        if seen.insert(key) {
                            out.push(self.product(t, b));
                        }
                    }
                }
            }
        }
        IdealGens::new(&self.ring, "cross products", out)
    }

    /// `J` = minors followed by cross products.
    pub fn ideal_j(&self) -> Result<IdealGens<Rationals>> {
        let minors = self.minors()?;
        let cross = self.cross_products()?;
        minors.union(&cross, "J")
    }

    /// `F_j` of big block `block` (0-based), `1 <= j <= c - 1`:
    /// `Σ_{k=0}^{j} (−1)^k C(j,k) e_{j+2}^{j−k} e_{k+1} e_{j+1}^k`.
    pub fn scroll_f(&self, block: usize, j: usize) -> Result<Polynomial<Rationals>> {
        self.ensure_simple("F^i_j")?;
        let big = self
            .big_blocks
            .get(block)
            .ok_or_else(|| Error::Domain(format!("no big block {block}")))?;
        let c = big.width();
        if j < 1 || j + 1 > c {
            return Err(Error::Domain(format!(
                "F_{j} needs 1 <= j <= c - 1 = {} for block {}",
                c as i64 - 1,
                block + 1
            )));
        }
        let e = &big.small_blocks[0].entries;
        // 1-based e_m is e[m - 1]
        let outer = self.x(e[j + 1]);
        let middle = self.x(e[j]);
        let mut f = self.ring.zero();
        for k in 0..=j {
            let binom = BigInt::from(binomial_coefficient(j as u64, k as u64)?);
            let signed = if k % 2 == 1 { -binom } else { binom };
            let term = outer.pow((j - k) as u32)?
                * self.x(e[k])
                * middle.pow(k as u32)?;
            f = f + term.scale(&BigRational::from_integer(signed));
        }
        Ok(f)
    }

    /// `F^i_1 .. F^i_{c_i − 1}` for every block, with their names.
    pub fn scroll_fs(&self) -> Result<Vec<(String, Polynomial<Rationals>)>> {
        self.ensure_simple("F^i_j")?;
        let mut out = Vec::new();
        for (i, big) in self.big_blocks.iter().enumerate() {
            for j in 1..big.width() {
                out.push((format!("F^{}_{}", i + 1, j), self.scroll_f(i, j)?));
            }
        }
        Ok(out)
    }

    /// Corner products `(upper-left of i, lower-right of i + k)` for
    /// `k = 1..r−1`, grouped by `k`.
    fn corner_products(&self) -> Vec<Vec<Polynomial<Rationals>>> {
        let r = self.big_blocks.len();
        (1..r)
            .map(|k| {
                (0..r - k)
                    .map(|i| {
                        self.product(
                            self.big_blocks[i].upper_left(),
                            self.big_blocks[i + k].lower_right(),
                        )
                    })
                    .collect()
            })
            .collect()
    }

    /// `G_1 .. G_{r−1}`; empty for a single block.
    pub fn corner_sums(&self) -> Result<Vec<Polynomial<Rationals>>> {
        self.ensure_simple("G_k")?;
        Ok(self
            .corner_products()
            .into_iter()
            .map(|summands| summands.iter().fold(self.ring.zero(), |acc, s| acc + s))
            .collect())
    }

    /// The `Σ c_i − 1` polynomials `F^i_j` followed by `G_1 .. G_{r−1}`, with
    /// names.
    pub fn stci_named(&self) -> Result<Vec<(String, Polynomial<Rationals>)>> {
        let mut out = self.scroll_fs()?;
        for (k, g) in self.corner_sums()?.into_iter().enumerate() {
            out.push((format!("G_{}", k + 1), g));
        }
        if out.len() != self.expected_height() {
            return Err(Error::Domain(format!(
                "system has {} polynomials, expected {}",
                out.len(),
                self.expected_height()
            )));
        }
        Ok(out)
    }

    pub fn stci_system(&self) -> Result<IdealGens<Rationals>> {
        let polys = self.stci_named()?.into_iter().map(|(_, p)| p).collect();
        IdealGens::new(&self.ring, "F,G-system", polys)
    }

    /// Layers `P_0 .. P_{r−2}`: `P_k` holds the summands of `G_{r−1−k}`.
    pub fn sv_partition(&self) -> Result<Vec<Vec<Polynomial<Rationals>>>> {
        self.ensure_simple("the corner partition")?;
        if self.big_blocks.len() < 2 {
            return Err(Error::Domain("the corner partition needs at least two big blocks".into()));
        }
        let mut layers = self.corner_products();
        layers.reverse();
        Ok(layers)
    }
}

impl fmt::Display for BarredMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row = |pick: fn(&SmallBlock) -> &[usize]| -> String {
            self.big_blocks
                .iter()
                .map(|b| {
                    b.small_blocks
                        .iter()
                        .map(|s| pick(s).iter().map(|&v| self.name(v)).collect::<Vec<_>>().join(" "))
                        .collect::<Vec<_>>()
                        .join(" | ")
                })
                .collect::<Vec<_>>()
                .join(" || ")
        };
        writeln!(f, "( {} )", row(SmallBlock::top))?;
        write!(f, "( {} )", row(SmallBlock::bottom))
    }
}
