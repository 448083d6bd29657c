//! Structured outcomes of claim checks, serialized as versioned JSON.
//!
//! Schema `stci.verification-report/1`:
//!
//! ```json
//! {
//!   "schema": "stci.verification-report/1",
//!   "claim": "sqrt(J) = sqrt(F,G-system)",
//!   "verdict": "true" | "false" | "inconclusive",
//!   "field": "QQ" | "GF(p)" | null,
//!   "order": "degrevlex" | "lex" | "elim(..)" | null,
//!   "per_generator": [
//!     {"generator": "X1*X11", "check": "in sqrt(B)", "result": "true",
//!      "power": 1, "detail": null}
//!   ],
//!   "witness": null,
//!   "notes": [],
//!   "stats": {"spairs": 0, "max_degree": 0, "millis": 0}
//! }
//! ```

use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::groebner::GbStats;

pub const REPORT_SCHEMA: &str = "stci.verification-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    True,
    False,
    Inconclusive,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }

    pub fn is_true(self) -> bool {
        self == Verdict::True
    }

    /// Conjunction: any `False` wins, then any `Inconclusive`.
    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::False, _) | (_, Verdict::False) => Verdict::False,
            (Verdict::Inconclusive, _) | (_, Verdict::Inconclusive) => Verdict::Inconclusive,
            _ => Verdict::True,
        }
    }

    pub fn all(verdicts: impl IntoIterator<Item = Verdict>) -> Verdict {
        verdicts.into_iter().fold(Verdict::True, Verdict::and)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::True => "true",
            Verdict::False => "false",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorResult {
    pub generator: String,
    pub check: String,
    pub result: Verdict,
    pub power: Option<u32>,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportStats {
    pub spairs: u64,
    pub max_degree: u32,
    pub millis: u64,
}

impl ReportStats {
    pub fn absorb(&mut self, gb: &GbStats) {
        self.spairs += gb.spairs;
        self.max_degree = self.max_degree.max(gb.max_degree);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema: String,
    pub claim: String,
    pub verdict: Verdict,
    pub field: Option<String>,
    pub order: Option<String>,
    pub per_generator: Vec<GeneratorResult>,
    pub witness: Option<String>,
    pub notes: Vec<String>,
    pub stats: ReportStats,
}

impl VerificationReport {
    pub fn new(claim: impl Into<String>, verdict: Verdict) -> Self {
        VerificationReport {
            schema: REPORT_SCHEMA.to_string(),
            claim: claim.into(),
            verdict,
            field: None,
            order: None,
            per_generator: Vec::new(),
            witness: None,
            notes: Vec::new(),
            stats: ReportStats::default(),
        }
    }

    /// Report for a check that could not run to completion.
    pub fn from_error(claim: impl Into<String>, err: &Error) -> Self {
        let verdict = if err.is_cap() {
            Verdict::Inconclusive
        } else {
            Verdict::False
        };
        let mut r = Self::new(claim, verdict);
        if let Error::Capped { stats, .. } = err {
            r.stats.absorb(stats);
        }
        r.notes.push(err.to_string());
        r
    }

    pub fn with_field(mut self, field: impl fmt::Display) -> Self {
        self.field = Some(field.to_string());
        self
    }

    pub fn with_order(mut self, order: impl fmt::Display) -> Self {
        self.order = Some(order.to_string());
        self
    }

    pub fn with_witness(mut self, w: impl Into<String>) -> Self {
        self.witness = Some(w.into());
        self
    }

    pub fn note(mut self, n: impl Into<String>) -> Self {
        self.notes.push(n.into());
        self
    }

    pub fn timed(mut self, start: Instant) -> Self {
        self.stats.millis = start.elapsed().as_millis() as u64;
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict.is_true()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.verdict, self.claim)?;
        if let Some(field) = &self.field {
            write!(f, " over {field}")?;
        }
        if let Some(order) = &self.order {
            write!(f, " ({order})")?;
        }
        write!(
            f,
            " [{} S-pairs, max deg {}, {} ms]",
            self.stats.spairs, self.stats.max_degree, self.stats.millis
        )?;
        if let Some(w) = &self.witness {
            write!(f, "\n    witness: {w}")?;
        }
        for n in &self.notes {
            write!(f, "\n    note: {n}")?;
        }
        for g in &self.per_generator {
            if g.result != Verdict::True {
                write!(f, "\n    {} {}: {}", g.generator, g.check, g.result)?;
                if let Some(d) = &g.detail {
                    write!(f, " ({d})")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_conjunction() {
        use Verdict::*;
        assert_eq!(Verdict::all([True, True]), True);
        assert_eq!(Verdict::all([True, Inconclusive]), Inconclusive);
        assert_eq!(Verdict::all([Inconclusive, False]), False);
        assert_eq!(Verdict::all([]), True);
    }

    #[test]
    fn json_shape() {
        let mut r = VerificationReport::new("demo", Verdict::True)
            .with_field("QQ")
            .with_order("degrevlex");
        r.per_generator.push(GeneratorResult {
            generator: "X1".into(),
            check: "in sqrt(B)".into(),
            result: Verdict::True,
            power: Some(1),
            detail: None,
        });
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["schema"], REPORT_SCHEMA);
        assert_eq!(v["verdict"], "true");
        assert_eq!(v["per_generator"][0]["power"], 1);
        assert!(v["stats"]["spairs"].is_u64());
        let back: VerificationReport = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
    }
}
