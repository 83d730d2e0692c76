//! Machine-readable law-check reports.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::field::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub law: String,
    pub sample: String,
    pub pass: bool,
    pub witness: Value,
}

impl Check {
    pub fn pass(law: impl Into<String>, sample: impl Into<String>) -> Check {
        Check {
            law: law.into(),
            sample: sample.into(),
            pass: true,
            witness: Value::Null,
        }
    }

    pub fn fail(law: impl Into<String>, sample: impl Into<String>, witness: Value) -> Check {
        Check {
            law: law.into(),
            sample: sample.into(),
            pass: false,
            witness,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "law": self.law,
            "sample": self.sample,
            "pass": self.pass,
            "witness": self.witness,
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn failures_of<'a>(&'a self, law: &'a str) -> impl Iterator<Item = &'a Check> + 'a {
        self.failures().filter(move |c| c.law == law)
    }

    /// The same checks with laws renamed to `prefix/law`.
    pub fn prefixed(mut self, prefix: &str) -> Report {
        for c in &mut self.checks {
            c.law = format!("{prefix}/{}", c.law);
        }
        self
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.checks.iter().map(Check::to_json).collect())
    }
}

/// Collects many instances of a few laws into a compact report: every
/// failure is kept, passing instances are summarized per law.
#[derive(Default)]
pub struct Tally {
    counts: BTreeMap<String, usize>,
    failures: Vec<Check>,
}

impl Tally {
    pub fn new() -> Tally {
        Tally::default()
    }

    pub fn record(
        &mut self,
        law: &str,
        ok: bool,
        sample: impl FnOnce() -> String,
        witness: impl FnOnce() -> Value,
    ) {
        *self.counts.entry(law.to_string()).or_default() += 1;
        if !ok {
            self.failures.push(Check::fail(law, sample(), witness()));
        }
    }

    pub fn fail(&mut self, law: &str, sample: String, witness: Value) {
        self.record(law, false, || sample, || witness);
    }

    pub fn merge(&mut self, other: Tally) {
        for (law, n) in other.counts {
            *self.counts.entry(law).or_default() += n;
        }
        self.failures.extend(other.failures);
    }

    pub fn into_report(self) -> Report {
        let mut report = Report::new();
        for (law, n) in &self.counts {
            let failed = self.failures.iter().filter(|c| &c.law == law).count();
            if failed == 0 {
                report.push(Check::pass(law.clone(), format!("{n} instances")));
            }
        }
        report.checks.extend(self.failures);
        report
    }
}

pub fn scalars_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar_json).collect())
}

/// Rationals as canonical strings, prime-field residues as integers.
pub fn scalar_json(s: &Scalar) -> Value {
    match s {
        Scalar::Q(_) => Value::String(s.to_canonical_string()),
        Scalar::Fp { value, .. } => Value::from(*value),
    }
}
