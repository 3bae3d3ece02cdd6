//! Verdicts and their per-hypothesis audit trail.
//!
//! Every hypothesis is stored as an integer inequality `lhs > rhs` or
//! `lhs >= rhs` with all fractions already cleared, so a record can be
//! re-checked without trusting the code that produced it.

use std::fmt;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use crate::lattice::DivisorClass;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    Ample,
    GloballyGenerated,
    VeryAmple,
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Property::Ample => "ample",
            Property::GloballyGenerated => "globally-generated",
            Property::VeryAmple => "very-ample",
        })
    }
}

/// Conjectures a conditional verdict may rest on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Conjecture {
    Nagata,
    Shgh,
}

impl fmt::Display for Conjecture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Conjecture::Nagata => "nagata",
            Conjecture::Shgh => "shgh",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Certified,
    NotCertified,
    Conditional(Conjecture),
    NotApplicable,
}

impl Outcome {
    pub fn label(&self) -> &'static str {
        match self {
            Outcome::Certified => "certified",
            Outcome::NotCertified => "not-certified",
            Outcome::Conditional(_) => "conditional",
            Outcome::NotApplicable => "not-applicable",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Gt,
    Ge,
}

impl Relation {
    pub fn symbol(&self) -> &'static str {
        match self {
            Relation::Gt => ">",
            Relation::Ge => ">=",
        }
    }

    pub fn holds(&self, lhs: &BigInt, rhs: &BigInt) -> bool {
        match self {
            Relation::Gt => lhs > rhs,
            Relation::Ge => lhs >= rhs,
        }
    }
}

impl Serialize for Relation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.symbol())
    }
}

fn big_as_string<S: Serializer>(x: &BigInt, serializer: S) -> Result<S::Ok, S::Error> {
    serializer.collect_str(x)
}

/// One instantiated hypothesis `lhs (>|>=) rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypothesisRecord {
    pub label: String,
    #[serde(serialize_with = "big_as_string")]
    pub lhs: BigInt,
    #[serde(serialize_with = "big_as_string")]
    pub rhs: BigInt,
    pub relation: Relation,
    pub pass: bool,
}

impl HypothesisRecord {
    pub fn new(
        label: impl Into<String>,
        lhs: impl Into<BigInt>,
        relation: Relation,
        rhs: impl Into<BigInt>,
    ) -> Self {
        let (lhs, rhs) = (lhs.into(), rhs.into());
        let pass = relation.holds(&lhs, &rhs);
        Self { label: label.into(), lhs, rhs, relation, pass }
    }

    pub fn gt(label: impl Into<String>, lhs: impl Into<BigInt>, rhs: impl Into<BigInt>) -> Self {
        Self::new(label, lhs, Relation::Gt, rhs)
    }

    pub fn ge(label: impl Into<String>, lhs: impl Into<BigInt>, rhs: impl Into<BigInt>) -> Self {
        Self::new(label, lhs, Relation::Ge, rhs)
    }

    /// Re-evaluates the stored inequality.
    pub fn recheck(&self) -> bool {
        self.relation.holds(&self.lhs, &self.rhs) == self.pass
    }
}

impl fmt::Display for HypothesisRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} {} {} [{}]",
            self.label,
            self.lhs,
            self.relation.symbol(),
            self.rhs,
            if self.pass { "pass" } else { "fail" }
        )
    }
}

/// The result of running one certifier on one class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub property: Property,
    pub criterion: String,
    pub outcome: Outcome,
    pub class: Option<DivisorClass>,
    pub hypotheses: Vec<HypothesisRecord>,
    pub witnesses: Vec<DivisorClass>,
    pub notes: Vec<String>,
}

impl Verdict {
    fn empty(property: Property, criterion: impl Into<String>, outcome: Outcome) -> Self {
        Self {
            property,
            criterion: criterion.into(),
            outcome,
            class: None,
            hypotheses: Vec::new(),
            witnesses: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn not_applicable(
        property: Property,
        criterion: impl Into<String>,
        reason: impl Into<String>,
    ) -> Self {
        let mut v = Self::empty(property, criterion, Outcome::NotApplicable);
        v.notes.push(reason.into());
        v
    }

    /// Certified exactly when every record passes.
    pub fn from_records(
        property: Property,
        criterion: impl Into<String>,
        hypotheses: Vec<HypothesisRecord>,
    ) -> Self {
        let outcome = if hypotheses.iter().all(|h| h.pass) {
            Outcome::Certified
        } else {
            Outcome::NotCertified
        };
        Self { hypotheses, ..Self::empty(property, criterion, outcome) }
    }

    /// Conditional on `conjecture` when every record passes.
    pub fn conditional(
        property: Property,
        criterion: impl Into<String>,
        conjecture: Conjecture,
        hypotheses: Vec<HypothesisRecord>,
    ) -> Self {
        let outcome = if hypotheses.iter().all(|h| h.pass) {
            Outcome::Conditional(conjecture)
        } else {
            Outcome::NotCertified
        };
        Self { hypotheses, ..Self::empty(property, criterion, outcome) }
    }

    pub fn with_class(mut self, class: DivisorClass) -> Self {
        self.class = Some(class);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn with_witnesses(mut self, witnesses: Vec<DivisorClass>) -> Self {
        self.witnesses = witnesses;
        self
    }

    pub fn is_certified(&self) -> bool {
        self.outcome == Outcome::Certified
    }

    pub fn is_applicable(&self) -> bool {
        self.outcome != Outcome::NotApplicable
    }

    /// First failing hypothesis, if any.
    pub fn first_failure(&self) -> Option<&HypothesisRecord> {
        self.hypotheses.iter().find(|h| !h.pass)
    }

    pub fn hypothesis(&self, label_prefix: &str) -> Option<&HypothesisRecord> {
        self.hypotheses.iter().find(|h| h.label.starts_with(label_prefix))
    }

    /// Checks the structural invariants: records re-evaluate to their
    /// stored pass flag and a certified verdict has no failing record.
    pub fn is_consistent(&self) -> bool {
        let records_ok = self.hypotheses.iter().all(HypothesisRecord::recheck);
        let all_pass = self.hypotheses.iter().all(|h| h.pass);
        let outcome_ok = match self.outcome {
            Outcome::Certified | Outcome::Conditional(_) => all_pass,
            Outcome::NotCertified => !all_pass,
            Outcome::NotApplicable => true,
        };
        records_ok && outcome_ok
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("Verdict", 9)?;
        s.serialize_field("schema", &crate::SCHEMA_VERSION)?;
        s.serialize_field("property", &self.property)?;
        s.serialize_field("criterion", &self.criterion)?;
        s.serialize_field("outcome", self.outcome.label())?;
        match self.outcome {
            Outcome::Conditional(c) => s.serialize_field("conjecture", &Some(c))?,
            _ => s.serialize_field("conjecture", &None::<Conjecture>)?,
        }
        s.serialize_field("class", &self.class)?;
        s.serialize_field("hypotheses", &self.hypotheses)?;
        s.serialize_field("witnesses", &self.witnesses)?;
        s.serialize_field("notes", &self.notes)?;
        s.end()
    }
}
