//! Predicate outcomes with re-checkable failure witnesses.

use serde::Serialize;

use crate::element::Element;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Witness<T = Element> {
    Element(T),
    Pair(T, T),
    Triple(T, T, T),
    Subset(Vec<T>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Outcome<T = Element> {
    Holds,
    Fails { violated: String, witness: Witness<T> },
    /// The predicate needs structure the input lacks (e.g. a least element).
    NotApplicable { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubsetReport<T = Element> {
    pub predicate: String,
    #[serde(flatten)]
    pub outcome: Outcome<T>,
}

impl<T> SubsetReport<T> {
    pub fn holds_for(predicate: impl Into<String>) -> Self {
        SubsetReport { predicate: predicate.into(), outcome: Outcome::Holds }
    }

    pub fn fails(predicate: impl Into<String>, violated: impl Into<String>, witness: Witness<T>) -> Self {
        SubsetReport {
            predicate: predicate.into(),
            outcome: Outcome::Fails { violated: violated.into(), witness },
        }
    }

    pub fn not_applicable(predicate: impl Into<String>, reason: impl Into<String>) -> Self {
        SubsetReport {
            predicate: predicate.into(),
            outcome: Outcome::NotApplicable { reason: reason.into() },
        }
    }

    pub fn holds(&self) -> bool {
        matches!(self.outcome, Outcome::Holds)
    }

    pub fn is_applicable(&self) -> bool {
        !matches!(self.outcome, Outcome::NotApplicable { .. })
    }

    pub fn violated(&self) -> Option<&str> {
        match &self.outcome {
            Outcome::Fails { violated, .. } => Some(violated),
            _ => None,
        }
    }

    pub fn witness(&self) -> Option<&Witness<T>> {
        match &self.outcome {
            Outcome::Fails { witness, .. } => Some(witness),
            _ => None,
        }
    }

    /// Renames the predicate, keeping the outcome.
    pub fn renamed(mut self, predicate: impl Into<String>) -> Self {
        self.predicate = predicate.into();
        self
    }

    pub fn map<U>(self, mut f: impl FnMut(T) -> U) -> SubsetReport<U> {
        let outcome = match self.outcome {
            Outcome::Holds => Outcome::Holds,
            Outcome::NotApplicable { reason } => Outcome::NotApplicable { reason },
            Outcome::Fails { violated, witness } => Outcome::Fails {
                violated,
                witness: match witness {
                    Witness::Element(a) => Witness::Element(f(a)),
                    Witness::Pair(a, b) => Witness::Pair(f(a), f(b)),
                    Witness::Triple(a, b, c) => Witness::Triple(f(a), f(b), f(c)),
                    Witness::Subset(xs) => Witness::Subset(xs.into_iter().map(f).collect()),
                },
            },
        };
        SubsetReport { predicate: self.predicate, outcome }
    }
}
