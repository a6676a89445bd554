use std::fmt;

use thiserror::Error;

use crate::report::SubsetReport;

/// Position-annotated parse failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for SyntaxError {}

/// Which size guard tripped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CapKind {
    /// Exhaustive subset scan over too many elements.
    SubsetScan,
    /// Isomorphism search over too many elements.
    Isomorphism,
    /// `|source| * |target|` above the relation-space guard.
    RelationSpace,
    /// A constructed universe would exceed the cardinality cap.
    Cardinality,
}

#[derive(Debug, Error)]
pub enum DomainError {
    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error(transparent)]
    Syntax(#[from] SyntaxError),

    #[error("{} violated: not a valid partial order", report.violated().unwrap_or("axiom"))]
    Axiom { report: Box<SubsetReport<String>> },

    #[error("{kind:?} cap exceeded{}: needed {needed}, limit {limit}", context.as_deref().map(|c| format!(" in {c}")).unwrap_or_default())]
    Cap {
        kind: CapKind,
        needed: u128,
        limit: u128,
        context: Option<String>,
    },

    /// Closing a seed under the mapping conditions demands a target lub that
    /// does not exist.
    #[error("no approximable mapping contains the seed: at `{source_elem}`, `{left}` and `{right}` have no lub in the target")]
    NoContainingAm {
        source_elem: String,
        left: String,
        right: String,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl DomainError {
    pub(crate) fn cap(kind: CapKind, needed: u128, limit: u128) -> Self {
        DomainError::Cap { kind, needed, limit, context: None }
    }

    /// Tags a cap error with where it happened; other errors pass through.
    pub fn in_context(self, ctx: impl Into<String>) -> Self {
        match self {
            DomainError::Cap { kind, needed, limit, context: None } => {
                DomainError::Cap { kind, needed, limit, context: Some(ctx.into()) }
            }
            other => other,
        }
    }

    pub fn is_cap(&self) -> bool {
        matches!(self, DomainError::Cap { .. })
    }
}

pub type Result<T, E = DomainError> = std::result::Result<T, E>;
