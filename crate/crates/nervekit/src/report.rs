//! Structured pass/fail outcomes and the engine-wide error type.

use serde::Serialize;
use thiserror::Error;

/// The first violated identity found by a validator, with the tuple of ids
/// (or cells) at which it fails. Witnesses are always the lexicographically
/// least violating instance, so reports are deterministic and diff-able.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// Name of the violated axiom or identity family.
    pub axiom: String,
    /// Human-readable rendering of the violating instance.
    pub witness: String,
}

/// Outcome of a validation run: either everything passed, or the first
/// violated identity together with its witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    /// What was verified (e.g. "simplicial identities", "bicategory axioms").
    pub subject: String,
    pub passed: bool,
    pub failure: Option<Violation>,
    /// Informational notes, e.g. which dimensions rest on a coskeletal policy.
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn pass(subject: impl Into<String>) -> Self {
        VerificationReport {
            subject: subject.into(),
            passed: true,
            failure: None,
            notes: Vec::new(),
        }
    }

    pub fn fail(
        subject: impl Into<String>,
        axiom: impl Into<String>,
        witness: impl Into<String>,
    ) -> Self {
        VerificationReport {
            subject: subject.into(),
            passed: false,
            failure: Some(Violation {
                axiom: axiom.into(),
                witness: witness.into(),
            }),
            notes: Vec::new(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    /// Sequence two reports: the first failure wins, notes accumulate.
    pub fn and_then_check(self, next: impl FnOnce() -> VerificationReport) -> VerificationReport {
        if !self.passed {
            return self;
        }
        let mut out = next();
        let mut notes = self.notes;
        notes.extend(out.notes.drain(..));
        out.notes = notes;
        out
    }
}

/// Errors shared across the whole engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("dimension out of range: {0}")]
    DimensionOutOfRange(String),
    #[error("horn index {k} out of range for dimension {n}")]
    HornIndexOutOfRange { n: usize, k: usize },
    #[error("dimension {n} lies above the cap {cap} of a truncated table")]
    TruncatedAboveCap { n: usize, cap: usize },
    #[error("not aspherical at level {level}: kernel tuple {witness} has no filler")]
    NotAspherical { level: usize, witness: String },
    #[error("crossed-module axiom violated: {0}")]
    NotCrossedModule(String),
    #[error("cells not composable: {0}")]
    NotComposable(String),
    #[error("invalid bicategory: {0}")]
    InvalidBicategory(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("not a groupoid: {0}")]
    NotGroupoid(String),
    #[error("not a bigroupoid: {0}")]
    NotBigroupoid(String),
    #[error("not an epimorphism: {0}")]
    NotEpimorphism(String),
    #[error("malformed data: {0}")]
    MalformedData(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, EngineError>;
