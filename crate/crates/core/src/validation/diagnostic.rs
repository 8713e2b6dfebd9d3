use std::fmt;

use serde::{Serialize, Serializer};

use crate::rdf::Term;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Severity {
    Info,
    Warn,
    Error,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Info => "INFO",
            Severity::Warn => "WARN",
            Severity::Error => "ERROR",
        })
    }
}

/// The closed set of diagnostic codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Code {
    AnchorFloat,
    PrefixMisuse,
    DisjointClash,
    MissingComment,
    UndeclaredPrefix,
    FallbackRole,
    CycleDetected,
    /// The enrichment response held no usable Turtle.
    ParseFailure,
    /// The completion backend failed after retries, or refused the request.
    BackendFailure,
}

impl Code {
    pub const ALL: [Code; 9] = [
        Code::AnchorFloat,
        Code::PrefixMisuse,
        Code::DisjointClash,
        Code::MissingComment,
        Code::UndeclaredPrefix,
        Code::FallbackRole,
        Code::CycleDetected,
        Code::ParseFailure,
        Code::BackendFailure,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Code::AnchorFloat => "ANCHOR_FLOAT",
            Code::PrefixMisuse => "PREFIX_MISUSE",
            Code::DisjointClash => "DISJOINT_CLASH",
            Code::MissingComment => "MISSING_COMMENT",
            Code::UndeclaredPrefix => "UNDECLARED_PREFIX",
            Code::FallbackRole => "FALLBACK_ROLE",
            Code::CycleDetected => "CYCLE_DETECTED",
            Code::ParseFailure => "PARSE_FAILURE",
            Code::BackendFailure => "BACKEND_FAILURE",
        }
    }

    pub fn severity(self) -> Severity {
        match self {
            Code::AnchorFloat | Code::PrefixMisuse | Code::DisjointClash | Code::CycleDetected => Severity::Error,
            Code::ParseFailure | Code::BackendFailure => Severity::Error,
            Code::UndeclaredPrefix => Severity::Warn,
            Code::MissingComment | Code::FallbackRole => Severity::Info,
        }
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: Code,
    #[serde(serialize_with = "term_as_string")]
    pub subject: Option<Term>,
    pub message: String,
}

fn term_as_string<S: Serializer>(term: &Option<Term>, serializer: S) -> Result<S::Ok, S::Error> {
    match term {
        Some(t) => serializer.serialize_some(&t.to_string()),
        None => serializer.serialize_none(),
    }
}

impl Diagnostic {
    /// A diagnostic at the code's registered severity.
    pub fn new(code: Code, subject: Option<Term>, message: impl Into<String>) -> Self {
        Diagnostic { severity: code.severity(), code, subject, message: message.into() }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.severity, self.code)?;
        if let Some(subject) = &self.subject {
            write!(f, " {subject}")?;
        }
        write!(f, ": {}", self.message)
    }
}

pub fn has_errors(diagnostics: &[Diagnostic]) -> bool {
    diagnostics.iter().any(Diagnostic::is_error)
}
