//! RDF data model, prefix handling, set algebra over graphs and the Turtle
//! reader/writer every other stage exchanges graphs through.

mod graph;
mod prefix;
mod term;
pub mod turtle;

use thiserror::Error;

pub use graph::{diff, merge, RdfGraph};
pub use prefix::{is_valid_label, is_valid_local, PrefixTable, UNDECLARED_NAMESPACE_BASE};
pub use term::{Iri, Literal, Term, Triple};
pub use turtle::{parse_turtle, parse_turtle_with, serialize_turtle, ParseOptions};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RdfError {
    #[error("invalid IRI {0:?}")]
    InvalidIri(String),
    #[error("invalid literal: {0}")]
    InvalidLiteral(String),
    #[error("literal in subject position")]
    LiteralSubject,
    #[error("invalid prefix label {0:?}")]
    InvalidPrefixLabel(String),
    #[error("prefix {label:?} bound to both <{first}> and <{second}>")]
    PrefixConflict { label: String, first: String, second: String },
    #[error("undeclared prefix {0:?}")]
    UndeclaredPrefix(String),
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
}
