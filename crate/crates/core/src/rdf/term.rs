use std::fmt;

use super::RdfError;
use crate::vocab;

/// An absolute IRI, validated syntactically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Iri(String);

impl Iri {
    pub fn new(value: impl Into<String>) -> Result<Self, RdfError> {
        let value = value.into();
        if Self::is_valid(&value) {
            Ok(Iri(value))
        } else {
            Err(RdfError::InvalidIri(value))
        }
    }

    /// Builds an IRI from a string already known to be valid (vocabulary constants,
    /// namespace concatenations checked by the caller).
    pub(crate) fn new_unchecked(value: impl Into<String>) -> Self {
        let value = value.into();
        debug_assert!(Self::is_valid(&value), "invalid IRI {value:?}");
        Iri(value)
    }

    pub fn is_valid(value: &str) -> bool {
        let Some(colon) = value.find(':') else {
            return false;
        };
        colon > 0
            && !value
                .chars()
                .any(|c| c.is_whitespace() || matches!(c, '<' | '>' | '"' | '{' | '}' | '|' | '^' | '`' | '\\'))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// The fragment after the last `#`, `/` or `:`.
    pub fn local_name(&self) -> &str {
        let cut = self.0.rfind(['#', '/', ':']).map(|i| i + 1).unwrap_or(0);
        &self.0[cut..]
    }

    pub fn starts_with(&self, namespace: &str) -> bool {
        self.0.starts_with(namespace)
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.0)
    }
}

impl AsRef<str> for Iri {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

/// An RDF literal. A literal carries either a datatype or a language tag, never both.
/// Simple literals and `xsd:string` literals are the same value and are stored
/// without a datatype.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    lexical: String,
    datatype: Option<Iri>,
    language: Option<String>,
}

impl Literal {
    pub fn simple(lexical: impl Into<String>) -> Self {
        Literal { lexical: lexical.into(), datatype: None, language: None }
    }

    pub fn typed(lexical: impl Into<String>, datatype: Iri) -> Result<Self, RdfError> {
        let lexical = lexical.into();
        if datatype.as_str() == vocab::XSD_STRING {
            return Ok(Self::simple(lexical));
        }
        if datatype.as_str() == vocab::XSD_BOOLEAN && lexical != "true" && lexical != "false" {
            return Err(RdfError::InvalidLiteral(format!(
                "boolean literal must be `true` or `false`, got {lexical:?}"
            )));
        }
        Ok(Literal { lexical, datatype: Some(datatype), language: None })
    }

    pub fn lang(lexical: impl Into<String>, language: impl Into<String>) -> Result<Self, RdfError> {
        let language = language.into();
        let valid = !language.is_empty()
            && language.split('-').all(|part| !part.is_empty() && part.chars().all(|c| c.is_ascii_alphanumeric()));
        if !valid {
            return Err(RdfError::InvalidLiteral(format!("bad language tag {language:?}")));
        }
        Ok(Literal { lexical: lexical.into(), datatype: None, language: Some(language.to_ascii_lowercase()) })
    }

    pub fn boolean(value: bool) -> Self {
        Literal { lexical: value.to_string(), datatype: Some(Iri::new_unchecked(vocab::XSD_BOOLEAN)), language: None }
    }

    pub fn integer(value: i64) -> Self {
        Literal { lexical: value.to_string(), datatype: Some(Iri::new_unchecked(vocab::XSD_INTEGER)), language: None }
    }

    pub fn lexical(&self) -> &str {
        &self.lexical
    }

    pub fn datatype(&self) -> Option<&Iri> {
        self.datatype.as_ref()
    }

    pub fn language(&self) -> Option<&str> {
        self.language.as_deref()
    }

    pub fn is_boolean(&self) -> bool {
        self.datatype.as_ref().is_some_and(|d| d.as_str() == vocab::XSD_BOOLEAN)
    }
}

/// Subject or object position in a triple.
///
/// The variant order fixes the serialization order: IRIs, then blank nodes, then literals.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Iri(Iri),
    Blank(String),
    Literal(Literal),
}

impl Term {
    pub fn iri(value: &str) -> Result<Self, RdfError> {
        Iri::new(value).map(Term::Iri)
    }

    pub fn as_iri(&self) -> Option<&Iri> {
        match self {
            Term::Iri(iri) => Some(iri),
            _ => None,
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Term::Literal(lit) => Some(lit),
            _ => None,
        }
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, Term::Literal(_))
    }

    pub fn is_blank(&self) -> bool {
        matches!(self, Term::Blank(_))
    }
}

impl From<Iri> for Term {
    fn from(iri: Iri) -> Self {
        Term::Iri(iri)
    }
}

impl From<Literal> for Term {
    fn from(lit: Literal) -> Self {
        Term::Literal(lit)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(iri) => write!(f, "{iri}"),
            Term::Blank(label) => write!(f, "_:{label}"),
            Term::Literal(lit) => {
                write!(f, "\"{}\"", super::turtle::escape_string(&lit.lexical))?;
                if let Some(lang) = &lit.language {
                    write!(f, "@{lang}")
                } else if let Some(dt) = &lit.datatype {
                    write!(f, "^^{dt}")
                } else {
                    Ok(())
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub subject: Term,
    pub predicate: Iri,
    pub object: Term,
}

impl Triple {
    /// Fails when the subject is a literal.
    pub fn new(subject: Term, predicate: Iri, object: Term) -> Result<Self, RdfError> {
        if subject.is_literal() {
            return Err(RdfError::LiteralSubject);
        }
        Ok(Triple { subject, predicate, object })
    }

    pub(crate) fn new_unchecked(subject: Term, predicate: Iri, object: Term) -> Self {
        debug_assert!(!subject.is_literal());
        Triple { subject, predicate, object }
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} .", self.subject, self.predicate, self.object)
    }
}
