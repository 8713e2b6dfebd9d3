use std::collections::HashMap;

use crate::rdf::prefix::undeclared_namespace;
use crate::rdf::{Iri, Literal, PrefixTable, RdfError, RdfGraph, Term, Triple};
use crate::vocab;

/// Options for [`parse_turtle_with`].
#[derive(Debug, Clone, Default)]
pub struct ParseOptions {
    /// Prefix bindings in scope before the document starts.
    pub preloaded: PrefixTable,
    /// Bind unknown prefix labels to a placeholder namespace instead of failing.
    /// The placeholder bindings stay in the graph's prefix table so lints can report
    /// them.
    pub lenient_prefixes: bool,
    /// Prefix for freshly assigned blank node labels (defaults to `b`).
    pub blank_prefix: Option<String>,
}

/// Parses a Turtle document with no prefixes in scope beforehand.
pub fn parse_turtle(text: &str) -> Result<RdfGraph, RdfError> {
    parse_turtle_with(text, &ParseOptions::default())
}

pub fn parse_turtle_with(text: &str, options: &ParseOptions) -> Result<RdfGraph, RdfError> {
    let mut parser = Parser {
        chars: text.chars().collect(),
        pos: 0,
        line: 1,
        column: 1,
        prefixes: options.preloaded.clone(),
        lenient: options.lenient_prefixes,
        blank_prefix: options.blank_prefix.clone().unwrap_or_else(|| "b".to_string()),
        blank_labels: HashMap::new(),
        next_blank: 0,
        triples: Vec::new(),
    };
    parser.document()?;
    Ok(RdfGraph::from_triples(parser.prefixes, parser.triples))
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
    prefixes: PrefixTable,
    lenient: bool,
    blank_prefix: String,
    blank_labels: HashMap<String, String>,
    next_blank: usize,
    triples: Vec<Triple>,
}

impl Parser {
    fn error(&self, message: impl Into<String>) -> RdfError {
        RdfError::Syntax { line: self.line, column: self.column, message: message.into() }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn peek_at(&self, offset: usize) -> Option<char> {
        self.chars.get(self.pos + offset).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.get(self.pos).copied()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn expect(&mut self, expected: char) -> Result<(), RdfError> {
        match self.peek() {
            Some(c) if c == expected => {
                self.bump();
                Ok(())
            }
            Some(c) => Err(self.error(format!("expected `{expected}`, found `{c}`"))),
            None => Err(self.error(format!("expected `{expected}`, found end of input"))),
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '#' {
                while let Some(c) = self.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else {
                break;
            }
        }
    }

    fn starts_with_keyword(&self, keyword: &str) -> bool {
        let n = keyword.len();
        let matches =
            keyword.chars().enumerate().all(|(i, k)| self.peek_at(i).is_some_and(|c| c.eq_ignore_ascii_case(&k)));
        matches && self.peek_at(n).is_none_or(|c| c.is_whitespace())
    }

    fn document(&mut self) -> Result<(), RdfError> {
        loop {
            self.skip_ws();
            let Some(c) = self.peek() else {
                return Ok(());
            };
            if c == '@' {
                self.directive()?;
            } else if self.starts_with_keyword("PREFIX") {
                for _ in 0..6 {
                    self.bump();
                }
                self.prefix_body()?;
            } else if self.starts_with_keyword("BASE") {
                return Err(self.error("base IRIs are not supported"));
            } else {
                self.statement()?;
            }
        }
    }

    fn directive(&mut self) -> Result<(), RdfError> {
        self.bump();
        let word = self.take_while(|c| c.is_ascii_alphabetic());
        match word.as_str() {
            "prefix" => {
                self.prefix_body()?;
                self.skip_ws();
                self.expect('.')
            }
            "base" => Err(self.error("base IRIs are not supported")),
            other => Err(self.error(format!("unknown directive @{other}"))),
        }
    }

    fn prefix_body(&mut self) -> Result<(), RdfError> {
        self.skip_ws();
        let label = self.take_while(|c| c.is_alphanumeric() || matches!(c, '_' | '-' | '.'));
        self.expect(':')?;
        if !crate::rdf::is_valid_label(&label) {
            return Err(self.error(format!("invalid prefix label {label:?}")));
        }
        self.skip_ws();
        let ns = self.iri_ref()?;
        self.prefixes.rebind(&label, ns);
        Ok(())
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> String {
        let mut out = String::new();
        while let Some(c) = self.peek() {
            if !pred(c) {
                break;
            }
            out.push(c);
            self.bump();
        }
        out
    }

    fn statement(&mut self) -> Result<(), RdfError> {
        if self.peek() == Some('[') {
            let (subject, had_props) = self.blank_property_list()?;
            self.skip_ws();
            if self.peek() != Some('.') {
                self.predicate_object_list(&subject)?;
            } else if !had_props {
                return Err(self.error("empty blank node cannot stand alone as a statement"));
            }
        } else {
            let subject = self.subject()?;
            self.skip_ws();
            self.predicate_object_list(&subject)?;
        }
        self.skip_ws();
        self.expect('.')
    }

    fn subject(&mut self) -> Result<Term, RdfError> {
        match self.peek() {
            Some('<') => Ok(Term::Iri(self.iri_ref()?)),
            Some('_') if self.peek_at(1) == Some(':') => Ok(self.blank_label()),
            Some('(') => Err(self.error("collections are not supported")),
            Some('"') | Some('\'') => Err(self.error("literal in subject position")),
            Some(_) => Ok(Term::Iri(self.prefixed_name()?)),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn predicate_object_list(&mut self, subject: &Term) -> Result<(), RdfError> {
        loop {
            self.skip_ws();
            let predicate = self.verb()?;
            loop {
                self.skip_ws();
                let object = self.object()?;
                self.triples.push(Triple::new_unchecked(subject.clone(), predicate.clone(), object));
                self.skip_ws();
                if self.peek() == Some(',') {
                    self.bump();
                } else {
                    break;
                }
            }
            self.skip_ws();
            if self.peek() != Some(';') {
                return Ok(());
            }
            while self.peek() == Some(';') {
                self.bump();
                self.skip_ws();
            }
            if matches!(self.peek(), Some('.') | Some(']') | None) {
                return Ok(());
            }
        }
    }

    fn verb(&mut self) -> Result<Iri, RdfError> {
        if self.peek() == Some('a')
            && self.peek_at(1).is_none_or(|c| c.is_whitespace() || matches!(c, '<' | '[' | '_' | '"'))
        {
            self.bump();
            return Ok(Iri::new_unchecked(vocab::RDF_TYPE));
        }
        match self.peek() {
            Some('<') => self.iri_ref(),
            Some('_') | Some('[') => Err(self.error("blank node in predicate position")),
            Some('"') | Some('\'') => Err(self.error("literal in predicate position")),
            Some(_) => self.prefixed_name(),
            None => Err(self.error("expected predicate, found end of input")),
        }
    }

    fn object(&mut self) -> Result<Term, RdfError> {
        match self.peek() {
            Some('<') => Ok(Term::Iri(self.iri_ref()?)),
            Some('_') if self.peek_at(1) == Some(':') => Ok(self.blank_label()),
            Some('[') => Ok(self.blank_property_list()?.0),
            Some('(') => Err(self.error("collections are not supported")),
            Some('"') | Some('\'') => self.string_literal().map(Term::Literal),
            Some(c) if c.is_ascii_digit() || c == '+' || c == '-' || c == '.' => {
                self.numeric_literal().map(Term::Literal)
            }
            Some(_) => {
                if let Some(value) = self.boolean_keyword() {
                    return Ok(Term::Literal(Literal::boolean(value)));
                }
                Ok(Term::Iri(self.prefixed_name()?))
            }
            None => Err(self.error("expected object, found end of input")),
        }
    }

    fn boolean_keyword(&mut self) -> Option<bool> {
        for (word, value) in [("true", true), ("false", false)] {
            let n = word.len();
            let matches = word.chars().enumerate().all(|(i, k)| self.peek_at(i) == Some(k));
            let boundary = self.peek_at(n).is_none_or(|c| !(c.is_alphanumeric() || matches!(c, '_' | '-' | ':')));
            if matches && boundary {
                for _ in 0..n {
                    self.bump();
                }
                return Some(value);
            }
        }
        None
    }

    fn fresh_blank(&mut self) -> Term {
        let label = format!("{}{}", self.blank_prefix, self.next_blank);
        self.next_blank += 1;
        Term::Blank(label)
    }

    fn blank_label(&mut self) -> Term {
        self.bump();
        self.bump();
        let mut label = self.take_while(|c| c.is_alphanumeric() || matches!(c, '_' | '-' | '.'));
        while label.ends_with('.') {
            label.pop();
            self.pos -= 1;
            self.column -= 1;
        }
        if let Some(existing) = self.blank_labels.get(&label) {
            return Term::Blank(existing.clone());
        }
        let term = self.fresh_blank();
        if let Term::Blank(fresh) = &term {
            self.blank_labels.insert(label, fresh.clone());
        }
        term
    }

    /// Parses `[ ... ]`, returning the node and whether it had properties.
    fn blank_property_list(&mut self) -> Result<(Term, bool), RdfError> {
        self.expect('[')?;
        let node = self.fresh_blank();
        self.skip_ws();
        if self.peek() == Some(']') {
            self.bump();
            return Ok((node, false));
        }
        self.predicate_object_list(&node)?;
        self.skip_ws();
        self.expect(']')?;
        Ok((node, true))
    }

    fn iri_ref(&mut self) -> Result<Iri, RdfError> {
        self.expect('<')?;
        let mut value = String::new();
        loop {
            match self.bump() {
                Some('>') => break,
                Some('\\') => value.push(self.unicode_escape()?),
                Some(c) if c.is_whitespace() => return Err(self.error("whitespace inside IRI")),
                Some(c) => value.push(c),
                None => return Err(self.error("unterminated IRI")),
            }
        }
        Iri::new(value.clone()).map_err(|_| self.error(format!("invalid or relative IRI <{value}>")))
    }

    fn unicode_escape(&mut self) -> Result<char, RdfError> {
        let len = match self.bump() {
            Some('u') => 4,
            Some('U') => 8,
            _ => return Err(self.error("bad escape sequence")),
        };
        let mut hex = String::new();
        for _ in 0..len {
            hex.push(self.bump().ok_or_else(|| self.error("truncated escape"))?);
        }
        u32::from_str_radix(&hex, 16)
            .ok()
            .and_then(char::from_u32)
            .ok_or_else(|| self.error(format!("bad unicode escape {hex}")))
    }

    fn prefixed_name(&mut self) -> Result<Iri, RdfError> {
        let (line, column) = (self.line, self.column);
        let label = self.take_while(|c| c.is_alphanumeric() || matches!(c, '_' | '-' | '.'));
        if self.peek() != Some(':') {
            return Err(match label.is_empty() {
                true => self.error(format!("unexpected character `{}`", self.peek().unwrap_or(' '))),
                false => RdfError::Syntax { line, column, message: format!("unexpected token `{label}`") },
            });
        }
        if !crate::rdf::is_valid_label(&label) {
            return Err(RdfError::Syntax { line, column, message: format!("invalid prefix label {label:?}") });
        }
        self.bump();
        let mut local = String::new();
        while let Some(c) = self.peek() {
            if c.is_alphanumeric() || matches!(c, '_' | '-' | '.' | ':' | '%') {
                local.push(c);
                self.bump();
            } else if c == '\\' {
                self.bump();
                let escaped = self.bump().ok_or_else(|| self.error("truncated escape"))?;
                local.push(escaped);
            } else {
                break;
            }
        }
        while local.ends_with('.') {
            local.pop();
            self.pos -= 1;
            self.column -= 1;
        }
        if self.prefixes.get(&label).is_none() {
            if !self.lenient {
                return Err(RdfError::UndeclaredPrefix(label));
            }
            self.prefixes.rebind(&label, undeclared_namespace(&label));
        }
        self.prefixes.expand(&label, &local).map_err(|_| RdfError::Syntax {
            line,
            column,
            message: format!("invalid name {label}:{local}"),
        })
    }

    fn string_literal(&mut self) -> Result<Literal, RdfError> {
        let quote = self.bump().unwrap();
        let long = self.peek() == Some(quote) && self.peek_at(1) == Some(quote);
        if long {
            self.bump();
            self.bump();
        }
        let mut value = String::new();
        loop {
            let c = self.bump().ok_or_else(|| self.error("unterminated string"))?;
            if c == quote {
                if !long {
                    break;
                }
                if self.peek() == Some(quote) && self.peek_at(1) == Some(quote) {
                    self.bump();
                    self.bump();
                    break;
                }
                value.push(c);
            } else if c == '\\' {
                let e = self.bump().ok_or_else(|| self.error("truncated escape"))?;
                value.push(match e {
                    't' => '\t',
                    'n' => '\n',
                    'r' => '\r',
                    'b' => '\u{8}',
                    'f' => '\u{c}',
                    '"' => '"',
                    '\'' => '\'',
                    '\\' => '\\',
                    'u' | 'U' => {
                        self.pos -= 1;
                        self.column -= 1;
                        self.unicode_escape()?
                    }
                    other => return Err(self.error(format!("bad escape \\{other}"))),
                });
            } else if !long && (c == '\n' || c == '\r') {
                return Err(self.error("newline in short string"));
            } else {
                value.push(c);
            }
        }
        match self.peek() {
            Some('@') => {
                self.bump();
                let tag = self.take_while(|c| c.is_ascii_alphanumeric() || c == '-');
                Literal::lang(value, tag).map_err(|e| self.error(e.to_string()))
            }
            Some('^') => {
                self.bump();
                self.expect('^')?;
                let datatype = if self.peek() == Some('<') { self.iri_ref()? } else { self.prefixed_name()? };
                Literal::typed(value, datatype).map_err(|e| self.error(e.to_string()))
            }
            _ => Ok(Literal::simple(value)),
        }
    }

    fn numeric_literal(&mut self) -> Result<Literal, RdfError> {
        let mut text = String::new();
        if let Some(c @ ('+' | '-')) = self.peek() {
            text.push(c);
            self.bump();
        }
        text.push_str(&self.take_while(|c| c.is_ascii_digit()));
        let mut datatype = vocab::XSD_INTEGER;
        if self.peek() == Some('.') && self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
            text.push('.');
            text.push_str(&self.take_while(|c| c.is_ascii_digit()));
            datatype = vocab::XSD_DECIMAL;
        }
        if let Some(e @ ('e' | 'E')) = self.peek() {
            self.bump();
            text.push(e);
            if let Some(c @ ('+' | '-')) = self.peek() {
                text.push(c);
                self.bump();
            }
            let exp = self.take_while(|c| c.is_ascii_digit());
            if exp.is_empty() {
                return Err(self.error("malformed exponent"));
            }
            text.push_str(&exp);
            datatype = "http://www.w3.org/2001/XMLSchema#double";
        }
        if !text.chars().any(|c| c.is_ascii_digit()) {
            return Err(self.error(format!("malformed number {text:?}")));
        }
        Literal::typed(text, Iri::new_unchecked(datatype)).map_err(|e| self.error(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_document() {
        let g = parse_turtle("@prefix ex: <http://e/> . ex:a ex:p ex:b .").unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g.prefixes().get("ex").unwrap().as_str(), "http://e/");
    }

    #[test]
    fn celebrate_fragment() {
        let text = "@prefix fred: <http://www.ontologydesignpatterns.org/ont/fred/domain.owl#> .\n\
                    @prefix pbrs: <https://w3id.org/framester/pb/pbrs/> .\n\
                    @prefix pblr: <https://w3id.org/framester/pb/pblr/> .\n\
                    fred:celebrate_1 a pbrs:celebrate-01 ; pblr:celebrate-01.honorer fred:athlete_1 .";
        let g = parse_turtle(text).unwrap();
        assert_eq!(g.len(), 2);
        assert!(g.iter().any(|t| t.predicate.as_str() == "https://w3id.org/framester/pb/pblr/celebrate-01.honorer"));
        assert!(g.iter().any(|t| t.predicate.as_str() == vocab::RDF_TYPE));
    }

    #[test]
    fn object_list_expansion() {
        let text = "@prefix ex: <http://e/> . @prefix xsd: <http://www.w3.org/2001/XMLSchema#> .\n\
                    ex:a ex:p \"x\"@en, \"y\"^^xsd:string .";
        let g = parse_turtle(text).unwrap();
        assert_eq!(g.len(), 2);
        let subjects: std::collections::BTreeSet<_> = g.iter().map(|t| (&t.subject, &t.predicate)).collect();
        assert_eq!(subjects.len(), 1);
        assert!(g.iter().any(|t| t.object == Term::Literal(Literal::lang("x", "en").unwrap())));
        assert!(g.iter().any(|t| t.object == Term::Literal(Literal::simple("y"))));
    }

    #[test]
    fn undeclared_prefix_strict_and_lenient() {
        let err = parse_turtle("ex:a ex:p ex:b .").unwrap_err();
        assert_eq!(err, RdfError::UndeclaredPrefix("ex".into()));
        let opts = ParseOptions { lenient_prefixes: true, ..Default::default() };
        let g = parse_turtle_with("ex:a ex:p ex:b .", &opts).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g.prefixes().undeclared_labels(), vec!["ex"]);
    }

    #[test]
    fn syntax_error_position() {
        let err = parse_turtle("@prefix ex: <http://e/> .\nex:a ex:p .").unwrap_err();
        match err {
            RdfError::Syntax { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn blank_nodes_and_literals() {
        let text = "@prefix ex: <http://e/> .\n\
                    _:x ex:p [ ex:q 42 ; ex:r -1.5 ] .\n\
                    _:x ex:s true, false .\n\
                    [] ex:t \"\"\"multi\nline\"\"\" .\n\
                    ex:a ex:u 'single' .";
        let g = parse_turtle(text).unwrap();
        assert_eq!(g.len(), 7);
        let xs: Vec<_> = g.iter().filter(|t| t.subject == Term::Blank("b0".into())).collect();
        assert_eq!(xs.len(), 3);
        assert!(g.iter().any(|t| t.object == Term::Literal(Literal::integer(42))));
        assert!(g.iter().any(|t| t.object.as_literal().is_some_and(|l| l.lexical() == "multi\nline")));
    }

    #[test]
    fn trailing_dot_after_local_name() {
        let g = parse_turtle("@prefix ex: <http://e/> . ex:a ex:p ex:b.").unwrap();
        assert!(g.iter().all(|t| t.object == Term::iri("http://e/b").unwrap()));
    }

    #[test]
    fn sparql_style_prefix_and_empty_label() {
        let g = parse_turtle("PREFIX : <http://e/>\n:a :hasVictory :b .").unwrap();
        assert_eq!(g.len(), 1);
    }

    #[test]
    fn collections_rejected() {
        let err = parse_turtle("@prefix ex: <http://e/> . ex:a ex:p ( ex:b ) .").unwrap_err();
        assert!(matches!(err, RdfError::Syntax { .. }));
    }

    #[test]
    fn prefixed_name_starting_with_a() {
        let g = parse_turtle("@prefix a: <http://e/> . a:x a a:C .").unwrap();
        let t = g.iter().next().unwrap();
        assert_eq!(t.predicate.as_str(), vocab::RDF_TYPE);
        assert_eq!(t.subject, Term::iri("http://e/x").unwrap());
    }
}
