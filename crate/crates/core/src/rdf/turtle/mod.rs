//! Turtle subset: prefixes, `a`, `;`/`,` lists, blank nodes (`[]`, `_:`), typed and
//! language-tagged literals, booleans and numbers. Collections and named graphs are
//! rejected.

mod parser;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;

pub use parser::{parse_turtle, parse_turtle_with, ParseOptions};

use super::{Iri, PrefixTable, RdfGraph, Term, Triple};
use crate::vocab;

pub(crate) fn escape_string(value: &str) -> String {
    let mut out = String::with_capacity(value.len());
    for c in value.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '"' => out.push_str("\\\""),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c => out.push(c),
        }
    }
    out
}

fn is_valid_blank_label(label: &str) -> bool {
    let mut chars = label.chars();
    matches!(chars.next(), Some(c) if c.is_alphanumeric() || c == '_')
        && !label.ends_with('.')
        && chars.all(|c| c.is_alphanumeric() || matches!(c, '_' | '-' | '.'))
}

fn is_integer(lexical: &str) -> bool {
    let digits = lexical.strip_prefix(['+', '-']).unwrap_or(lexical);
    !digits.is_empty() && digits.chars().all(|c| c.is_ascii_digit())
}

fn is_decimal(lexical: &str) -> bool {
    let body = lexical.strip_prefix(['+', '-']).unwrap_or(lexical);
    match body.split_once('.') {
        Some((int, frac)) => {
            int.chars().all(|c| c.is_ascii_digit()) && !frac.is_empty() && frac.chars().all(|c| c.is_ascii_digit())
        }
        None => false,
    }
}

struct Writer<'a> {
    prefixes: &'a PrefixTable,
    blanks: HashMap<&'a str, String>,
}

impl<'a> Writer<'a> {
    fn new(graph: &'a RdfGraph) -> Self {
        let mut used: HashSet<&str> = HashSet::new();
        let mut blanks = HashMap::new();
        let labels: Vec<&str> = graph
            .iter()
            .flat_map(|t| [&t.subject, &t.object])
            .filter_map(|term| match term {
                Term::Blank(label) => Some(label.as_str()),
                _ => None,
            })
            .collect();
        for label in &labels {
            if is_valid_blank_label(label) {
                used.insert(label);
            }
        }
        let mut counter = 0usize;
        for label in labels {
            if blanks.contains_key(label) {
                continue;
            }
            let out = if is_valid_blank_label(label) {
                label.to_string()
            } else {
                loop {
                    let candidate = format!("gen{counter}");
                    counter += 1;
                    if !used.contains(candidate.as_str()) {
                        break candidate;
                    }
                }
            };
            blanks.insert(label, out);
        }
        Writer { prefixes: graph.prefixes(), blanks }
    }

    fn iri(&self, iri: &Iri) -> String {
        self.prefixes.contract(iri).unwrap_or_else(|| format!("<{}>", iri.as_str()))
    }

    fn term(&self, term: &Term) -> String {
        match term {
            Term::Iri(iri) => self.iri(iri),
            Term::Blank(label) => format!("_:{}", self.blanks[label.as_str()]),
            Term::Literal(lit) => {
                if let Some(lang) = lit.language() {
                    return format!("\"{}\"@{lang}", escape_string(lit.lexical()));
                }
                match lit.datatype() {
                    None => format!("\"{}\"", escape_string(lit.lexical())),
                    Some(dt) => {
                        let bare = match dt.as_str() {
                            vocab::XSD_BOOLEAN => true,
                            vocab::XSD_INTEGER => is_integer(lit.lexical()),
                            vocab::XSD_DECIMAL => is_decimal(lit.lexical()),
                            _ => false,
                        };
                        if bare {
                            lit.lexical().to_string()
                        } else {
                            format!("\"{}\"^^{}", escape_string(lit.lexical()), self.iri(dt))
                        }
                    }
                }
            }
        }
    }

    fn predicate(&self, iri: &Iri) -> String {
        if iri.as_str() == vocab::RDF_TYPE {
            "a".to_string()
        } else {
            self.iri(iri)
        }
    }
}

/// Deterministic Turtle: prefix declarations sorted by label, then one block per
/// subject (sorted by expanded IRI), predicates and objects sorted within a block.
pub fn serialize_turtle(graph: &RdfGraph) -> String {
    let writer = Writer::new(graph);
    let mut out = String::new();
    for (label, ns) in graph.prefixes().iter() {
        let _ = writeln!(out, "@prefix {label}: <{}> .", ns.as_str());
    }

    let mut blocks: BTreeMap<&Term, BTreeMap<&Iri, Vec<&Term>>> = BTreeMap::new();
    for Triple { subject, predicate, object } in graph.iter() {
        blocks.entry(subject).or_default().entry(predicate).or_default().push(object);
    }
    for (subject, predicates) in blocks {
        out.push('\n');
        out.push_str(&writer.term(subject));
        for (i, (predicate, objects)) in predicates.iter().enumerate() {
            if i > 0 {
                out.push_str(" ;\n   ");
            }
            out.push(' ');
            out.push_str(&writer.predicate(predicate));
            out.push(' ');
            let rendered: Vec<String> = objects.iter().map(|o| writer.term(o)).collect();
            out.push_str(&rendered.join(", "));
        }
        out.push_str(" .\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::Literal;

    #[test]
    fn empty_graph_only_prefixes() {
        let g = RdfGraph::standard();
        let text = serialize_turtle(&g);
        assert!(text.lines().all(|l| l.starts_with("@prefix ")));
        assert_eq!(text.lines().count(), 11);
    }

    #[test]
    fn single_triple_single_statement_line() {
        let g = parse_turtle("@prefix ex: <http://e/> . ex:a ex:p ex:b .").unwrap();
        let text = serialize_turtle(&g);
        let body: Vec<_> = text.lines().filter(|l| !l.starts_with("@prefix") && !l.is_empty()).collect();
        assert_eq!(body, vec!["ex:a ex:p ex:b ."]);
    }

    #[test]
    fn literal_forms() {
        let mut g = RdfGraph::standard();
        let s = Term::iri("http://e/s").unwrap();
        let p = Iri::new("http://e/p").unwrap();
        for lit in [
            Literal::boolean(true),
            Literal::integer(-3),
            Literal::simple("quote \" and \\ and\nnewline"),
            Literal::lang("hi", "en").unwrap(),
            Literal::typed("2024-08-03", Iri::new("http://www.w3.org/2001/XMLSchema#date").unwrap()).unwrap(),
        ] {
            g.insert(Triple::new(s.clone(), p.clone(), Term::Literal(lit)).unwrap());
        }
        let text = serialize_turtle(&g);
        assert!(text.contains("true"));
        assert!(text.contains("-3"));
        assert!(text.contains("\"hi\"@en"));
        assert!(text.contains("^^xsd:date"));
        let back = parse_turtle(&text).unwrap();
        assert_eq!(back.triples(), g.triples());
    }

    #[test]
    fn output_is_stable() {
        let text = "@prefix ex: <http://e/> . ex:b ex:p ex:c . ex:a ex:q ex:d ; a ex:K .";
        let once = serialize_turtle(&parse_turtle(text).unwrap());
        let twice = serialize_turtle(&parse_turtle(&once).unwrap());
        assert_eq!(once, twice);
        assert!(once.find("ex:a").unwrap() < once.find("ex:b").unwrap());
    }

    #[test]
    fn invalid_blank_labels_are_renamed() {
        let mut g = RdfGraph::standard();
        let p = Iri::new("http://e/p").unwrap();
        g.insert(Triple::new(Term::Blank("has space".into()), p.clone(), Term::Blank("ok".into())).unwrap());
        let text = serialize_turtle(&g);
        assert!(text.contains("_:gen0"));
        assert_eq!(parse_turtle(&text).unwrap().len(), 1);
    }
}
