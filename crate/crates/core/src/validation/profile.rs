use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::rdf::{Iri, RdfGraph, Triple};
use crate::vocab;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct GraphProfile {
    pub axioms: usize,
    pub wordnet: usize,
    pub pb_roles: usize,
    pub pb_frames: usize,
    pub vn_roles: usize,
    pub d0: usize,
    pub dul: usize,
    /// Only filled when a base graph is supplied.
    pub new_op: usize,
    pub new_dp: usize,
}

const DECLARATION_TYPES: [&str; 6] = [
    vocab::OWL_CLASS,
    vocab::OWL_OBJECT_PROPERTY,
    vocab::OWL_DATATYPE_PROPERTY,
    vocab::OWL_ANNOTATION_PROPERTY,
    vocab::OWL_NAMED_INDIVIDUAL,
    vocab::OWL_ONTOLOGY,
];

const W3C: [&str; 4] = [vocab::OWL, vocab::RDF, vocab::RDFS, vocab::XSD];

/// Structural statements: entity declarations, labels, comments and ontology
/// header metadata. Everything else counts as an axiom.
pub fn is_structural(triple: &Triple, ontology_headers: &BTreeSet<&Iri>) -> bool {
    let declaration = triple.predicate.as_str() == vocab::RDF_TYPE
        && triple.object.as_iri().is_some_and(|o| DECLARATION_TYPES.contains(&o.as_str()));
    let annotation = matches!(triple.predicate.as_str(), vocab::RDFS_LABEL | vocab::RDFS_COMMENT | vocab::OWL_IMPORTS);
    let header = triple.subject.as_iri().is_some_and(|s| ontology_headers.contains(s));
    declaration || annotation || header
}

fn ontology_headers(graph: &RdfGraph) -> BTreeSet<&Iri> {
    graph
        .with_predicate(vocab::RDF_TYPE)
        .filter(|t| t.object.as_iri().is_some_and(|o| o.as_str() == vocab::OWL_ONTOLOGY))
        .filter_map(|t| t.subject.as_iri())
        .collect()
}

fn count_namespace(iris: &BTreeSet<&Iri>, namespace: &str) -> usize {
    iris.iter().filter(|i| i.starts_with(namespace)).count()
}

/// Counts axioms and distinct entities per reference namespace. With a base
/// graph the counts cover only the triples `graph` adds to it, and predicates
/// absent from the base are classified as new object or datatype properties
/// (datatype iff every object is a literal).
pub fn profile(graph: &RdfGraph, base: Option<&RdfGraph>) -> GraphProfile {
    let headers = ontology_headers(graph);
    let scope: Vec<&Triple> = match base {
        Some(base) => graph.iter().filter(|t| !base.contains(t)).collect(),
        None => graph.iter().collect(),
    };
    let iris: BTreeSet<&Iri> =
        scope.iter().flat_map(|t| [t.subject.as_iri(), Some(&t.predicate), t.object.as_iri()]).flatten().collect();

    let mut p = GraphProfile {
        axioms: scope.iter().filter(|t| !is_structural(t, &headers)).count(),
        wordnet: count_namespace(&iris, vocab::WN30),
        pb_roles: count_namespace(&iris, vocab::PBLR),
        pb_frames: count_namespace(&iris, vocab::PBRS),
        vn_roles: count_namespace(&iris, vocab::VN_ROLE),
        d0: count_namespace(&iris, vocab::D0),
        dul: count_namespace(&iris, vocab::DUL),
        new_op: 0,
        new_dp: 0,
    };

    if let Some(base) = base {
        let known = base.predicates();
        let mut literal_only: BTreeMap<&Iri, bool> = BTreeMap::new();
        for t in &scope {
            if known.contains(&t.predicate) || W3C.iter().any(|ns| t.predicate.starts_with(ns)) {
                continue;
            }
            *literal_only.entry(&t.predicate).or_insert(true) &= t.object.is_literal();
        }
        p.new_dp = literal_only.values().filter(|dp| **dp).count();
        p.new_op = literal_only.len() - p.new_dp;
    }
    p
}

/// New datatype properties of `graph` over `base` with their distinct objects.
pub fn new_datatype_properties<'a>(
    graph: &'a RdfGraph,
    base: &RdfGraph,
) -> BTreeMap<&'a Iri, BTreeSet<&'a crate::rdf::Term>> {
    let known = base.predicates();
    let mut out: BTreeMap<&Iri, BTreeSet<&crate::rdf::Term>> = BTreeMap::new();
    let mut object_props = BTreeSet::new();
    for t in graph.iter().filter(|t| !base.contains(t)) {
        if known.contains(&t.predicate) || W3C.iter().any(|ns| t.predicate.starts_with(ns)) {
            continue;
        }
        if t.object.is_literal() {
            out.entry(&t.predicate).or_default().insert(&t.object);
        } else {
            object_props.insert(&t.predicate);
        }
    }
    out.retain(|p, _| !object_props.contains(p));
    out
}

pub const PROFILE_COLUMNS: [&str; 10] =
    ["Graph", "Axioms", "WordNet", "PB Roles", "PB Frames", "VN Roles", "D0", "DUL", "OP", "DP"];

/// Plain-text table, one row per graph, columns as in [`PROFILE_COLUMNS`].
pub fn render_profile_table(rows: &[(String, GraphProfile)]) -> String {
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|(name, p)| {
            let mut row = vec![name.clone()];
            row.extend(
                [p.axioms, p.wordnet, p.pb_roles, p.pb_frames, p.vn_roles, p.d0, p.dul, p.new_op, p.new_dp]
                    .iter()
                    .map(usize::to_string),
            );
            row
        })
        .collect();
    render_table(&PROFILE_COLUMNS, &cells)
}

/// Left-aligned first column, right-aligned others.
pub fn render_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &mut dyn Iterator<Item = &str>| {
        let parts: Vec<String> = cells
            .zip(&widths)
            .enumerate()
            .map(|(i, (c, w))| if i == 0 { format!("{c:<w$}") } else { format!("{c:>w$}") })
            .collect();
        parts.join("  ").trim_end().to_string()
    };
    let mut out = line(&mut header.iter().copied());
    out.push('\n');
    out.push_str(&"-".repeat(widths.iter().sum::<usize>() + 2 * (widths.len().saturating_sub(1))));
    out.push('\n');
    for row in rows {
        out.push_str(&line(&mut row.iter().map(String::as_str)));
        out.push('\n');
    }
    out
}
