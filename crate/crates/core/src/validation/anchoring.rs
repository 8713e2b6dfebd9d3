use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use petgraph::unionfind::UnionFind;

use super::{Code, Diagnostic};
use crate::rdf::{Iri, RdfGraph, Term, Triple};
use crate::vocab;

/// Schema vocabulary never counts as an anchor: every graph mentions `owl:Class`.
fn is_schema_term(iri: &Iri) -> bool {
    [vocab::OWL, vocab::RDF, vocab::RDFS, vocab::XSD].iter().any(|ns| iri.starts_with(ns))
}

/// Groups `added` into connected components over subject/object nodes (literals
/// never connect anything) and reports each component that touches no IRI node of
/// `base`. Components come back in order of their smallest triple.
pub fn floating_components<'a>(base: &RdfGraph, added: &'a BTreeSet<Triple>) -> Vec<Vec<&'a Triple>> {
    let mut index: HashMap<&Term, usize> = HashMap::new();
    for t in added {
        let len = index.len();
        index.entry(&t.subject).or_insert(len);
        if !t.object.is_literal() {
            let len = index.len();
            index.entry(&t.object).or_insert(len);
        }
    }
    let mut sets = UnionFind::<usize>::new(index.len());
    for t in added {
        if !t.object.is_literal() {
            sets.union(index[&t.subject], index[&t.object]);
        }
    }

    let base_nodes = base.node_iris();
    let anchored: HashSet<usize> = index
        .iter()
        .filter(|(term, _)| term.as_iri().is_some_and(|iri| base_nodes.contains(iri) && !is_schema_term(iri)))
        .map(|(_, &i)| sets.find(i))
        .collect();

    let mut components: BTreeMap<usize, Vec<&Triple>> = BTreeMap::new();
    let mut first_seen: HashMap<usize, usize> = HashMap::new();
    for (n, t) in added.iter().enumerate() {
        let root = sets.find(index[&t.subject]);
        if !anchored.contains(&root) {
            let key = *first_seen.entry(root).or_insert(n);
            components.entry(key).or_default().push(t);
        }
    }
    components.into_values().collect()
}

/// One ANCHOR_FLOAT per component of `added` not connected to the base graph.
pub fn check_anchoring(base: &RdfGraph, added: &BTreeSet<Triple>) -> Vec<Diagnostic> {
    floating_components(base, added)
        .into_iter()
        .map(|component| {
            let listed: Vec<String> =
                component.iter().map(|t| format!("{} {} {}", t.subject, t.predicate, t.object)).collect();
            Diagnostic::new(
                Code::AnchorFloat,
                Some(component[0].subject.clone()),
                format!("{} triple(s) not connected to the base graph: {}", component.len(), listed.join(" ; ")),
            )
        })
        .collect()
}
