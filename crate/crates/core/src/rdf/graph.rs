use std::collections::{BTreeSet, HashSet};

use super::{Iri, PrefixTable, RdfError, Term, Triple};

/// A set of triples plus the prefix table used to read or write them.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RdfGraph {
    triples: BTreeSet<Triple>,
    prefixes: PrefixTable,
}

impl RdfGraph {
    pub fn new(prefixes: PrefixTable) -> Self {
        RdfGraph { triples: BTreeSet::new(), prefixes }
    }

    /// Empty graph with the standard pipeline prefixes.
    pub fn standard() -> Self {
        Self::new(PrefixTable::standard())
    }

    pub fn from_triples(prefixes: PrefixTable, triples: impl IntoIterator<Item = Triple>) -> Self {
        RdfGraph { triples: triples.into_iter().collect(), prefixes }
    }

    /// Returns `false` when the triple was already present.
    pub fn insert(&mut self, triple: Triple) -> bool {
        self.triples.insert(triple)
    }

    pub fn extend(&mut self, triples: impl IntoIterator<Item = Triple>) {
        self.triples.extend(triples);
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        self.triples.contains(triple)
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn triples(&self) -> &BTreeSet<Triple> {
        &self.triples
    }

    pub fn iter(&self) -> impl Iterator<Item = &Triple> {
        self.triples.iter()
    }

    pub fn into_triples(self) -> BTreeSet<Triple> {
        self.triples
    }

    pub fn prefixes(&self) -> &PrefixTable {
        &self.prefixes
    }

    pub fn prefixes_mut(&mut self) -> &mut PrefixTable {
        &mut self.prefixes
    }

    pub fn with_predicate<'a>(&'a self, predicate: &'a str) -> impl Iterator<Item = &'a Triple> + 'a {
        self.triples.iter().filter(move |t| t.predicate.as_str() == predicate)
    }

    pub fn objects<'a>(&'a self, subject: &'a Term, predicate: &'a str) -> impl Iterator<Item = &'a Term> + 'a {
        self.triples
            .iter()
            .filter(move |t| &t.subject == subject && t.predicate.as_str() == predicate)
            .map(|t| &t.object)
    }

    /// IRIs occurring in subject or object position.
    pub fn node_iris(&self) -> HashSet<&Iri> {
        self.triples.iter().flat_map(|t| [t.subject.as_iri(), t.object.as_iri()]).flatten().collect()
    }

    /// Every IRI in any position.
    pub fn all_iris(&self) -> BTreeSet<&Iri> {
        self.triples
            .iter()
            .flat_map(|t| [t.subject.as_iri(), Some(&t.predicate), t.object.as_iri()])
            .flatten()
            .collect()
    }

    pub fn predicates(&self) -> BTreeSet<&Iri> {
        self.triples.iter().map(|t| &t.predicate).collect()
    }
}

/// Union of the triple sets and of the prefix tables.
pub fn merge<'a>(graphs: impl IntoIterator<Item = &'a RdfGraph>) -> Result<RdfGraph, RdfError> {
    let mut out = RdfGraph::default();
    for graph in graphs {
        out.prefixes = out.prefixes.merged(&graph.prefixes)?;
        out.triples.extend(graph.triples.iter().cloned());
    }
    Ok(out)
}

/// Triples in `after` that are absent from `before`.
pub fn diff(after: &RdfGraph, before: &RdfGraph) -> BTreeSet<Triple> {
    after.triples.difference(&before.triples).cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::Literal;

    fn t(s: &str, p: &str, o: &str) -> Triple {
        Triple::new(Term::iri(s).unwrap(), Iri::new(p).unwrap(), Term::iri(o).unwrap()).unwrap()
    }

    #[test]
    fn set_semantics() {
        let mut g = RdfGraph::standard();
        assert!(g.insert(t("http://e/a", "http://e/p", "http://e/b")));
        assert!(!g.insert(t("http://e/a", "http://e/p", "http://e/b")));
        assert_eq!(g.len(), 1);
    }

    #[test]
    fn merge_identity_and_idempotence() {
        let mut g = RdfGraph::standard();
        g.insert(t("http://e/a", "http://e/p", "http://e/b"));
        let empty = RdfGraph::default();
        assert_eq!(merge([&g, &g]).unwrap(), g);
        assert_eq!(merge([&g, &empty]).unwrap(), g);
    }

    #[test]
    fn merge_prefix_conflict() {
        let mut a = PrefixTable::new();
        a.insert("x", Iri::new("http://one/").unwrap()).unwrap();
        let mut b = PrefixTable::new();
        b.insert("x", Iri::new("http://two/").unwrap()).unwrap();
        let err = merge([&RdfGraph::new(a), &RdfGraph::new(b)]).unwrap_err();
        assert!(matches!(err, RdfError::PrefixConflict { ref label, .. } if label == "x"));
    }

    #[test]
    fn diff_basics() {
        let mut g = RdfGraph::standard();
        g.insert(t("http://e/a", "http://e/p", "http://e/b"));
        assert!(diff(&g, &g).is_empty());
        let mut h = g.clone();
        let extra = Triple::new(
            Term::iri("http://e/a").unwrap(),
            Iri::new("http://e/q").unwrap(),
            Term::Literal(Literal::boolean(true)),
        )
        .unwrap();
        h.insert(extra.clone());
        assert_eq!(diff(&h, &g), BTreeSet::from([extra]));
    }
}
