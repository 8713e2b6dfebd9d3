use std::collections::BTreeSet;

use super::{Code, Diagnostic};
use crate::linking;
use crate::rdf::{Iri, RdfGraph, Term, UNDECLARED_NAMESPACE_BASE};
use crate::vocab;

/// Pitfall checks: `pbrs:` frame classes used as predicates, undeclared prefixes,
/// locally minted classes and properties without `rdfs:comment`, and fallback
/// `dul:associatedWith` edges.
pub fn lint(graph: &RdfGraph) -> Vec<Diagnostic> {
    let mut out = Vec::new();

    for t in graph.iter().filter(|t| t.predicate.starts_with(vocab::PBRS)) {
        out.push(Diagnostic::new(
            Code::PrefixMisuse,
            Some(t.subject.clone()),
            format!("predicate pbrs:{} is a frame class; local roles belong in pblr:", t.predicate.local_name()),
        ));
    }

    let mut undeclared: BTreeSet<&str> = graph.prefixes().undeclared_labels().into_iter().collect();
    for iri in graph.all_iris() {
        if let Some(rest) = iri.as_str().strip_prefix(UNDECLARED_NAMESPACE_BASE) {
            undeclared.extend(rest.split_once(':').map(|(label, _)| label));
        }
    }
    for label in undeclared {
        out.push(Diagnostic::new(Code::UndeclaredPrefix, None, format!("prefix {label:?} used without declaration")));
    }

    for entity in minted_terms(graph) {
        let subject = Term::Iri(entity.clone());
        if graph.objects(&subject, vocab::RDFS_COMMENT).next().is_none() {
            out.push(Diagnostic::new(Code::MissingComment, Some(subject), "no rdfs:comment describes this entity"));
        }
    }

    for t in graph.with_predicate(vocab::DUL_ASSOCIATED_WITH) {
        out.push(Diagnostic::new(
            Code::FallbackRole,
            Some(t.subject.clone()),
            format!("dul:associatedWith {} stands in for an unmapped role", t.object),
        ));
    }
    out
}

/// Classes and properties outside the reference vocabularies.
fn minted_terms(graph: &RdfGraph) -> BTreeSet<&Iri> {
    let mut terms: BTreeSet<&Iri> = linking::classes(graph);
    terms.extend(graph.predicates());
    terms.retain(|iri| !vocab::is_reference_term(iri.as_str()) && !iri.as_str().starts_with(UNDECLARED_NAMESPACE_BASE));
    terms
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::{parse_turtle_with, ParseOptions, PrefixTable};
    use crate::validation::Severity;

    fn ttl(body: &str) -> RdfGraph {
        let opts = ParseOptions { preloaded: PrefixTable::standard(), lenient_prefixes: true, ..Default::default() };
        parse_turtle_with(body, &opts).unwrap()
    }

    fn codes(diags: &[Diagnostic]) -> Vec<Code> {
        diags.iter().map(|d| d.code).collect()
    }

    #[test]
    fn frame_class_as_predicate() {
        let diags = lint(&ttl("fred:cheer_1 pbrs:celebrate-01 fred:athlete_1 ."));
        assert_eq!(codes(&diags).iter().filter(|c| **c == Code::PrefixMisuse).count(), 1);
    }

    #[test]
    fn box_fragment_is_clean() {
        let g = ttl("fred:Athlete rdfs:subClassOf dul:Person, wn30:supersense-noun_person ;
                 owl:equivalentClass wn30:synset-athlete-noun-1 .
             fred:celebrate_1 a pbrs:celebrate-01 ;
                 vn.role:Location fred:track_1 ;
                 pblr:celebrate-01.honored fred:win_1 ;
                 pblr:celebrate-01.honorer fred:athlete_1 .");
        let diags = lint(&g);
        assert!(diags.iter().all(|d| d.severity == Severity::Info), "{diags:?}");
    }

    #[test]
    fn class_without_comment() {
        let diags = lint(&ttl("fred:Athlete a owl:Class ."));
        assert_eq!(codes(&diags), vec![Code::MissingComment]);
        let commented = lint(&ttl("fred:Athlete a owl:Class ; rdfs:comment \"A sportsperson.\" ."));
        assert!(commented.is_empty());
    }

    #[test]
    fn undeclared_and_fallback() {
        let diags = lint(&ttl("fred:a_1 dul:associatedWith ex:thing ."));
        assert!(codes(&diags).contains(&Code::UndeclaredPrefix));
        assert!(codes(&diags).contains(&Code::FallbackRole));
    }
}
