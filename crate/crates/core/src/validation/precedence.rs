use std::collections::BTreeSet;

use petgraph::algo::tarjan_scc;
use petgraph::graphmap::DiGraphMap;
use petgraph::visit::Dfs;

use super::{Code, Diagnostic};
use crate::rdf::{Iri, RdfGraph, Term};
use crate::vocab;

/// `d0:precedes` appears in some generated graphs; it is read as `dul:precedes`.
const D0_PRECEDES: &str = "http://www.ontologydesignpatterns.org/ont/d0.owl#precedes";

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Precedence {
    pub asserted: BTreeSet<(Iri, Iri)>,
    /// Transitive closure of the asserted pairs.
    pub closure: BTreeSet<(Iri, Iri)>,
    /// One CYCLE_DETECTED per strongly connected component with a cycle.
    pub diagnostics: Vec<Diagnostic>,
}

impl Precedence {
    /// Closure pairs that were not asserted.
    pub fn inferred(&self) -> impl Iterator<Item = &(Iri, Iri)> {
        self.closure.difference(&self.asserted)
    }
}

pub fn precedes_pairs(graph: &RdfGraph) -> BTreeSet<(Iri, Iri)> {
    graph
        .iter()
        .filter(|t| t.predicate.as_str() == vocab::DUL_PRECEDES || t.predicate.as_str() == D0_PRECEDES)
        .filter_map(|t| Some((t.subject.as_iri()?.clone(), t.object.as_iri()?.clone())))
        .collect()
}

/// Transitive closure of `dul:precedes`. Cycles are reported and the closure is
/// still returned; nodes on a cycle then precede themselves.
pub fn infer_precedence(graph: &RdfGraph) -> Precedence {
    let asserted = precedes_pairs(graph);
    let mut g = DiGraphMap::<&Iri, ()>::new();
    for (a, b) in &asserted {
        g.add_edge(a, b, ());
    }

    let mut closure = BTreeSet::new();
    for start in g.nodes() {
        let mut dfs = Dfs::empty(&g);
        dfs.stack.extend(g.neighbors(start));
        while let Some(reached) = dfs.next(&g) {
            closure.insert((start.clone(), reached.clone()));
        }
    }

    let mut diagnostics = Vec::new();
    for mut scc in tarjan_scc(&g) {
        if scc.len() > 1 || g.contains_edge(scc[0], scc[0]) {
            scc.sort();
            let names: Vec<&str> = scc.iter().map(|i| i.local_name()).collect();
            diagnostics.push(Diagnostic::new(
                Code::CycleDetected,
                Some(Term::Iri(scc[0].clone())),
                format!("dul:precedes cycle among {}", names.join(", ")),
            ));
        }
    }
    diagnostics.sort();
    Precedence { asserted, closure, diagnostics }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::{parse_turtle_with, ParseOptions, PrefixTable};

    fn ttl(body: &str) -> RdfGraph {
        parse_turtle_with(body, &ParseOptions { preloaded: PrefixTable::standard(), ..Default::default() }).unwrap()
    }

    fn fred(l: &str) -> Iri {
        Iri::new(format!("{}{l}", vocab::FRED)).unwrap()
    }

    #[test]
    fn chain_infers_endpoints() {
        let p = infer_precedence(&ttl(
            "fred:wear_1 dul:precedes fred:race_1 . fred:race_1 dul:precedes fred:win_1 . fred:win_1 dul:precedes fred:celebrate_1 .",
        ));
        assert!(p.inferred().any(|pair| *pair == (fred("wear_1"), fred("celebrate_1"))));
        assert_eq!(p.closure.len(), 6);
        assert!(p.diagnostics.is_empty());
    }

    #[test]
    fn single_assertion() {
        let p = infer_precedence(&ttl("fred:a_1 dul:precedes fred:b_1 ."));
        assert_eq!(p.closure, p.asserted);
        assert_eq!(p.inferred().count(), 0);
    }

    #[test]
    fn cycle_reported_with_partial_result() {
        let p = infer_precedence(&ttl(
            "fred:a_1 dul:precedes fred:b_1 . fred:b_1 dul:precedes fred:a_1 . fred:b_1 dul:precedes fred:c_1 .",
        ));
        assert_eq!(p.diagnostics.len(), 1);
        assert_eq!(p.diagnostics[0].code, Code::CycleDetected);
        assert!(p.closure.contains(&(fred("a_1"), fred("c_1"))));
    }
}
