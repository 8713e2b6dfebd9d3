use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use petgraph::algo::is_cyclic_directed;
use petgraph::graphmap::DiGraphMap;

use super::{Code, Diagnostic};
use crate::linking;
use crate::rdf::{parse_turtle, Iri, RdfError, RdfGraph, Term};
use crate::vocab;

#[derive(Debug, thiserror::Error)]
pub enum OntologyError {
    #[error(transparent)]
    Parse(#[from] RdfError),
    #[error("subclass relation has a cycle through {0}")]
    Cyclic(String),
}

/// Subclass edges and symmetric class disjointness over foundational classes.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MiniOntology {
    parents: BTreeMap<Iri, BTreeSet<Iri>>,
    disjoint: BTreeSet<(Iri, Iri)>,
}

impl MiniOntology {
    /// Reads `rdfs:subClassOf` and `owl:disjointWith` statements.
    pub fn from_graph(graph: &RdfGraph) -> Result<Self, OntologyError> {
        let onto = MiniOntology::default().with_graph(graph);
        if let Some(class) = onto.cycle_member() {
            return Err(OntologyError::Cyclic(class));
        }
        Ok(onto)
    }

    pub fn from_turtle(text: &str) -> Result<Self, OntologyError> {
        Self::from_graph(&parse_turtle(text)?)
    }

    pub fn builtin() -> Self {
        Self::from_turtle(include_str!("../../resources/mini-ontology.ttl")).expect("builtin ontology is valid")
    }

    pub fn add_subclass(&mut self, child: Iri, parent: Iri) {
        self.parents.entry(child).or_default().insert(parent);
    }

    pub fn add_disjoint(&mut self, a: Iri, b: Iri) {
        let pair = if a <= b { (a, b) } else { (b, a) };
        self.disjoint.insert(pair);
    }

    pub fn are_disjoint(&self, a: &Iri, b: &Iri) -> bool {
        let pair = if a <= b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
        self.disjoint.contains(&pair)
    }

    pub fn disjoint_pairs(&self) -> impl Iterator<Item = &(Iri, Iri)> {
        self.disjoint.iter()
    }

    pub fn parents(&self, class: &Iri) -> impl Iterator<Item = &Iri> {
        self.parents.get(class).into_iter().flatten()
    }

    fn cycle_member(&self) -> Option<String> {
        let mut g = DiGraphMap::<&str, ()>::new();
        for (child, parents) in &self.parents {
            for p in parents {
                g.add_edge(child.as_str(), p.as_str(), ());
            }
        }
        if !is_cyclic_directed(&g) {
            return None;
        }
        petgraph::algo::tarjan_scc(&g)
            .into_iter()
            .find(|scc| scc.len() > 1 || g.contains_edge(scc[0], scc[0]))
            .map(|scc| scc[0].to_string())
    }

    /// The ontology extended with the subclass and disjointness axioms of `graph`.
    pub fn with_graph(&self, graph: &RdfGraph) -> MiniOntology {
        let mut onto = self.clone();
        for t in graph.iter() {
            let (Some(s), Some(o)) = (t.subject.as_iri(), t.object.as_iri()) else { continue };
            match t.predicate.as_str() {
                vocab::RDFS_SUBCLASS_OF => onto.add_subclass(s.clone(), o.clone()),
                vocab::OWL_DISJOINT_WITH => onto.add_disjoint(s.clone(), o.clone()),
                _ => {}
            }
        }
        onto
    }
}

/// Classes reachable from `individual` via `rdf:type` then `rdfs:subClassOf`, each
/// with the breadth-first predecessor used to rebuild its chain.
fn superclasses<'a>(individual: &'a Iri, types: &[&'a Iri], onto: &'a MiniOntology) -> HashMap<&'a Iri, &'a Iri> {
    let mut pred: HashMap<&Iri, &Iri> = HashMap::new();
    let mut queue: VecDeque<&Iri> = VecDeque::new();
    for &ty in types {
        if ty != individual && !pred.contains_key(ty) {
            pred.insert(ty, individual);
            queue.push_back(ty);
        }
    }
    while let Some(class) = queue.pop_front() {
        for parent in onto.parents(class) {
            if parent != individual && !pred.contains_key(parent) {
                pred.insert(parent, class);
                queue.push_back(parent);
            }
        }
    }
    pred
}

fn chain(individual: &Iri, class: &Iri, pred: &HashMap<&Iri, &Iri>) -> String {
    let mut names = vec![class.local_name()];
    let mut at = class;
    while let Some(&p) = pred.get(at) {
        names.push(p.local_name());
        if p == individual {
            break;
        }
        at = p;
    }
    names.reverse();
    names.join(" → ")
}

/// Individuals whose types, closed upward under subclassing (ontology plus the
/// graph's own `rdfs:subClassOf`), reach two disjoint classes. One DISJOINT_CLASH
/// per individual and disjoint pair, naming both subsumption chains.
pub fn check_consistency(graph: &RdfGraph, onto: &MiniOntology) -> Vec<Diagnostic> {
    let onto = onto.with_graph(graph);
    let mut out = Vec::new();
    for individual in linking::individuals(graph) {
        let subject = Term::Iri(individual.clone());
        let types: Vec<&Iri> = graph.objects(&subject, vocab::RDF_TYPE).filter_map(Term::as_iri).collect();
        let pred = superclasses(individual, &types, &onto);
        for (a, b) in onto.disjoint_pairs() {
            if pred.contains_key(a) && pred.contains_key(b) {
                out.push(Diagnostic::new(
                    Code::DisjointClash,
                    Some(subject.clone()),
                    format!(
                        "typed into disjoint classes {} and {}: {} / {}",
                        a.local_name(),
                        b.local_name(),
                        chain(individual, a, &pred),
                        chain(individual, b, &pred)
                    ),
                ));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::{parse_turtle_with, ParseOptions, PrefixTable};

    fn ttl(body: &str) -> RdfGraph {
        parse_turtle_with(body, &ParseOptions { preloaded: PrefixTable::standard(), ..Default::default() }).unwrap()
    }

    #[test]
    fn builtin_is_acyclic_and_symmetric() {
        let onto = MiniOntology::builtin();
        let obj = Iri::new(format!("{}Object", vocab::DUL)).unwrap();
        let ev = Iri::new(format!("{}Event", vocab::DUL)).unwrap();
        assert!(onto.are_disjoint(&obj, &ev));
        assert!(onto.are_disjoint(&ev, &obj));
    }

    #[test]
    fn cycles_rejected() {
        let err = MiniOntology::from_turtle(
            "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> . <http://e/a> rdfs:subClassOf <http://e/b> . <http://e/b> rdfs:subClassOf <http://e/a> .",
        );
        assert!(matches!(err, Err(OntologyError::Cyclic(_))));
    }

    #[test]
    fn object_event_clash_chain() {
        let g = ttl("fred:Athlete rdfs:subClassOf dul:Person .
             pbrs:cheer-01 rdfs:subClassOf d0:Activity .
             fred:athlete_1 a fred:Athlete, pbrs:cheer-01 .");
        let diags = check_consistency(&g, &MiniOntology::builtin());
        assert_eq!(diags.len(), 1);
        assert!(diags[0].message.contains("athlete_1 → Athlete → Person → Agent → Object"), "{}", diags[0].message);
        assert!(diags[0].message.contains("athlete_1 → cheer-01 → Activity → Action → Event"));
    }

    #[test]
    fn shared_ancestor_is_fine() {
        let g = ttl("fred:x_1 a dul:Person, dul:PhysicalPlace . fred:y_1 a fred:Athlete .");
        assert!(check_consistency(&g, &MiniOntology::builtin()).is_empty());
    }
}
