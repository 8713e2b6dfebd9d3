use std::collections::{BTreeMap, BTreeSet};

use rand::seq::IndexedRandom;
use rand::Rng;
use xkg_core::rdf::{Iri, Literal, PrefixTable, RdfGraph, Term, Triple};

const NAMESPACES: [&str; 3] = ["http://example.org/a/", "http://example.org/b#", "urn:x:"];
const LOCALS: [&str; 8] = ["s", "p", "o", "athlete_1", "Track", "x-y", "n42", "win-01.arg0"];
const TEXTS: [&str; 7] = ["plain", "with \"quotes\"", "back\\slash", "line\nbreak", "tab\there", "été ☃", ""];

pub fn random_iri(rng: &mut impl Rng) -> Iri {
    let ns = NAMESPACES.choose(rng).unwrap();
    let local = LOCALS.choose(rng).unwrap();
    Iri::new(format!("{ns}{local}{}", rng.random_range(0..4))).unwrap()
}

pub fn random_literal(rng: &mut impl Rng) -> Literal {
    let text = TEXTS.choose(rng).unwrap().to_string();
    match rng.random_range(0..5) {
        0 => Literal::simple(text),
        1 => Literal::lang(text, "en").unwrap(),
        2 => Literal::integer(rng.random_range(-50..50)),
        3 => Literal::boolean(rng.random()),
        _ => Literal::typed(text, Iri::new("http://example.org/dt").unwrap()).unwrap(),
    }
}

fn random_node(rng: &mut impl Rng, blanks: usize) -> Term {
    if blanks > 0 && rng.random_bool(0.25) {
        Term::Blank(format!("b{}", rng.random_range(0..blanks)))
    } else {
        Term::Iri(random_iri(rng))
    }
}

/// A graph of up to `max_triples` triples over a small vocabulary, with blank
/// nodes, literals and a few prefixes bound.
pub fn random_graph(rng: &mut impl Rng, max_triples: usize) -> RdfGraph {
    let mut prefixes = PrefixTable::new();
    for (i, ns) in NAMESPACES.iter().enumerate().take(rng.random_range(0..=NAMESPACES.len())) {
        prefixes.insert(&format!("n{i}"), Iri::new(*ns).unwrap()).unwrap();
    }
    let blanks = rng.random_range(0..5);
    let mut graph = RdfGraph::new(prefixes);
    for _ in 0..rng.random_range(0..=max_triples) {
        let subject = random_node(rng, blanks);
        let object = if rng.random_bool(0.3) { Term::Literal(random_literal(rng)) } else { random_node(rng, blanks) };
        graph.insert(Triple::new(subject, random_iri(rng), object).unwrap());
    }
    graph
}

fn blanks_of(graph: &RdfGraph) -> Vec<String> {
    let set: BTreeSet<String> = graph
        .iter()
        .flat_map(|t| [&t.subject, &t.object])
        .filter_map(|t| match t {
            Term::Blank(b) => Some(b.clone()),
            _ => None,
        })
        .collect();
    set.into_iter().collect()
}

fn rename(graph: &RdfGraph, map: &BTreeMap<String, String>) -> BTreeSet<Triple> {
    let r = |t: &Term| match t {
        Term::Blank(b) => Term::Blank(map[b].clone()),
        other => other.clone(),
    };
    graph.iter().map(|t| Triple::new(r(&t.subject), t.predicate.clone(), r(&t.object)).unwrap()).collect()
}

fn degree(graph: &RdfGraph, blank: &str) -> (usize, usize) {
    let b = Term::Blank(blank.to_string());
    (graph.iter().filter(|t| t.subject == b).count(), graph.iter().filter(|t| t.object == b).count())
}

/// Triple-set equality up to a bijective renaming of blank nodes, by
/// backtracking over degree-compatible assignments.
pub fn isomorphic(a: &RdfGraph, b: &RdfGraph) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let (ba, bb) = (blanks_of(a), blanks_of(b));
    if ba.len() != bb.len() {
        return false;
    }
    fn search(
        i: usize,
        ba: &[String],
        bb: &[String],
        used: &mut Vec<bool>,
        map: &mut BTreeMap<String, String>,
        a: &RdfGraph,
        b: &RdfGraph,
    ) -> bool {
        if i == ba.len() {
            return &rename(a, map) == b.triples();
        }
        for j in 0..bb.len() {
            if used[j] || degree(a, &ba[i]) != degree(b, &bb[j]) {
                continue;
            }
            used[j] = true;
            map.insert(ba[i].clone(), bb[j].clone());
            if search(i + 1, ba, bb, used, map, a, b) {
                return true;
            }
            used[j] = false;
        }
        false
    }
    search(0, &ba, &bb, &mut vec![false; bb.len()], &mut BTreeMap::new(), a, b)
}
