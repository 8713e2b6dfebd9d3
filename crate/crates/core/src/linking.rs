//! Resource-driven text↔graph matching: sense segments become class equivalences,
//! mention segments become `owl:sameAs` links on individuals.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::rdf::{Iri, RdfGraph, Term, Triple};
use crate::vocab;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SegmentKind {
    Mention,
    Sense,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub text: String,
    pub kind: SegmentKind,
    pub target: Iri,
}

impl Segment {
    pub fn new(text: &str, kind: SegmentKind, target: Iri) -> Result<Self, String> {
        if text.trim().is_empty() {
            return Err("segment text is empty".into());
        }
        Ok(Segment { text: text.to_string(), kind, target })
    }
}

impl Serialize for Iri {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for Iri {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let value = String::deserialize(deserializer)?;
        Iri::new(value).map_err(serde::de::Error::custom)
    }
}

/// Reads a JSON array of `{"text", "kind", "target"}` objects.
pub fn load_segments(path: &Path) -> Result<Vec<Segment>, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let segments: Vec<Segment> = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    if let Some(bad) = segments.iter().find(|s| s.text.trim().is_empty()) {
        return Err(format!("{}: empty segment text for {}", path.display(), bad.target.as_str()));
    }
    Ok(segments)
}

/// Canonical form for name matching: case-folded, `_`/`-`/camel-case boundaries
/// turned into single spaces.
pub fn fold_name(name: &str) -> String {
    let mut out = String::with_capacity(name.len() + 4);
    let mut prev_lower = false;
    for c in name.chars() {
        if c == '_' || c == '-' || c.is_whitespace() {
            if !out.ends_with(' ') && !out.is_empty() {
                out.push(' ');
            }
            prev_lower = false;
            continue;
        }
        if c.is_uppercase() && prev_lower && !out.ends_with(' ') {
            out.push(' ');
        }
        prev_lower = c.is_lowercase() || c.is_ascii_digit();
        out.extend(c.to_lowercase());
    }
    out.trim_end().to_string()
}

/// Local name with a trailing `_k` occurrence index removed (`athlete_1` → `athlete`).
pub fn strip_index(local: &str) -> &str {
    match local.rsplit_once('_') {
        Some((stem, idx)) if !stem.is_empty() && !idx.is_empty() && idx.chars().all(|c| c.is_ascii_digit()) => stem,
        _ => local,
    }
}

const STRUCTURAL_TYPES: [&str; 6] = [
    vocab::OWL_CLASS,
    vocab::OWL_OBJECT_PROPERTY,
    vocab::OWL_DATATYPE_PROPERTY,
    vocab::OWL_ANNOTATION_PROPERTY,
    vocab::OWL_ONTOLOGY,
    "http://www.w3.org/2000/01/rdf-schema#Class",
];

/// Subjects typed with anything other than a schema-level type.
pub fn individuals(graph: &RdfGraph) -> BTreeSet<&Iri> {
    graph
        .with_predicate(vocab::RDF_TYPE)
        .filter(|t| !t.object.as_iri().is_some_and(|o| STRUCTURAL_TYPES.contains(&o.as_str())))
        .filter_map(|t| t.subject.as_iri())
        .collect()
}

/// Classes: objects of `rdf:type` on individuals, plus anything related by
/// `rdfs:subClassOf`/`owl:equivalentClass` or declared `owl:Class`.
pub fn classes(graph: &RdfGraph) -> BTreeSet<&Iri> {
    let mut out = BTreeSet::new();
    for t in graph.iter() {
        match t.predicate.as_str() {
            vocab::RDF_TYPE => match t.object.as_iri() {
                Some(o) if o.as_str() == vocab::OWL_CLASS => out.extend(t.subject.as_iri()),
                Some(o) if !STRUCTURAL_TYPES.contains(&o.as_str()) && o.as_str() != vocab::OWL_NAMED_INDIVIDUAL => {
                    out.insert(o);
                }
                _ => {}
            },
            vocab::RDFS_SUBCLASS_OF | vocab::OWL_EQUIVALENT_CLASS => {
                out.extend(t.subject.as_iri());
                out.extend(t.object.as_iri());
            }
            _ => {}
        }
    }
    out
}

/// Individuals whose `rdfs:label` or index-stripped local name matches `mention`.
pub fn individuals_matching<'g>(graph: &'g RdfGraph, mention: &str) -> Vec<&'g Iri> {
    let wanted = fold_name(mention);
    individuals(graph)
        .into_iter()
        .filter(|ind| {
            let by_name = fold_name(strip_index(ind.local_name())) == wanted;
            let subject = Term::Iri((*ind).clone());
            by_name
                || graph
                    .objects(&subject, vocab::RDFS_LABEL)
                    .filter_map(Term::as_literal)
                    .any(|l| fold_name(l.lexical()) == wanted)
        })
        .collect()
}

fn classes_matching<'g>(graph: &'g RdfGraph, text: &str) -> Vec<&'g Iri> {
    let wanted = fold_name(text);
    classes(graph)
        .into_iter()
        .filter(|c| !c.as_str().starts_with(vocab::WN30) && fold_name(strip_index(c.local_name())) == wanted)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinkNote {
    Unmatched {
        text: String,
        kind: SegmentKind,
    },
    Ambiguous {
        text: String,
        candidates: Vec<Iri>,
    },
    /// One surface form linked both as a mention and as a sense.
    MentionAndSense {
        text: String,
    },
}

impl std::fmt::Display for LinkNote {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LinkNote::Unmatched { text, kind } => write!(f, "unmatched {kind:?} segment {text:?}"),
            LinkNote::Ambiguous { text, candidates } => {
                let names: Vec<&str> = candidates.iter().map(Iri::as_str).collect();
                write!(f, "ambiguous segment {text:?} matches {}", names.join(", "))
            }
            LinkNote::MentionAndSense { text } => write!(f, "{text:?} linked as both mention and sense; review"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Linked {
    pub graph: RdfGraph,
    pub notes: Vec<LinkNote>,
}

/// Adds `owl:equivalentClass` for sense segments matching a class and `owl:sameAs`
/// for mention segments matching an individual. A segment matching several nodes
/// is reported and skipped.
pub fn match_segments(graph: &RdfGraph, segments: &[Segment]) -> Linked {
    let mut out = graph.clone();
    let mut notes = Vec::new();
    let mut linked_as: BTreeMap<String, BTreeSet<&'static str>> = BTreeMap::new();
    for segment in segments {
        let (candidates, predicate, kind_name) = match segment.kind {
            SegmentKind::Sense => (classes_matching(graph, &segment.text), vocab::OWL_EQUIVALENT_CLASS, "sense"),
            SegmentKind::Mention => (individuals_matching(graph, &segment.text), vocab::OWL_SAME_AS, "mention"),
        };
        match candidates.as_slice() {
            [] => notes.push(LinkNote::Unmatched { text: segment.text.clone(), kind: segment.kind }),
            [node] => {
                out.insert(Triple::new_unchecked(
                    Term::Iri((*node).clone()),
                    Iri::new_unchecked(predicate),
                    Term::Iri(segment.target.clone()),
                ));
                linked_as.entry(fold_name(&segment.text)).or_default().insert(kind_name);
            }
            many => notes.push(LinkNote::Ambiguous {
                text: segment.text.clone(),
                candidates: many.iter().map(|c| (*c).clone()).collect(),
            }),
        }
    }
    for (text, kinds) in linked_as {
        if kinds.len() > 1 {
            notes.push(LinkNote::MentionAndSense { text });
        }
    }
    Linked { graph: out, notes }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::{diff, parse_turtle_with, ParseOptions, PrefixTable};

    fn graph(body: &str) -> RdfGraph {
        let opts = ParseOptions { preloaded: PrefixTable::standard(), ..Default::default() };
        parse_turtle_with(body, &opts).unwrap()
    }

    fn iri(s: &str) -> Iri {
        Iri::new(s).unwrap()
    }

    #[test]
    fn folding() {
        assert_eq!(fold_name("Saint_Lucia"), "saint lucia");
        assert_eq!(fold_name("saint  LUCIA"), "saint lucia");
        assert_eq!(fold_name("IceCream"), "ice cream");
        assert_eq!(fold_name("ice-cream"), "ice cream");
        assert_eq!(strip_index("athlete_12"), "athlete");
        assert_eq!(strip_index("supersense-noun_person"), "supersense-noun_person");
    }

    #[test]
    fn sense_segment_adds_equivalence() {
        let g = graph("fred:athlete_1 a fred:Athlete .");
        let seg =
            Segment::new("athlete", SegmentKind::Sense, iri(&format!("{}synset-athlete-noun-1", vocab::WN30))).unwrap();
        let linked = match_segments(&g, &[seg]);
        let added = diff(&linked.graph, &g);
        assert_eq!(added.len(), 1);
        let t = added.iter().next().unwrap();
        assert_eq!(t.predicate.as_str(), vocab::OWL_EQUIVALENT_CLASS);
        assert_eq!(t.subject, Term::Iri(iri(&format!("{}Athlete", vocab::FRED))));
        assert!(linked.notes.is_empty());
    }

    #[test]
    fn empty_segments_unchanged() {
        let g = graph("fred:athlete_1 a fred:Athlete .");
        let linked = match_segments(&g, &[]);
        assert_eq!(linked.graph, g);
    }

    #[test]
    fn unmatched_mention_reported() {
        let g = graph("fred:athlete_1 a fred:Athlete .");
        let seg = Segment::new("ALFRED", SegmentKind::Mention, iri("http://www.wikidata.org/entity/Q1")).unwrap();
        let linked = match_segments(&g, &[seg]);
        assert_eq!(linked.graph, g);
        assert_eq!(linked.notes, vec![LinkNote::Unmatched { text: "ALFRED".into(), kind: SegmentKind::Mention }]);
    }

    #[test]
    fn ties_are_skipped() {
        let g = graph("fred:a_1 a fred:X ; rdfs:label \"Same\" . fred:b_1 a fred:Y ; rdfs:label \"same\" .");
        let seg = Segment::new("same", SegmentKind::Mention, iri("http://e/q")).unwrap();
        let linked = match_segments(&g, &[seg]);
        assert_eq!(linked.graph, g);
        assert!(matches!(&linked.notes[0], LinkNote::Ambiguous { candidates, .. } if candidates.len() == 2));
    }

    #[test]
    fn mention_and_sense_both_added_and_flagged() {
        let g = graph("fred:athlete_1 a fred:Athlete .");
        let segs = [
            Segment::new("athlete", SegmentKind::Sense, iri("http://e/syn")).unwrap(),
            Segment::new("athlete", SegmentKind::Mention, iri("http://e/ent")).unwrap(),
        ];
        let linked = match_segments(&g, &segs);
        assert_eq!(diff(&linked.graph, &g).len(), 2);
        assert_eq!(linked.notes, vec![LinkNote::MentionAndSense { text: "athlete".into() }]);
    }

    #[test]
    fn segment_text_must_be_non_empty() {
        assert!(Segment::new("  ", SegmentKind::Sense, iri("http://e/x")).is_err());
    }
}
