//! AMR → RDF translation with FRED-style patterns, followed by table-driven
//! WordNet/DOLCE alignment and entity linking.

mod resources;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

pub use resources::{AlignmentEntry, AlignmentMap, LinkTable, ResourceError, RolesetMap};

use crate::amr::{frame_lemma, AmrGraph, AmrTarget, Constant};
use crate::linking::{fold_name, individuals_matching};
use crate::rdf::{Iri, Literal, RdfGraph, Term, Triple};
use crate::vocab;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TranslateNote {
    /// Frame missing from the roleset map; its ARG edges fall back to `pblr:F.argN`.
    UnknownFrame(String),
    /// Role mapped to `dul:associatedWith` for lack of a specific rule.
    FallbackRole {
        individual: Iri,
        role: String,
    },
    /// Class whose lemma has no alignment entry.
    Unaligned(Iri),
    AmbiguousMention {
        mention: String,
        candidates: Vec<Iri>,
    },
}

impl fmt::Display for TranslateNote {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TranslateNote::UnknownFrame(frame) => write!(f, "unknown frame {frame}; ARG roles use the argN fallback"),
            TranslateNote::FallbackRole { individual, role } => {
                write!(f, "role {role} on {} mapped to dul:associatedWith", individual.local_name())
            }
            TranslateNote::Unaligned(class) => write!(f, "no alignment for {}", class.as_str()),
            TranslateNote::AmbiguousMention { mention, candidates } => {
                let names: Vec<&str> = candidates.iter().map(Iri::local_name).collect();
                write!(f, "mention {mention:?} matches {}; not linked", names.join(", "))
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct Translation {
    pub graph: RdfGraph,
    pub notes: Vec<TranslateNote>,
}

/// Non-core AMR roles with a VerbNet counterpart, unless a frame's alignment
/// entry overrides them.
const DEFAULT_VN_ROLES: [(&str, &str); 8] = [
    (":location", "Location"),
    (":time", "Time"),
    (":instrument", "Instrument"),
    (":beneficiary", "Beneficiary"),
    (":destination", "Destination"),
    (":source", "Source"),
    (":topic", "Topic"),
    (":duration", "Duration"),
];

fn iri(value: String) -> Iri {
    Iri::new(value).expect("minted IRIs are well-formed")
}

fn fred(local: &str) -> Iri {
    iri(format!("{}{local}", vocab::FRED))
}

/// `ice-cream` → `IceCream`.
pub fn class_name(concept: &str) -> String {
    concept
        .split(['-', '_', ' '])
        .filter(|part| !part.is_empty())
        .map(|part| {
            let mut chars = part.chars();
            chars.next().map(|c| c.to_uppercase().chain(chars).collect::<String>()).unwrap_or_default()
        })
        .collect()
}

fn constant_literal(constant: &Constant) -> Literal {
    match constant {
        Constant::Number(n) if n.parse::<i64>().is_ok() => {
            Literal::typed(n.clone(), iri(vocab::XSD_INTEGER.to_string())).expect("integer lexical")
        }
        Constant::Number(n) => Literal::typed(n.clone(), iri(vocab::XSD_DECIMAL.to_string())).expect("decimal lexical"),
        Constant::String(s) | Constant::Symbol(s) => Literal::simple(s.clone()),
    }
}

fn is_op_role(role: &str) -> bool {
    role.strip_prefix(":op").is_some_and(|n| !n.is_empty() && n.chars().all(|c| c.is_ascii_digit()))
}

fn op_index(role: &str) -> u32 {
    role[3..].parse().unwrap_or(u32::MAX)
}

fn arg_index(role: &str) -> Option<u32> {
    role.strip_prefix(":ARG")?.parse().ok()
}

/// Translates with the default VerbNet role table.
pub fn translate(amr: &AmrGraph, rolesets: &RolesetMap) -> Translation {
    translate_with(amr, rolesets, &AlignmentMap::new())
}

/// Translates an AMR graph. Frame entries of `alignments` may override the
/// VerbNet predicate used for non-core roles of that frame.
pub fn translate_with(amr: &AmrGraph, rolesets: &RolesetMap, alignments: &AlignmentMap) -> Translation {
    let amr = amr.normalize_inverses();
    let mut graph = RdfGraph::standard();
    let mut notes = Vec::new();

    let mut counters: HashMap<String, usize> = HashMap::new();
    let mut individuals: HashMap<&str, Iri> = HashMap::new();
    for var in amr.traversal_order() {
        let concept = amr.concept(var).expect("traversal visits declared nodes");
        let (stem, class) = match frame_lemma(concept) {
            Some(lemma) => (lemma.to_string(), iri(format!("{}{concept}", vocab::PBRS))),
            None => (concept.to_string(), fred(&class_name(concept))),
        };
        let k = counters.entry(stem.clone()).or_insert(0);
        *k += 1;
        let individual = fred(&format!("{stem}_{k}"));
        graph.insert(Triple::new_unchecked(
            Term::Iri(individual.clone()),
            iri(vocab::RDF_TYPE.into()),
            Term::Iri(class),
        ));
        individuals.insert(var, individual);
    }

    let mut unknown_frames = Vec::new();
    let mut labels: BTreeMap<&str, Vec<(u32, String)>> = BTreeMap::new();
    let name_nodes: HashMap<&str, &str> = amr
        .edges()
        .iter()
        .filter(|e| e.role == ":name")
        .filter_map(|e| e.target.as_node().map(|t| (t, e.source.as_str())))
        .collect();

    for edge in amr.edges() {
        let subject = &individuals[edge.source.as_str()];
        let concept = amr.concept(&edge.source).unwrap_or_default();
        let frame = frame_lemma(concept).map(|_| concept);

        if is_op_role(&edge.role) {
            if let AmrTarget::Constant(c) = &edge.target {
                labels.entry(edge.source.as_str()).or_default().push((op_index(&edge.role), c.text().to_string()));
                continue;
            }
        }
        if edge.role == ":name" && edge.target.as_node().is_some() {
            continue;
        }

        let predicate = match (arg_index(&edge.role), frame) {
            (Some(n), Some(frame)) => match rolesets.role(frame, n) {
                Some(role) => Some(iri(format!("{}{frame}.{role}", vocab::PBLR))),
                None => {
                    if !rolesets.contains_frame(frame) && !unknown_frames.contains(&frame) {
                        unknown_frames.push(frame);
                    }
                    Some(iri(format!("{}{frame}.arg{n}", vocab::PBLR)))
                }
            },
            _ if edge.role == ":mod" => Some(iri(vocab::DUL_HAS_QUALITY.into())),
            _ => frame
                .and_then(|f| alignments.get(f))
                .and_then(|entry| entry.vn_roles.get(&edge.role).cloned())
                .or_else(|| {
                    DEFAULT_VN_ROLES
                        .iter()
                        .find(|(role, _)| *role == edge.role)
                        .map(|(_, local)| iri(format!("{}{local}", vocab::VN_ROLE)))
                }),
        };
        let predicate = predicate.unwrap_or_else(|| {
            notes.push(TranslateNote::FallbackRole { individual: subject.clone(), role: edge.role.clone() });
            iri(vocab::DUL_ASSOCIATED_WITH.into())
        });
        let object = match &edge.target {
            AmrTarget::Node(v) => Term::Iri(individuals[v.as_str()].clone()),
            AmrTarget::Constant(c) => Term::Literal(constant_literal(c)),
        };
        graph.insert(Triple::new_unchecked(Term::Iri(subject.clone()), predicate, object));
    }

    let label_predicate = iri(vocab::RDFS_LABEL.into());
    for (var, mut parts) in labels {
        parts.sort();
        let text = parts.into_iter().map(|(_, p)| p).collect::<Vec<_>>().join(" ");
        let bearer = name_nodes.get(var).copied().unwrap_or(var);
        graph.insert(Triple::new_unchecked(
            Term::Iri(individuals[bearer].clone()),
            label_predicate.clone(),
            Term::Literal(Literal::simple(text)),
        ));
    }

    notes.splice(0..0, unknown_frames.into_iter().map(|f| TranslateNote::UnknownFrame(f.to_string())));
    Translation { graph, notes }
}

/// Alignment lookup keys for a class local name: `IceCream` → `icecream`, `ice-cream`, `ice_cream`, `ice cream`.
fn lookup_keys(local: &str) -> Vec<String> {
    let folded = fold_name(local);
    let mut keys = vec![local.to_lowercase(), folded.replace(' ', "-"), folded.replace(' ', "_"), folded];
    keys.dedup();
    keys
}

/// Adds `owl:equivalentClass` to the synset and `rdfs:subClassOf` to supersenses
/// and DOLCE types for every `fred:` noun class and `pbrs:` frame class found in
/// the map.
pub fn align(graph: &RdfGraph, alignments: &AlignmentMap) -> Translation {
    let mut out = graph.clone();
    let mut notes = Vec::new();
    let mut classes: Vec<&Iri> = graph
        .with_predicate(vocab::RDF_TYPE)
        .filter_map(|t| t.object.as_iri())
        .filter(|c| c.starts_with(vocab::FRED) || c.starts_with(vocab::PBRS))
        .collect();
    classes.sort();
    classes.dedup();
    for class in classes {
        let entry = lookup_keys(class.local_name()).iter().find_map(|k| alignments.get(k));
        let Some(entry) = entry else {
            notes.push(TranslateNote::Unaligned(class.clone()));
            continue;
        };
        let subject = Term::Iri(class.clone());
        if let Some(synset) = &entry.synset {
            out.insert(Triple::new_unchecked(
                subject.clone(),
                iri(vocab::OWL_EQUIVALENT_CLASS.into()),
                Term::Iri(synset.clone()),
            ));
        }
        for parent in entry.supersenses.iter().chain(&entry.dolce) {
            out.insert(Triple::new_unchecked(
                subject.clone(),
                iri(vocab::RDFS_SUBCLASS_OF.into()),
                Term::Iri(parent.clone()),
            ));
        }
    }
    if !notes.is_empty() {
        log::warn!("{} classes without alignment", notes.len());
    }
    Translation { graph: out, notes }
}

/// Adds `owl:sameAs` for each table mention matching exactly one individual.
pub fn link_entities(graph: &RdfGraph, links: &LinkTable) -> Translation {
    let mut out = graph.clone();
    let mut notes = Vec::new();
    for (mention, target) in links.iter() {
        match individuals_matching(graph, mention).as_slice() {
            [] => {}
            [one] => {
                out.insert(Triple::new_unchecked(
                    Term::Iri((*one).clone()),
                    iri(vocab::OWL_SAME_AS.into()),
                    Term::Iri(target.clone()),
                ));
            }
            many => notes.push(TranslateNote::AmbiguousMention {
                mention: mention.to_string(),
                candidates: many.iter().map(|c| (*c).clone()).collect(),
            }),
        }
    }
    Translation { graph: out, notes }
}

/// The whole text-side stage: translation, alignment, then entity linking.
pub fn build_base_graph(
    amr: &AmrGraph,
    rolesets: &RolesetMap,
    alignments: &AlignmentMap,
    links: &LinkTable,
) -> Translation {
    let translated = translate_with(amr, rolesets, alignments);
    let aligned = align(&translated.graph, alignments);
    let linked = link_entities(&aligned.graph, links);
    let notes = translated.notes.into_iter().chain(aligned.notes).chain(linked.notes).collect();
    Translation { graph: linked.graph, notes }
}
