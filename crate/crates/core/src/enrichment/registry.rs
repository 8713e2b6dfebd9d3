use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::rdf::Iri;

/// The eleven knowledge heuristics, in reporting order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Heuristic {
    Presuppositions,
    ConversationalImplicatures,
    FactualImpact,
    ImageSchemas,
    MetonymicCoercion,
    MoralValueCoercion,
    SymbolicCoercion,
    EventSequences,
    CausalRelations,
    ImpliedFutureEvents,
    PotentialNonEvents,
}

const NAMESPACE_BASE: &str = "https://w3id.org/xkg/";

impl Heuristic {
    pub const ALL: [Heuristic; 11] = [
        Heuristic::Presuppositions,
        Heuristic::ConversationalImplicatures,
        Heuristic::FactualImpact,
        Heuristic::ImageSchemas,
        Heuristic::MetonymicCoercion,
        Heuristic::MoralValueCoercion,
        Heuristic::SymbolicCoercion,
        Heuristic::EventSequences,
        Heuristic::CausalRelations,
        Heuristic::ImpliedFutureEvents,
        Heuristic::PotentialNonEvents,
    ];

    /// Identifier used for file names and selectors.
    pub fn name(self) -> &'static str {
        match self {
            Heuristic::Presuppositions => "Presuppositions",
            Heuristic::ConversationalImplicatures => "ConversationalImplicatures",
            Heuristic::FactualImpact => "FactualImpact",
            Heuristic::ImageSchemas => "ImageSchemas",
            Heuristic::MetonymicCoercion => "MetonymicCoercion",
            Heuristic::MoralValueCoercion => "MoralValueCoercion",
            Heuristic::SymbolicCoercion => "SymbolicCoercion",
            Heuristic::EventSequences => "EventSequences",
            Heuristic::CausalRelations => "CausalRelations",
            Heuristic::ImpliedFutureEvents => "ImpliedFutureEvents",
            Heuristic::PotentialNonEvents => "PotentialNonEvents",
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            Heuristic::Presuppositions => "Presuppositions",
            Heuristic::ConversationalImplicatures => "Conversational Implicatures",
            Heuristic::FactualImpact => "Factual Impact",
            Heuristic::ImageSchemas => "Image Schemas",
            Heuristic::MetonymicCoercion => "Metonymic Coercion",
            Heuristic::MoralValueCoercion => "Moral Value-driven Coercion",
            Heuristic::SymbolicCoercion => "Symbolic Coercion",
            Heuristic::EventSequences => "Event Sequences",
            Heuristic::CausalRelations => "Causal Relations",
            Heuristic::ImpliedFutureEvents => "Implied Future Events",
            Heuristic::PotentialNonEvents => "Potential Non-events",
        }
    }

    /// Prefix label for the terms this heuristic mints.
    pub fn prefix(self) -> &'static str {
        match self {
            Heuristic::Presuppositions => "presup",
            Heuristic::ConversationalImplicatures => "implicature",
            Heuristic::FactualImpact => "impact",
            Heuristic::ImageSchemas => "schema",
            Heuristic::MetonymicCoercion => "metonymy",
            Heuristic::MoralValueCoercion => "moral",
            Heuristic::SymbolicCoercion => "symbol",
            Heuristic::EventSequences => "sequence",
            Heuristic::CausalRelations => "causal",
            Heuristic::ImpliedFutureEvents => "future",
            Heuristic::PotentialNonEvents => "nonevent",
        }
    }

    pub fn namespace(self) -> Iri {
        Iri::new(format!("{NAMESPACE_BASE}{}/", self.prefix())).expect("namespace IRIs are well-formed")
    }

    pub fn template_file(self) -> String {
        format!("{}.txt", self.name())
    }

    pub fn index(self) -> usize {
        Heuristic::ALL.iter().position(|h| *h == self).expect("registered")
    }

    /// Lenient lookup: case, spacing, hyphens and a trailing plural are ignored,
    /// and both identifiers and titles are accepted.
    pub fn lookup(name: &str) -> Option<Heuristic> {
        let wanted = normalize(name);
        Heuristic::ALL.into_iter().find(|h| {
            let mut forms = vec![normalize(h.name()), normalize(h.title())];
            if *h == Heuristic::PotentialNonEvents {
                forms.push("impliedpotentialnonevent".into());
            }
            forms.contains(&wanted)
        })
    }
}

fn normalize(name: &str) -> String {
    let mut s: String = name.chars().filter(|c| c.is_alphanumeric()).flat_map(char::to_lowercase).collect();
    if s.ends_with('s') {
        s.pop();
    }
    s
}

impl fmt::Display for Heuristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Heuristic {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Heuristic::lookup(s).ok_or_else(|| format!("unknown heuristic {s:?}"))
    }
}

impl Serialize for Heuristic {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

/// Registry entry: name, namespace for minted terms and prompt template file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeuristicSpec {
    pub heuristic: Heuristic,
    pub namespace: Iri,
    pub template: String,
}

impl HeuristicSpec {
    pub fn new(heuristic: Heuristic) -> Self {
        HeuristicSpec { heuristic, namespace: heuristic.namespace(), template: heuristic.template_file() }
    }
}

pub fn registry() -> Vec<HeuristicSpec> {
    Heuristic::ALL.into_iter().map(HeuristicSpec::new).collect()
}
