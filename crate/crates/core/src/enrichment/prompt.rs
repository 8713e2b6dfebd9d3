use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::Serialize;

use super::{EnrichError, Heuristic, HeuristicSpec};
use crate::rdf::{serialize_turtle, RdfGraph};

pub const GRAPH_PLACEHOLDER: &str = "{{graph}}";
const PREFIX_PLACEHOLDER: &str = "{{prefix}}";
const NAMESPACE_PLACEHOLDER: &str = "{{namespace}}";
const SYSTEM_FILE: &str = "system.txt";

macro_rules! builtin_templates {
    ($($name:literal),* $(,)?) => {
        [$(($name, include_str!(concat!("../../resources/prompts/", $name, ".txt")))),*]
    };
}

const BUILTIN: [(&str, &str); 11] = builtin_templates!(
    "Presuppositions",
    "ConversationalImplicatures",
    "FactualImpact",
    "ImageSchemas",
    "MetonymicCoercion",
    "MoralValueCoercion",
    "SymbolicCoercion",
    "EventSequences",
    "CausalRelations",
    "ImpliedFutureEvents",
    "PotentialNonEvents",
);

/// The shared system prompt plus one refinement template per heuristic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PromptTemplates {
    system: String,
    templates: BTreeMap<Heuristic, String>,
}

impl PromptTemplates {
    pub fn builtin() -> Self {
        let templates = BUILTIN
            .iter()
            .map(|(name, text)| (name.parse::<Heuristic>().expect("builtin names are registered"), text.to_string()))
            .collect();
        PromptTemplates { system: include_str!("../../resources/prompts/system.txt").to_string(), templates }
    }

    /// Reads `system.txt` and `<Heuristic>.txt` files. Missing heuristic files are
    /// only reported when that heuristic is prompted.
    pub fn from_dir(dir: &Path) -> Result<Self, EnrichError> {
        let read = |name: &str| fs::read_to_string(dir.join(name));
        let system =
            read(SYSTEM_FILE).map_err(|_| EnrichError::MissingTemplate(dir.join(SYSTEM_FILE).display().to_string()))?;
        let templates =
            Heuristic::ALL.into_iter().filter_map(|h| read(&h.template_file()).ok().map(|text| (h, text))).collect();
        Ok(PromptTemplates { system, templates })
    }

    pub fn system(&self) -> &str {
        &self.system
    }

    pub fn template(&self, heuristic: Heuristic) -> Option<&str> {
        self.templates.get(&heuristic).map(String::as_str)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GenerationSettings {
    pub max_tokens: u32,
    pub temperature: f64,
}

impl Default for GenerationSettings {
    fn default() -> Self {
        GenerationSettings { max_tokens: 4096, temperature: 0.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PromptRequest {
    pub heuristic: Heuristic,
    pub system_text: String,
    pub user_text: String,
    pub max_tokens: u32,
    pub temperature: f64,
}

/// Fills the heuristic's template with the deterministic Turtle serialization of
/// `base` and the heuristic's namespace.
pub fn assemble_prompt(
    base: &RdfGraph,
    spec: &HeuristicSpec,
    templates: &PromptTemplates,
    settings: GenerationSettings,
) -> Result<PromptRequest, EnrichError> {
    let name = spec.heuristic.name().to_string();
    let template = templates.template(spec.heuristic).ok_or_else(|| EnrichError::MissingTemplate(name.clone()))?;
    if !template.contains(GRAPH_PLACEHOLDER) {
        return Err(EnrichError::MissingPlaceholder(name));
    }
    let user_text = template
        .replace(PREFIX_PLACEHOLDER, spec.heuristic.prefix())
        .replace(NAMESPACE_PLACEHOLDER, spec.namespace.as_str())
        .replace(GRAPH_PLACEHOLDER, &serialize_turtle(base));
    Ok(PromptRequest {
        heuristic: spec.heuristic,
        system_text: templates.system.clone(),
        user_text,
        max_tokens: settings.max_tokens,
        temperature: settings.temperature,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_builtin_template_has_the_graph_slot() {
        let t = PromptTemplates::builtin();
        for h in Heuristic::ALL {
            assert!(t.template(h).unwrap().contains(GRAPH_PLACEHOLDER), "{h}");
        }
        assert!(t.system().contains("Turtle only"));
    }

    #[test]
    fn empty_graph_fills_prefixes_only() {
        let base = RdfGraph::standard();
        let req = assemble_prompt(
            &base,
            &HeuristicSpec::new(Heuristic::Presuppositions),
            &PromptTemplates::builtin(),
            Default::default(),
        )
        .unwrap();
        assert!(req.user_text.contains(&serialize_turtle(&base)));
        assert!(!req.user_text.contains(GRAPH_PLACEHOLDER));
        assert!(req.user_text.contains("presup: <https://w3id.org/xkg/presup/>"));
    }

    #[test]
    fn missing_template_and_placeholder() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("system.txt"), "sys").unwrap();
        fs::write(dir.path().join("FactualImpact.txt"), "no slot here").unwrap();
        let t = PromptTemplates::from_dir(dir.path()).unwrap();
        let base = RdfGraph::standard();
        let err = assemble_prompt(&base, &HeuristicSpec::new(Heuristic::FactualImpact), &t, Default::default());
        assert!(matches!(err, Err(EnrichError::MissingPlaceholder(_))));
        let err = assemble_prompt(&base, &HeuristicSpec::new(Heuristic::EventSequences), &t, Default::default());
        assert!(matches!(err, Err(EnrichError::MissingTemplate(_))));
    }
}
