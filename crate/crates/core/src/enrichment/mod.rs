//! LLM-driven enrichment: prompt assembly per heuristic, completion backends,
//! Turtle extraction and the batch orchestrator.

mod backend;
mod extract;
mod prompt;
mod registry;
mod run;

use thiserror::Error;

pub use backend::{
    image_media_type, ApiStyle, BackendConfig, BackendError, CompletionBackend, HttpBackend, MockBackend,
};
pub use extract::{extract_turtle, Extracted};
pub use prompt::{assemble_prompt, GenerationSettings, PromptRequest, PromptTemplates, GRAPH_PLACEHOLDER};
pub use registry::{registry, Heuristic, HeuristicSpec};
pub use run::{run_all, run_heuristic, Enricher, EnrichmentResult, RunOptions, RunOutcome};

use crate::rdf::RdfError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnrichError {
    #[error("no prompt template for {0}")]
    MissingTemplate(String),
    #[error("template for {0} lacks the graph placeholder")]
    MissingPlaceholder(String),
    #[error(transparent)]
    Backend(#[from] BackendError),
    #[error("no Turtle found in the response")]
    NoTurtleFound,
    #[error("response is not valid Turtle: {0}")]
    Syntax(RdfError),
}
