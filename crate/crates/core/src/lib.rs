//! Knowledge-graph construction from AMR, LLM-driven enrichment with anchoring
//! validation, logical checks and annotator-agreement statistics.

pub mod agreement;
pub mod amr;
pub mod enrichment;
pub mod linking;
pub mod rdf;
pub mod translate;
pub mod validation;
pub mod vocab;
