//! Anchoring checks for generated triples, pitfall lints, disjointness-based
//! consistency, `dul:precedes` inference and graph statistics.

mod anchoring;
mod consistency;
mod diagnostic;
mod lint;
mod precedence;
mod profile;

pub use anchoring::{check_anchoring, floating_components};
pub use consistency::{check_consistency, MiniOntology, OntologyError};
pub use diagnostic::{has_errors, Code, Diagnostic, Severity};
pub use lint::lint;
pub use precedence::{infer_precedence, precedes_pairs, Precedence};
pub use profile::{
    is_structural, new_datatype_properties, profile, render_profile_table, render_table, GraphProfile, PROFILE_COLUMNS,
};
