use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;

use serde::Serialize;

use super::{
    assemble_prompt, extract_turtle, CompletionBackend, GenerationSettings, Heuristic, HeuristicSpec, PromptTemplates,
};
use crate::rdf::{diff, PrefixTable, RdfGraph};
use crate::validation::{check_anchoring, has_errors, lint, Code, Diagnostic};

/// Everything one enrichment stage needs besides the base graph.
pub struct Enricher<'a> {
    pub backend: &'a dyn CompletionBackend,
    pub templates: &'a PromptTemplates,
    pub settings: GenerationSettings,
}

#[derive(Debug, Clone, Serialize)]
pub struct EnrichmentResult {
    pub heuristic: Heuristic,
    /// Triples absent from the base.
    #[serde(skip)]
    pub added: RdfGraph,
    /// Base plus `added`.
    #[serde(skip)]
    pub xkg: RdfGraph,
    pub diagnostics: Vec<Diagnostic>,
    #[serde(skip)]
    pub raw_response: Option<String>,
    pub repaired: bool,
}

impl EnrichmentResult {
    fn failed(
        base: &RdfGraph,
        heuristic: Heuristic,
        code: Code,
        message: String,
        raw_response: Option<String>,
    ) -> Self {
        EnrichmentResult {
            heuristic,
            added: RdfGraph::new(base.prefixes().clone()),
            xkg: base.clone(),
            diagnostics: vec![Diagnostic::new(code, None, format!("{heuristic}: {message}"))],
            raw_response,
            repaired: false,
        }
    }

    pub fn has_errors(&self) -> bool {
        has_errors(&self.diagnostics)
    }
}

/// Base bindings win; response labels are added where they do not clash.
fn combined_prefixes(base: &PrefixTable, extra: &PrefixTable) -> PrefixTable {
    let mut out = base.clone();
    for (label, ns) in extra.iter() {
        if out.insert(label, ns.clone()).is_err() {
            log::warn!("prefix {label}: keeps its base binding, response used <{}>", ns.as_str());
        }
    }
    out
}

/// One heuristic end to end: prompt, completion, extraction, then anchoring and
/// lint checks over the new triples. Failures become diagnostics.
pub fn run_heuristic(base: &RdfGraph, spec: &HeuristicSpec, enricher: &Enricher) -> EnrichmentResult {
    let h = spec.heuristic;
    let request = match assemble_prompt(base, spec, enricher.templates, enricher.settings) {
        Ok(r) => r,
        Err(e) => return EnrichmentResult::failed(base, h, Code::BackendFailure, e.to_string(), None),
    };
    let response = match enricher.backend.complete(&request) {
        Ok(r) => r,
        Err(e) => return EnrichmentResult::failed(base, h, Code::BackendFailure, e.to_string(), None),
    };
    let extracted = match extract_turtle(&response, base.prefixes(), h) {
        Ok(x) => x,
        Err(e) => return EnrichmentResult::failed(base, h, Code::ParseFailure, e.to_string(), Some(response)),
    };
    let added_triples = diff(&extracted.graph, base);
    let mut diagnostics = check_anchoring(base, &added_triples);
    let added = RdfGraph::from_triples(extracted.graph.prefixes().clone(), added_triples);
    diagnostics.extend(lint(&added));
    let mut xkg = RdfGraph::new(combined_prefixes(base.prefixes(), added.prefixes()));
    xkg.extend(base.iter().cloned());
    xkg.extend(added.iter().cloned());
    EnrichmentResult {
        heuristic: h,
        added,
        xkg,
        diagnostics,
        raw_response: Some(response),
        repaired: extracted.repaired,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    pub max_concurrency: usize,
    /// Merge results that carry ERROR diagnostics too.
    pub force_merge: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { max_concurrency: 4, force_merge: false }
    }
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    /// In registry order, whatever order the calls finished in.
    pub results: Vec<EnrichmentResult>,
    pub merged: RdfGraph,
    /// Heuristics whose triples were kept out of `merged`.
    pub quarantined: Vec<Heuristic>,
}

/// Runs the given heuristics with at most `max_concurrency` backend calls in
/// flight and merges their additions into the base. Results with ERROR
/// diagnostics are left out of the merge unless `force_merge` is set.
pub fn run_all(base: &RdfGraph, specs: &[HeuristicSpec], enricher: &Enricher, options: RunOptions) -> RunOutcome {
    let mut ordered = specs.to_vec();
    ordered.sort_by_key(|s| s.heuristic.index());
    let slots: Vec<Mutex<Option<EnrichmentResult>>> = ordered.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let workers = options.max_concurrency.clamp(1, ordered.len().max(1));
    thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                let Some(spec) = ordered.get(i) else { break };
                let result = run_heuristic(base, spec, enricher);
                *slots[i].lock().expect("result slot") = Some(result);
            });
        }
    });
    let results: Vec<EnrichmentResult> =
        slots.into_iter().map(|s| s.into_inner().expect("result slot").expect("every slot is filled")).collect();

    let mut merged = base.clone();
    let mut quarantined = Vec::new();
    for result in &results {
        if result.has_errors() && !options.force_merge {
            if !result.added.is_empty() {
                log::warn!("{}: {} triple(s) quarantined", result.heuristic, result.added.len());
            }
            quarantined.push(result.heuristic);
            continue;
        }
        *merged.prefixes_mut() = combined_prefixes(merged.prefixes(), result.added.prefixes());
        merged.extend(result.added.iter().cloned());
    }
    RunOutcome { results, merged, quarantined }
}
