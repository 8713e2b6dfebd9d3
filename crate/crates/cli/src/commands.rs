use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::json;
use xkg_core::agreement::{build_report, load_ratings, render_report, AgreementOptions, AgreementReport};
use xkg_core::amr::parse_penman;
use xkg_core::enrichment::{
    image_media_type, run_all, CompletionBackend, Enricher, GenerationSettings, Heuristic, HeuristicSpec, HttpBackend,
    MockBackend, RunOptions, RunOutcome,
};
use xkg_core::linking::match_segments;
use xkg_core::rdf::{diff, parse_turtle_with, serialize_turtle, Iri, ParseOptions, PrefixTable, RdfGraph};
use xkg_core::translate::build_base_graph;
use xkg_core::validation::{
    check_anchoring, check_consistency, has_errors, infer_precedence, lint, profile, render_profile_table, Diagnostic,
    GraphProfile, MiniOntology, Severity,
};

use crate::config::{read_text, CliError, PipelineConfig, Resources};

pub const DESCRIPTION_FILE: &str = "description.txt";
pub const BASE_FILE: &str = "base-graph.ttl";
pub const BASE_PROFILE_FILE: &str = "base-profile.json";
pub const MERGED_FILE: &str = "xkg-merged.ttl";
pub const DIAGNOSTICS_FILE: &str = "diagnostics.json";
pub const VALIDATION_FILE: &str = "validation.json";
pub const AGREEMENT_JSON: &str = "agreement.json";
pub const AGREEMENT_TABLE: &str = "agreement.txt";

const DESCRIBE_PROMPT: &str = "Describe this picture in natural language in a single detailed paragraph: \
the people, objects, setting, actions, emotions and any symbolic or cultural meaning.";

pub fn xkg_file(h: Heuristic) -> String {
    format!("xkg-{}.ttl", h.name())
}

/// Whether a command found ERROR diagnostics (exit code 1) or not.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Clean,
    Errors,
}

impl Outcome {
    fn from_flag(errors: bool) -> Self {
        if errors {
            Outcome::Errors
        } else {
            Outcome::Clean
        }
    }

    fn and(self, other: Outcome) -> Outcome {
        Outcome::from_flag(self == Outcome::Errors || other == Outcome::Errors)
    }
}

/// Files are collected first and written once every computation succeeded.
#[derive(Default)]
pub struct Outputs {
    files: Vec<(PathBuf, Vec<u8>)>,
}

impl Outputs {
    pub fn add(&mut self, path: PathBuf, content: impl Into<Vec<u8>>) {
        self.files.push((path, content.into()));
    }

    pub fn write(self) -> Result<(), CliError> {
        for (path, content) in self.files {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                fs::create_dir_all(parent).map_err(|source| CliError::Io { path: parent.to_path_buf(), source })?;
            }
            fs::write(&path, content).map_err(|source| CliError::Io { path, source })?;
        }
        Ok(())
    }
}

fn to_json(value: &impl Serialize) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    text
}

pub fn load_graph(path: &Path) -> Result<RdfGraph, CliError> {
    let options = ParseOptions { preloaded: PrefixTable::standard(), lenient_prefixes: true, ..Default::default() };
    parse_turtle_with(&read_text(path)?, &options).map_err(|e| CliError::input(path, e))
}

pub enum DescribeInput<'a> {
    Text(&'a Path),
    Image(&'a Path),
}

/// Text passes through untouched; images go to the multimodal endpoint, or with
/// a mock to `<mock_dir>/<image stem>.txt`.
pub fn describe(
    config: &PipelineConfig,
    input: DescribeInput,
    mock: Option<Option<&Path>>,
) -> Result<String, CliError> {
    match input {
        DescribeInput::Text(path) => read_text(path),
        DescribeInput::Image(path) => {
            let media_type = image_media_type(path)?;
            if let Some(flag) = mock {
                let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default();
                return read_text(&config.mock_dir(flag)?.join(format!("{stem}.txt")));
            }
            let backend = config
                .describe_backend
                .as_ref()
                .or(config.backend.as_ref())
                .ok_or_else(|| CliError::Config("no multimodal endpoint configured for image input".into()))?;
            let image = fs::read(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
            Ok(HttpBackend::new(backend.clone()).describe_image(
                &image,
                media_type,
                DESCRIBE_PROMPT,
                backend.max_tokens,
            )?)
        }
    }
}

pub struct BaseStage {
    pub graph: RdfGraph,
    pub profile: GraphProfile,
    pub notes: Vec<String>,
}

pub fn base(resources: &Resources, amr_path: &Path) -> Result<BaseStage, CliError> {
    let amr = parse_penman(&read_text(amr_path)?).map_err(|e| CliError::input(amr_path, e))?;
    let built = build_base_graph(&amr, &resources.rolesets, &resources.alignments, &resources.links);
    let mut notes: Vec<String> = built.notes.iter().map(ToString::to_string).collect();
    let linked = match_segments(&built.graph, &resources.segments);
    notes.extend(linked.notes.iter().map(ToString::to_string));
    let profile = profile(&linked.graph, None);
    Ok(BaseStage { graph: linked.graph, profile, notes })
}

pub fn base_outputs(stage: &BaseStage, out: &Path, outputs: &mut Outputs) {
    outputs.add(out.join(BASE_FILE), serialize_turtle(&stage.graph));
    outputs.add(out.join(BASE_PROFILE_FILE), to_json(&stage.profile));
}

/// `all` or registry names (matched leniently); registry order, no repeats.
pub fn select_heuristics(names: &[String]) -> Result<Vec<HeuristicSpec>, CliError> {
    let mut chosen = Vec::new();
    for name in names {
        if name.eq_ignore_ascii_case("all") {
            chosen.extend(Heuristic::ALL);
        } else {
            chosen
                .push(Heuristic::lookup(name).ok_or_else(|| CliError::Config(format!("unknown heuristic {name:?}")))?);
        }
    }
    if names.is_empty() {
        chosen.extend(Heuristic::ALL);
    }
    chosen.sort_by_key(|h| h.index());
    chosen.dedup();
    Ok(chosen.into_iter().map(HeuristicSpec::new).collect())
}

pub fn enrich(
    config: &PipelineConfig,
    resources: &Resources,
    base: &RdfGraph,
    specs: &[HeuristicSpec],
    mock: Option<Option<&Path>>,
    force_merge: bool,
) -> Result<RunOutcome, CliError> {
    if base.is_empty() {
        return Err(CliError::Config("the base graph is empty".into()));
    }
    let (backend, settings, max_concurrency): (Box<dyn CompletionBackend>, GenerationSettings, usize) = match mock {
        Some(flag) => {
            let dir = config.mock_dir(flag)?;
            let mock = MockBackend::from_dir(&dir).map_err(|source| CliError::Io { path: dir, source })?;
            let settings = config.backend.as_ref().map(|b| b.settings()).unwrap_or_default();
            (Box::new(mock), settings, RunOptions::default().max_concurrency)
        }
        None => {
            let backend =
                config.backend.clone().ok_or_else(|| CliError::Config("no completion backend configured".into()))?;
            let (settings, concurrency) = (backend.settings(), backend.max_concurrency);
            (Box::new(HttpBackend::new(backend)), settings, concurrency)
        }
    };
    let enricher = Enricher { backend: backend.as_ref(), templates: &resources.templates, settings };
    Ok(run_all(base, specs, &enricher, RunOptions { max_concurrency, force_merge }))
}

pub fn enrich_outputs(outcome: &RunOutcome, force_merge: bool, out: &Path, outputs: &mut Outputs) -> Outcome {
    let mut entries = Vec::new();
    for result in &outcome.results {
        outputs.add(out.join(xkg_file(result.heuristic)), serialize_turtle(&result.xkg));
        entries.push(json!({
            "heuristic": result.heuristic.name(),
            "added": result.added.len(),
            "repaired": result.repaired,
            "quarantined": outcome.quarantined.contains(&result.heuristic),
            "diagnostics": result.diagnostics,
        }));
    }
    outputs.add(out.join(MERGED_FILE), serialize_turtle(&outcome.merged));
    let quarantined: Vec<&str> = outcome.quarantined.iter().map(|h| h.name()).collect();
    outputs.add(
        out.join(DIAGNOSTICS_FILE),
        to_json(&json!({
            "force_merge": force_merge,
            "merged_triples": outcome.merged.len(),
            "quarantined": quarantined,
            "heuristics": entries,
        })),
    );
    Outcome::from_flag(!outcome.quarantined.is_empty())
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub diagnostics: Vec<Diagnostic>,
    pub asserted_precedence: Vec<(String, String)>,
    pub inferred_precedence: Vec<(String, String)>,
    pub profile: GraphProfile,
}

impl ValidationReport {
    pub fn has_errors(&self) -> bool {
        has_errors(&self.diagnostics)
    }

    pub fn render(&self, name: &str) -> String {
        let mut out = String::new();
        let count = |s: Severity| self.diagnostics.iter().filter(|d| d.severity == s).count();
        out.push_str(&format!(
            "{} error(s), {} warning(s), {} info\n",
            count(Severity::Error),
            count(Severity::Warn),
            count(Severity::Info)
        ));
        for d in self.diagnostics.iter().filter(|d| d.severity != Severity::Info) {
            out.push_str(&format!("{d}\n"));
        }
        if !self.inferred_precedence.is_empty() {
            out.push_str("\nInferred precedence:\n");
            for (a, b) in &self.inferred_precedence {
                out.push_str(&format!("  {a} precedes {b}\n"));
            }
        }
        out.push('\n');
        out.push_str(&render_profile_table(&[(name.to_string(), self.profile)]));
        out
    }
}

fn short(graph: &RdfGraph, iri: &Iri) -> String {
    graph.prefixes().contract(iri).unwrap_or_else(|| format!("<{}>", iri.as_str()))
}

/// Lint, consistency against the mini-ontology, precedence closure and the
/// profile. With a base, anchoring of the difference is checked and the profile
/// covers the difference only.
pub fn validate(graph: &RdfGraph, base: Option<&RdfGraph>, ontology: &MiniOntology) -> ValidationReport {
    let mut diagnostics = Vec::new();
    if let Some(base) = base {
        diagnostics.extend(check_anchoring(base, &diff(graph, base)));
    }
    diagnostics.extend(lint(graph));
    diagnostics.extend(check_consistency(graph, ontology));
    let precedence = infer_precedence(graph);
    diagnostics.extend(precedence.diagnostics.iter().cloned());
    let pair = |(a, b): &(Iri, Iri)| (short(graph, a), short(graph, b));
    ValidationReport {
        diagnostics,
        asserted_precedence: precedence.asserted.iter().map(pair).collect(),
        inferred_precedence: precedence.inferred().map(pair).collect(),
        profile: profile(graph, base),
    }
}

pub fn validate_outputs(report: &ValidationReport, out: &Path, outputs: &mut Outputs) -> Outcome {
    outputs.add(out.join(VALIDATION_FILE), to_json(report));
    Outcome::from_flag(report.has_errors())
}

pub fn agree(ratings: &Path, options: AgreementOptions) -> Result<AgreementReport, CliError> {
    let matrix = load_ratings(ratings)?;
    Ok(build_report(&matrix, options))
}

pub fn agree_outputs(report: &AgreementReport, out: &Path, outputs: &mut Outputs) -> String {
    let table = render_report(report);
    outputs.add(out.join(AGREEMENT_JSON), to_json(report));
    outputs.add(out.join(AGREEMENT_TABLE), table.clone());
    table
}

pub struct RunInputs<'a> {
    pub description: DescribeInput<'a>,
    /// AMR for the description, from an external text-to-AMR parser.
    pub amr: &'a Path,
    pub heuristics: &'a [HeuristicSpec],
    pub mock: Option<Option<&'a Path>>,
    pub force_merge: bool,
}

/// Description, base graph, enrichment and validation of the merged graph.
pub fn run(
    config: &PipelineConfig,
    inputs: RunInputs,
    out: &Path,
    outputs: &mut Outputs,
) -> Result<(Outcome, String), CliError> {
    let resources = config.resources()?;
    let description = describe(config, inputs.description, inputs.mock)?;
    outputs.add(out.join(DESCRIPTION_FILE), description);
    let stage = base(&resources, inputs.amr)?;
    base_outputs(&stage, out, outputs);
    let outcome = enrich(config, &resources, &stage.graph, inputs.heuristics, inputs.mock, inputs.force_merge)?;
    let enrich_status = enrich_outputs(&outcome, inputs.force_merge, out, outputs);
    let report = validate(&outcome.merged, Some(&stage.graph), &resources.ontology);
    let validate_status = validate_outputs(&report, out, outputs);
    let mut summary = String::new();
    for result in &outcome.results {
        let state = if outcome.quarantined.contains(&result.heuristic) { "quarantined" } else { "merged" };
        summary.push_str(&format!("{:<28} {:>4} added  {state}\n", result.heuristic.name(), result.added.len()));
    }
    summary.push('\n');
    summary.push_str(&report.render("XKG (merged)"));
    Ok((enrich_status.and(validate_status), summary))
}
