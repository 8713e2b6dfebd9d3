use super::{EnrichError, Heuristic};
use crate::rdf::{parse_turtle_with, ParseOptions, PrefixTable, RdfGraph};

/// Triples parsed from a model response.
#[derive(Debug, Clone)]
pub struct Extracted {
    pub graph: RdfGraph,
    /// Whether prose lines had to be dropped before the text parsed.
    pub repaired: bool,
}

const TURTLE_FENCES: [&str; 5] = ["", "turtle", "ttl", "rdf", "n3"];

/// Bodies of fenced code blocks tagged as Turtle (or untagged). An unterminated
/// fence runs to the end of the text.
fn fenced_blocks(response: &str) -> Option<String> {
    let mut blocks = Vec::new();
    let mut current: Option<(bool, Vec<&str>)> = None;
    for line in response.lines() {
        let trimmed = line.trim_start();
        match (&mut current, trimmed.strip_prefix("```")) {
            (None, Some(info)) => {
                let wanted = TURTLE_FENCES.contains(&info.trim().to_ascii_lowercase().as_str());
                current = Some((wanted, Vec::new()));
            }
            (Some(_), Some(_)) => {
                let (wanted, lines) = current.take().unwrap();
                if wanted {
                    blocks.push(lines.join("\n"));
                }
            }
            (Some((_, lines)), None) => lines.push(line),
            (None, None) => {}
        }
    }
    if let Some((true, lines)) = current {
        blocks.push(lines.join("\n"));
    }
    (!blocks.is_empty()).then(|| blocks.join("\n"))
}

fn without_strings(line: &str) -> String {
    let mut out = String::with_capacity(line.len());
    let mut quote: Option<char> = None;
    let mut escaped = false;
    for c in line.chars() {
        match quote {
            Some(q) => {
                if escaped {
                    escaped = false;
                } else if c == '\\' {
                    escaped = true;
                } else if c == q {
                    quote = None;
                    out.push(' ');
                }
            }
            None if c == '"' || c == '\'' => quote = Some(c),
            None => out.push(c),
        }
    }
    out
}

fn is_directive(trimmed: &str) -> bool {
    let lower = trimmed.to_ascii_lowercase();
    lower.starts_with("@prefix")
        || lower.starts_with("@base")
        || lower.starts_with("prefix ")
        || lower.starts_with("base ")
}

/// A line is kept when it carries some Turtle token and fewer than two bare
/// English-looking words outside string literals.
fn looks_like_turtle(line: &str) -> bool {
    let trimmed = line.trim();
    if trimmed.is_empty() || trimmed.starts_with('#') || is_directive(trimmed) {
        return true;
    }
    let code = without_strings(trimmed);
    let mut bare = 0;
    let mut turtle = line.contains('"');
    for token in code.split_whitespace() {
        let word = token.trim_end_matches(['.', ',', ';', ':', '!', '?']);
        if token.contains(':') && !token.ends_with(':')
            || token.starts_with('<')
            || token.starts_with('_')
            || matches!(token, "." | ";" | "," | "[" | "]" | "(" | ")" | "a")
        {
            turtle = true;
        } else if word.chars().all(char::is_alphabetic) && !word.is_empty() && !matches!(word, "true" | "false") {
            bare += 1;
        } else if word.chars().any(|c| c.is_ascii_digit()) {
            turtle = true;
        }
    }
    turtle && bare < 2
}

fn repair(body: &str) -> String {
    body.lines().filter(|l| looks_like_turtle(l)).collect::<Vec<_>>().join("\n")
}

fn has_statements(body: &str) -> bool {
    body.lines().map(str::trim).any(|l| !l.is_empty() && !l.starts_with('#') && !is_directive(l))
}

/// Parses the Turtle in a model response. Fenced blocks win over the bare text.
/// The base prefixes and the heuristic's own prefix are in scope; labels the
/// response uses without declaring are bound to placeholder namespaces. When the
/// first parse fails, prose lines are dropped once and the rest is parsed again.
pub fn extract_turtle(
    response: &str,
    base_prefixes: &PrefixTable,
    heuristic: Heuristic,
) -> Result<Extracted, EnrichError> {
    let body = fenced_blocks(response).unwrap_or_else(|| response.to_string());
    if !has_statements(&body) {
        return Err(EnrichError::NoTurtleFound);
    }
    let mut preloaded = base_prefixes.clone();
    if preloaded.get(heuristic.prefix()).is_none() {
        preloaded.insert(heuristic.prefix(), heuristic.namespace()).expect("registry prefixes are valid labels");
    }
    let options =
        ParseOptions { preloaded, lenient_prefixes: true, blank_prefix: Some(format!("{}_b", heuristic.prefix())) };
    let finish = |graph: RdfGraph, repaired: bool| {
        if graph.is_empty() {
            Err(EnrichError::NoTurtleFound)
        } else {
            Ok(Extracted { graph, repaired })
        }
    };
    let first_error = match parse_turtle_with(&body, &options) {
        Ok(graph) => return finish(graph, false),
        Err(e) => e,
    };
    let repaired = repair(&body);
    if !has_statements(&repaired) {
        return Err(EnrichError::NoTurtleFound);
    }
    if repaired == body {
        return Err(EnrichError::Syntax(first_error));
    }
    log::debug!("dropped prose from {heuristic} response after: {first_error}");
    match parse_turtle_with(&repaired, &options) {
        Ok(graph) => finish(graph, true),
        Err(e) => Err(EnrichError::Syntax(e)),
    }
}
