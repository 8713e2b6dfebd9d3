//! Static resource tables standing in for the external WSD, entity-linking and
//! roleset services: PropBank rolesets, WordNet/DOLCE alignments and entity links.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use crate::rdf::{Iri, PrefixTable};

#[derive(Debug, Error)]
pub enum ResourceError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {message}")]
    Format { path: String, message: String },
}

fn format_err(path: &str, message: impl Into<String>) -> ResourceError {
    ResourceError::Format { path: path.to_string(), message: message.into() }
}

fn read(path: &Path) -> Result<String, ResourceError> {
    fs::read_to_string(path).map_err(|source| ResourceError::Io { path: path.display().to_string(), source })
}

fn is_json(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

/// Expands `label:local` through the standard prefixes, or accepts an absolute IRI
/// (optionally in angle brackets).
fn resolve_iri(value: &str, origin: &str) -> Result<Iri, ResourceError> {
    let value = value.trim();
    if let Some(inner) = value.strip_prefix('<').and_then(|v| v.strip_suffix('>')) {
        return Iri::new(inner).map_err(|e| format_err(origin, e.to_string()));
    }
    let table = PrefixTable::standard();
    if let Some((label, local)) = value.split_once(':') {
        if table.get(label).is_some() {
            return table.expand(label, local).map_err(|e| format_err(origin, e.to_string()));
        }
    }
    Iri::new(value).map_err(|e| format_err(origin, e.to_string()))
}

/// Frame id → ARG index → local role name.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RolesetMap {
    frames: BTreeMap<String, BTreeMap<u32, String>>,
}

impl RolesetMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, frame: &str, index: u32, role: &str) -> Result<(), String> {
        let valid = !role.is_empty()
            && role.chars().all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || matches!(c, '_' | '-'));
        if !valid {
            return Err(format!("role name {role:?} for {frame} must be a non-empty lowercase token"));
        }
        self.frames.entry(frame.to_string()).or_default().insert(index, role.to_string());
        Ok(())
    }

    pub fn contains_frame(&self, frame: &str) -> bool {
        self.frames.contains_key(frame)
    }

    pub fn role(&self, frame: &str, index: u32) -> Option<&str> {
        self.frames.get(frame)?.get(&index).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    /// Tab-separated `frame  ARGn  role` lines; `#` starts a comment.
    pub fn from_tsv(text: &str, origin: &str) -> Result<Self, ResourceError> {
        let mut map = Self::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = line.split('\t').map(str::trim).collect();
            let [frame, arg, role] = cols[..] else {
                return Err(format_err(origin, format!("line {}: expected 3 tab-separated columns", n + 1)));
            };
            let index = parse_arg_index(arg)
                .ok_or_else(|| format_err(origin, format!("line {}: bad ARG index {arg:?}", n + 1)))?;
            map.insert(frame, index, role).map_err(|m| format_err(origin, format!("line {}: {m}", n + 1)))?;
        }
        Ok(map)
    }

    /// `{"celebrate-01": {"ARG0": "honorer", "1": "honored"}}`
    pub fn from_json(text: &str, origin: &str) -> Result<Self, ResourceError> {
        let raw: BTreeMap<String, BTreeMap<String, String>> =
            serde_json::from_str(text).map_err(|e| format_err(origin, e.to_string()))?;
        let mut map = Self::new();
        for (frame, roles) in raw {
            for (arg, role) in roles {
                let index =
                    parse_arg_index(&arg).ok_or_else(|| format_err(origin, format!("bad ARG index {arg:?}")))?;
                map.insert(&frame, index, &role).map_err(|m| format_err(origin, m))?;
            }
        }
        Ok(map)
    }

    pub fn load(path: &Path) -> Result<Self, ResourceError> {
        let text = read(path)?;
        let origin = path.display().to_string();
        if is_json(path) {
            Self::from_json(&text, &origin)
        } else {
            Self::from_tsv(&text, &origin)
        }
    }

    pub fn builtin() -> Self {
        Self::from_tsv(include_str!("../../resources/rolesets.tsv"), "builtin rolesets")
            .expect("builtin rolesets are valid")
    }
}

fn parse_arg_index(arg: &str) -> Option<u32> {
    let digits = arg.strip_prefix(":").unwrap_or(arg);
    let digits = digits.strip_prefix("ARG").or_else(|| digits.strip_prefix("arg")).unwrap_or(digits);
    digits.parse().ok()
}

/// WordNet, supersense, DOLCE and VerbNet alignment for one lemma or frame.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AlignmentEntry {
    pub synset: Option<Iri>,
    pub supersenses: Vec<Iri>,
    pub dolce: Vec<Iri>,
    /// Non-core AMR role (`:location`) → VerbNet role predicate.
    pub vn_roles: BTreeMap<String, Iri>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAlignment {
    #[serde(default)]
    synset: Option<String>,
    #[serde(default)]
    supersenses: Vec<String>,
    #[serde(default)]
    dolce: Vec<String>,
    #[serde(default)]
    vn_roles: BTreeMap<String, String>,
}

/// Lemma or frame id → alignment entry. Lookups are case-insensitive.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AlignmentMap {
    entries: BTreeMap<String, AlignmentEntry>,
}

impl AlignmentMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, key: &str, entry: AlignmentEntry) {
        self.entries.insert(key.to_lowercase(), entry);
    }

    pub fn get(&self, key: &str) -> Option<&AlignmentEntry> {
        self.entries.get(&key.to_lowercase())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// JSON object keyed by lemma or frame; IRIs may be written contracted with the
    /// standard prefixes (`wn30:synset-athlete-noun-1`).
    pub fn from_json(text: &str, origin: &str) -> Result<Self, ResourceError> {
        let raw: BTreeMap<String, RawAlignment> =
            serde_json::from_str(text).map_err(|e| format_err(origin, e.to_string()))?;
        let mut map = Self::new();
        for (key, entry) in raw {
            let resolve_all =
                |values: &[String]| values.iter().map(|v| resolve_iri(v, origin)).collect::<Result<Vec<_>, _>>();
            let mut vn_roles = BTreeMap::new();
            for (role, iri) in &entry.vn_roles {
                let role = if role.starts_with(':') { role.clone() } else { format!(":{role}") };
                vn_roles.insert(role, resolve_iri(iri, origin)?);
            }
            map.insert(
                &key,
                AlignmentEntry {
                    synset: entry.synset.as_deref().map(|s| resolve_iri(s, origin)).transpose()?,
                    supersenses: resolve_all(&entry.supersenses)?,
                    dolce: resolve_all(&entry.dolce)?,
                    vn_roles,
                },
            );
        }
        Ok(map)
    }

    pub fn load(path: &Path) -> Result<Self, ResourceError> {
        Self::from_json(&read(path)?, &path.display().to_string())
    }

    pub fn builtin() -> Self {
        Self::from_json(include_str!("../../resources/alignments.json"), "builtin alignments")
            .expect("builtin alignments are valid")
    }
}

/// Surface mention → external entity IRI. Matching is case-insensitive.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LinkTable {
    links: BTreeMap<String, (String, Iri)>,
}

impl LinkTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, mention: &str, target: Iri) -> Result<(), String> {
        let mention = mention.trim();
        if mention.is_empty() {
            return Err("empty mention".into());
        }
        self.links.insert(mention.to_lowercase(), (mention.to_string(), target));
        Ok(())
    }

    pub fn get(&self, mention: &str) -> Option<&Iri> {
        self.links.get(&mention.trim().to_lowercase()).map(|(_, iri)| iri)
    }

    /// `(mention as written, target)` in case-folded mention order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, &Iri)> {
        self.links.values().map(|(m, iri)| (m.as_str(), iri))
    }

    pub fn len(&self) -> usize {
        self.links.len()
    }

    pub fn is_empty(&self) -> bool {
        self.links.is_empty()
    }

    /// `mention<TAB>iri` lines.
    pub fn from_tsv(text: &str, origin: &str) -> Result<Self, ResourceError> {
        let mut table = Self::new();
        for (n, line) in text.lines().enumerate() {
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let Some((mention, iri)) = line.split_once('\t') else {
                return Err(format_err(origin, format!("line {}: expected mention<TAB>iri", n + 1)));
            };
            let iri = resolve_iri(iri, origin)?;
            table.insert(mention, iri).map_err(|m| format_err(origin, format!("line {}: {m}", n + 1)))?;
        }
        Ok(table)
    }

    /// `{"Saint Lucia": "http://www.wikidata.org/entity/Q760"}`
    pub fn from_json(text: &str, origin: &str) -> Result<Self, ResourceError> {
        let raw: BTreeMap<String, String> =
            serde_json::from_str(text).map_err(|e| format_err(origin, e.to_string()))?;
        let mut table = Self::new();
        for (mention, iri) in raw {
            table.insert(&mention, resolve_iri(&iri, origin)?).map_err(|m| format_err(origin, m))?;
        }
        Ok(table)
    }

    pub fn load(path: &Path) -> Result<Self, ResourceError> {
        let text = read(path)?;
        let origin = path.display().to_string();
        if is_json(path) {
            Self::from_json(&text, &origin)
        } else {
            Self::from_tsv(&text, &origin)
        }
    }

    pub fn builtin() -> Self {
        Self::from_tsv(include_str!("../../resources/links.tsv"), "builtin links").expect("builtin links are valid")
    }
}
