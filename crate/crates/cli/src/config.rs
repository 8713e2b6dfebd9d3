use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use xkg_core::agreement::AgreementError;
use xkg_core::enrichment::{BackendConfig, BackendError, PromptTemplates};
use xkg_core::linking::{load_segments, Segment};
use xkg_core::translate::{AlignmentMap, LinkTable, ResourceError, RolesetMap};
use xkg_core::validation::MiniOntology;

/// Failures that stop a command before it produces output (exit code 2).
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {message}")]
    Input { path: PathBuf, message: String },
    #[error(transparent)]
    Backend(#[from] BackendError),
    #[error(transparent)]
    Resource(#[from] ResourceError),
    #[error(transparent)]
    Agreement(#[from] AgreementError),
}

impl CliError {
    pub fn input(path: &Path, message: impl ToString) -> Self {
        CliError::Input { path: path.to_path_buf(), message: message.to_string() }
    }
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResourcePaths {
    pub rolesets: Option<PathBuf>,
    pub alignments: Option<PathBuf>,
    pub links: Option<PathBuf>,
    /// Sense/mention segments from an external linker, JSON.
    pub segments: Option<PathBuf>,
    pub mini_ontology: Option<PathBuf>,
    /// Directory with `system.txt` and `<Heuristic>.txt`.
    pub prompts: Option<PathBuf>,
    /// Directory of canned responses used by `--mock`.
    pub mock_dir: Option<PathBuf>,
}

impl ResourcePaths {
    fn all_mut(&mut self) -> [&mut Option<PathBuf>; 7] {
        [
            &mut self.rolesets,
            &mut self.alignments,
            &mut self.links,
            &mut self.segments,
            &mut self.mini_ontology,
            &mut self.prompts,
            &mut self.mock_dir,
        ]
    }
}

fn default_out_dir() -> PathBuf {
    PathBuf::from("out")
}

/// JSON pipeline configuration. Relative paths resolve against the config file.
/// The backend credential is never part of it: `credential_env` names the
/// environment variable holding the key.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PipelineConfig {
    #[serde(default)]
    pub backend: Option<BackendConfig>,
    /// Multimodal endpoint for image descriptions; falls back to `backend`.
    #[serde(default)]
    pub describe_backend: Option<BackendConfig>,
    #[serde(default)]
    pub resources: ResourcePaths,
    #[serde(default = "default_out_dir")]
    pub out_dir: PathBuf,
    #[serde(default)]
    pub force_merge: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            backend: None,
            describe_backend: None,
            resources: ResourcePaths::default(),
            out_dir: default_out_dir(),
            force_merge: false,
        }
    }
}

impl PipelineConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = read_text(path)?;
        let mut config: PipelineConfig =
            serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        let root = path.parent().unwrap_or(Path::new("."));
        for slot in config.resources.all_mut() {
            if let Some(p) = slot.as_mut() {
                if p.is_relative() {
                    *p = root.join(&p);
                }
                if !p.exists() {
                    return Err(CliError::Config(format!("resource path {} does not exist", p.display())));
                }
            }
        }
        if config.out_dir.is_relative() {
            config.out_dir = root.join(&config.out_dir);
        }
        for backend in config.backend.iter().chain(&config.describe_backend) {
            if backend.credential_env.trim().is_empty() {
                return Err(CliError::Config("credential_env must name an environment variable".into()));
            }
        }
        Ok(config)
    }

    pub fn load_or_default(path: Option<&Path>) -> Result<Self, CliError> {
        path.map_or_else(|| Ok(PipelineConfig::default()), PipelineConfig::load)
    }

    /// `--mock DIR` wins over the configured mock directory.
    pub fn mock_dir(&self, flag: Option<&Path>) -> Result<PathBuf, CliError> {
        flag.map(Path::to_path_buf)
            .or_else(|| self.resources.mock_dir.clone())
            .ok_or_else(|| CliError::Config("--mock needs a directory (flag value or resources.mock_dir)".into()))
    }

    pub fn resources(&self) -> Result<Resources, CliError> {
        let r = &self.resources;
        let rolesets = r.rolesets.as_deref().map_or_else(|| Ok(RolesetMap::builtin()), RolesetMap::load)?;
        let alignments = r.alignments.as_deref().map_or_else(|| Ok(AlignmentMap::builtin()), AlignmentMap::load)?;
        let links = r.links.as_deref().map_or_else(|| Ok(LinkTable::builtin()), LinkTable::load)?;
        let segments = match &r.segments {
            Some(p) => load_segments(p).map_err(CliError::Config)?,
            None => Vec::new(),
        };
        let ontology = match &r.mini_ontology {
            Some(p) => MiniOntology::from_turtle(&read_text(p)?).map_err(|e| CliError::input(p, e))?,
            None => MiniOntology::builtin(),
        };
        let templates = match &r.prompts {
            Some(dir) => PromptTemplates::from_dir(dir).map_err(|e| CliError::input(dir, e))?,
            None => PromptTemplates::builtin(),
        };
        Ok(Resources { rolesets, alignments, links, segments, ontology, templates })
    }
}

pub struct Resources {
    pub rolesets: RolesetMap,
    pub alignments: AlignmentMap,
    pub links: LinkTable,
    pub segments: Vec<Segment>,
    pub ontology: MiniOntology,
    pub templates: PromptTemplates,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn credentials_are_not_config_fields() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.json");
        fs::write(
            &path,
            r#"{"backend": {"endpoint": "http://x", "model": "m", "credential_env": "K", "api_key": "secret"}}"#,
        )
        .unwrap();
        assert!(matches!(PipelineConfig::load(&path), Err(CliError::Config(_))));
    }

    #[test]
    fn paths_must_exist() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.json");
        fs::write(&path, r#"{"resources": {"rolesets": "missing.tsv"}}"#).unwrap();
        assert!(matches!(PipelineConfig::load(&path), Err(CliError::Config(_))));
        fs::write(dir.path().join("r.tsv"), "").unwrap();
        fs::write(&path, r#"{"resources": {"rolesets": "r.tsv"}, "out_dir": "o"}"#).unwrap();
        let config = PipelineConfig::load(&path).unwrap();
        assert_eq!(config.resources.rolesets.unwrap(), dir.path().join("r.tsv"));
        assert_eq!(config.out_dir, dir.path().join("o"));
    }
}
