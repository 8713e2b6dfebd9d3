use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::thread;
use std::time::Duration;

use base64::Engine;
use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;

use super::{GenerationSettings, Heuristic, PromptRequest};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BackendError {
    #[error("transport failure after {attempts} attempt(s): {message}")]
    Transport { attempts: u32, message: String },
    #[error("authentication rejected: {0}")]
    Auth(String),
    #[error("max_tokens {requested} exceeds the configured cap of {cap}")]
    BudgetExceeded { requested: u32, cap: u32 },
    #[error("HTTP {status}: {body}")]
    Http { status: u16, body: String },
    #[error("unexpected response shape: {0}")]
    Protocol(String),
    #[error("no canned response for {0}")]
    MissingMock(String),
    #[error("unsupported image format {0:?}")]
    UnsupportedImageFormat(String),
}

/// Anything that turns a prompt into model text.
pub trait CompletionBackend: Send + Sync {
    fn complete(&self, request: &PromptRequest) -> Result<String, BackendError>;
}

/// Canned responses keyed by heuristic, typically one `<Heuristic>.ttl` file each.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MockBackend {
    responses: BTreeMap<Heuristic, String>,
}

impl MockBackend {
    pub fn new(responses: BTreeMap<Heuristic, String>) -> Self {
        MockBackend { responses }
    }

    pub fn from_dir(dir: &Path) -> std::io::Result<Self> {
        let mut responses = BTreeMap::new();
        for h in Heuristic::ALL {
            let path = dir.join(format!("{}.ttl", h.name()));
            if path.is_file() {
                responses.insert(h, fs::read_to_string(path)?);
            }
        }
        Ok(MockBackend { responses })
    }

    pub fn with(mut self, heuristic: Heuristic, response: impl Into<String>) -> Self {
        self.responses.insert(heuristic, response.into());
        self
    }
}

impl CompletionBackend for MockBackend {
    fn complete(&self, request: &PromptRequest) -> Result<String, BackendError> {
        self.responses
            .get(&request.heuristic)
            .cloned()
            .ok_or_else(|| BackendError::MissingMock(request.heuristic.to_string()))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ApiStyle {
    /// Messages API with `x-api-key` authentication.
    #[default]
    Anthropic,
    /// Chat completions with bearer authentication.
    Openai,
}

fn default_timeout() -> u64 {
    120
}
fn default_retries() -> u32 {
    3
}
fn default_backoff() -> u64 {
    500
}
fn default_concurrency() -> usize {
    4
}
fn default_max_tokens() -> u32 {
    4096
}

/// Endpoint description. The credential itself is read from the environment
/// variable named by `credential_env` at call time.
#[derive(Debug, Clone, PartialEq, Deserialize, serde::Serialize)]
#[serde(deny_unknown_fields)]
pub struct BackendConfig {
    pub endpoint: String,
    pub model: String,
    #[serde(default)]
    pub api_style: ApiStyle,
    pub credential_env: String,
    #[serde(default = "default_timeout")]
    pub timeout_secs: u64,
    #[serde(default = "default_retries")]
    pub retries: u32,
    #[serde(default = "default_backoff")]
    pub backoff_ms: u64,
    #[serde(default = "default_concurrency")]
    pub max_concurrency: usize,
    #[serde(default)]
    pub temperature: f64,
    #[serde(default = "default_max_tokens")]
    pub max_tokens: u32,
    /// Upper bound on `max_tokens` for any single request.
    #[serde(default)]
    pub max_tokens_cap: Option<u32>,
}

pub(crate) enum Attempt {
    Retry(String),
    Fail(BackendError),
}

/// Runs `op` up to `1 + retries` times, sleeping `backoff * 2^k` between tries.
pub(crate) fn with_retries<T>(
    retries: u32,
    backoff: Duration,
    sleep: impl Fn(Duration),
    mut op: impl FnMut() -> Result<T, Attempt>,
) -> Result<T, BackendError> {
    let mut attempt = 0;
    loop {
        attempt += 1;
        match op() {
            Ok(value) => return Ok(value),
            Err(Attempt::Fail(e)) => return Err(e),
            Err(Attempt::Retry(message)) if attempt > retries => {
                return Err(BackendError::Transport { attempts: attempt, message });
            }
            Err(Attempt::Retry(message)) => {
                let delay = backoff.saturating_mul(1 << (attempt - 1).min(16));
                log::warn!("attempt {attempt} failed ({message}); retrying in {delay:?}");
                sleep(delay);
            }
        }
    }
}

pub struct HttpBackend {
    config: BackendConfig,
    agent: ureq::Agent,
}

impl BackendConfig {
    pub fn settings(&self) -> GenerationSettings {
        GenerationSettings { max_tokens: self.max_tokens, temperature: self.temperature }
    }
}

impl HttpBackend {
    pub fn new(config: BackendConfig) -> Self {
        let agent = ureq::Agent::config_builder()
            .timeout_global(Some(Duration::from_secs(config.timeout_secs)))
            .http_status_as_error(false)
            .build()
            .into();
        HttpBackend { config, agent }
    }

    pub fn config(&self) -> &BackendConfig {
        &self.config
    }

    fn credential(&self) -> Result<String, BackendError> {
        match std::env::var(&self.config.credential_env) {
            Ok(key) if !key.trim().is_empty() => Ok(key),
            _ => Err(BackendError::Auth(format!("environment variable {} is not set", self.config.credential_env))),
        }
    }

    fn check_budget(&self, requested: u32) -> Result<(), BackendError> {
        match self.config.max_tokens_cap {
            Some(cap) if requested > cap => Err(BackendError::BudgetExceeded { requested, cap }),
            _ => Ok(()),
        }
    }

    fn post(&self, body: &Value) -> Result<String, BackendError> {
        let key = self.credential()?;
        let backoff = Duration::from_millis(self.config.backoff_ms);
        with_retries(self.config.retries, backoff, thread::sleep, || {
            let request = self.agent.post(&self.config.endpoint).header("content-type", "application/json");
            let request = match self.config.api_style {
                ApiStyle::Anthropic => request.header("x-api-key", &key).header("anthropic-version", "2023-06-01"),
                ApiStyle::Openai => request.header("authorization", &format!("Bearer {key}")),
            };
            let mut response = request.send_json(body).map_err(|e| Attempt::Retry(e.to_string()))?;
            let status = response.status().as_u16();
            let text = response.body_mut().read_to_string().map_err(|e| Attempt::Retry(e.to_string()))?;
            match status {
                200..=299 => Ok(text),
                401 | 403 => Err(Attempt::Fail(BackendError::Auth(format!("HTTP {status}")))),
                429 | 500..=599 => Err(Attempt::Retry(format!("HTTP {status}"))),
                _ => Err(Attempt::Fail(BackendError::Http { status, body: text })),
            }
        })
        .and_then(|text| self.extract_text(&text))
    }

    fn extract_text(&self, body: &str) -> Result<String, BackendError> {
        let value: Value = serde_json::from_str(body).map_err(|e| BackendError::Protocol(e.to_string()))?;
        let text = match self.config.api_style {
            ApiStyle::Anthropic => value["content"]
                .as_array()
                .map(|blocks| blocks.iter().filter_map(|b| b["text"].as_str()).collect::<Vec<_>>().join("")),
            ApiStyle::Openai => value["choices"][0]["message"]["content"].as_str().map(str::to_string),
        };
        text.ok_or_else(|| BackendError::Protocol("no text in response".into()))
    }

    fn body(&self, system: &str, content: Value, max_tokens: u32, temperature: f64) -> Value {
        match self.config.api_style {
            ApiStyle::Anthropic => json!({
                "model": self.config.model,
                "max_tokens": max_tokens,
                "temperature": temperature,
                "system": system,
                "messages": [{"role": "user", "content": content}],
            }),
            ApiStyle::Openai => json!({
                "model": self.config.model,
                "max_tokens": max_tokens,
                "temperature": temperature,
                "messages": [
                    {"role": "system", "content": system},
                    {"role": "user", "content": content},
                ],
            }),
        }
    }

    /// Asks a multimodal model for a natural-language description of an image.
    pub fn describe_image(
        &self,
        image: &[u8],
        media_type: &str,
        prompt: &str,
        max_tokens: u32,
    ) -> Result<String, BackendError> {
        self.check_budget(max_tokens)?;
        let data = base64::engine::general_purpose::STANDARD.encode(image);
        let content = match self.config.api_style {
            ApiStyle::Anthropic => json!([
                {"type": "image", "source": {"type": "base64", "media_type": media_type, "data": data}},
                {"type": "text", "text": prompt},
            ]),
            ApiStyle::Openai => json!([
                {"type": "text", "text": prompt},
                {"type": "image_url", "image_url": {"url": format!("data:{media_type};base64,{data}")}},
            ]),
        };
        self.post(&self.body("You describe pictures in plain English.", content, max_tokens, 0.0))
    }
}

impl CompletionBackend for HttpBackend {
    fn complete(&self, request: &PromptRequest) -> Result<String, BackendError> {
        self.check_budget(request.max_tokens)?;
        let body = self.body(
            &request.system_text,
            Value::String(request.user_text.clone()),
            request.max_tokens,
            request.temperature,
        );
        self.post(&body)
    }
}

/// Media type for an image path, by extension.
pub fn image_media_type(path: &Path) -> Result<&'static str, BackendError> {
    let ext = path.extension().and_then(|e| e.to_str()).unwrap_or_default().to_ascii_lowercase();
    match ext.as_str() {
        "png" => Ok("image/png"),
        "jpg" | "jpeg" => Ok("image/jpeg"),
        "gif" => Ok("image/gif"),
        "webp" => Ok("image/webp"),
        _ => Err(BackendError::UnsupportedImageFormat(ext)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::cell::RefCell;
    use std::io::{BufRead, BufReader, Read, Write};
    use std::net::TcpListener;

    /// Serves one canned `(status, body)` per connection, in order.
    fn serve(replies: Vec<(u16, &'static str)>) -> String {
        let listener = TcpListener::bind("127.0.0.1:0").unwrap();
        let addr = listener.local_addr().unwrap();
        thread::spawn(move || {
            for (status, body) in replies {
                let (stream, _) = listener.accept().unwrap();
                let mut reader = BufReader::new(stream);
                let mut length = 0;
                loop {
                    let mut line = String::new();
                    reader.read_line(&mut line).unwrap();
                    if let Some(v) = line.to_ascii_lowercase().strip_prefix("content-length:") {
                        length = v.trim().parse().unwrap();
                    }
                    if line == "\r\n" {
                        break;
                    }
                }
                let mut sink = vec![0; length];
                reader.read_exact(&mut sink).unwrap();
                let mut stream = reader.into_inner();
                write!(
                    stream,
                    "HTTP/1.1 {status} X\r\ncontent-type: application/json\r\ncontent-length: {}\r\nconnection: close\r\n\r\n{body}",
                    body.len()
                )
                .unwrap();
            }
        });
        format!("http://{addr}/v1/messages")
    }

    fn config(endpoint: String, env: &str) -> BackendConfig {
        BackendConfig {
            endpoint,
            model: "m".into(),
            api_style: ApiStyle::Anthropic,
            credential_env: env.into(),
            timeout_secs: 5,
            retries: 2,
            backoff_ms: 1,
            max_concurrency: 1,
            temperature: 0.0,
            max_tokens: 100,
            max_tokens_cap: Some(1000),
        }
    }

    fn request(max_tokens: u32) -> PromptRequest {
        PromptRequest {
            heuristic: Heuristic::FactualImpact,
            system_text: "s".into(),
            user_text: "u".into(),
            max_tokens,
            temperature: 0.0,
        }
    }

    #[test]
    fn rejected_key_is_auth_error() {
        std::env::set_var("XKG_TEST_KEY_AUTH", "invalid");
        let backend = HttpBackend::new(config(serve(vec![(401, "{}")]), "XKG_TEST_KEY_AUTH"));
        assert!(matches!(backend.complete(&request(10)), Err(BackendError::Auth(_))));
    }

    #[test]
    fn missing_key_is_auth_error() {
        let backend = HttpBackend::new(config("http://127.0.0.1:9/".into(), "XKG_TEST_KEY_UNSET_FOR_SURE"));
        assert!(matches!(backend.complete(&request(10)), Err(BackendError::Auth(_))));
    }

    #[test]
    fn server_errors_are_retried() {
        std::env::set_var("XKG_TEST_KEY_RETRY", "k");
        let ok = r#"{"content":[{"type":"text","text":"ex:a ex:b ex:c ."}]}"#;
        let backend = HttpBackend::new(config(serve(vec![(503, "{}"), (500, "{}"), (200, ok)]), "XKG_TEST_KEY_RETRY"));
        assert_eq!(backend.complete(&request(10)).unwrap(), "ex:a ex:b ex:c .");
    }

    #[test]
    fn budget_cap() {
        let backend = HttpBackend::new(config("http://127.0.0.1:9/".into(), "X"));
        assert_eq!(backend.complete(&request(5000)), Err(BackendError::BudgetExceeded { requested: 5000, cap: 1000 }));
    }

    #[test]
    fn retry_schedule_doubles() {
        let sleeps = RefCell::new(Vec::new());
        let result: Result<(), _> = with_retries(
            3,
            Duration::from_millis(10),
            |d| sleeps.borrow_mut().push(d),
            || Err(Attempt::Retry("down".into())),
        );
        assert_eq!(result, Err(BackendError::Transport { attempts: 4, message: "down".into() }));
        let ms: Vec<u128> = sleeps.borrow().iter().map(Duration::as_millis).collect();
        assert_eq!(ms, vec![10, 20, 40]);
    }

    #[test]
    fn mock_lookup() {
        let mock = MockBackend::default().with(Heuristic::FactualImpact, "");
        assert_eq!(mock.complete(&request(1)).unwrap(), "");
        let mut other = request(1);
        other.heuristic = Heuristic::EventSequences;
        assert!(matches!(mock.complete(&other), Err(BackendError::MissingMock(_))));
    }

    #[test]
    fn image_types() {
        assert_eq!(image_media_type(Path::new("a.JPG")).unwrap(), "image/jpeg");
        assert!(image_media_type(Path::new("a.bmp")).is_err());
    }
}
