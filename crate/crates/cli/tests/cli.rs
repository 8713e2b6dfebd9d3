use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn fixture(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(rel)
}

fn xkg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xkg")).args(args).env_remove("RUST_LOG").output().expect("binary runs")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn base_graph(dir: &Path) -> PathBuf {
    let out = xkg(&["base", "--amr", path(&fixture("athlete.amr")), "--out", path(dir)]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    dir.join("base-graph.ttl")
}

#[test]
fn describe_text_is_passed_through() {
    let dir = TempDir::new().unwrap();
    let target = dir.path().join("d.txt");
    let out = xkg(&["describe", "--text", path(&fixture("athlete.txt")), "--out", path(&target)]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(fs::read(&target).unwrap(), fs::read(fixture("athlete.txt")).unwrap());
}

#[test]
fn describe_image_uses_mock_description() {
    let dir = TempDir::new().unwrap();
    let target = dir.path().join("d.txt");
    let mock = fixture("mock");
    let out = xkg(&["describe", "--image", path(&fixture("athlete.png")), "--mock", path(&mock), "--out", path(&target)]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(fs::read_to_string(&target).unwrap(), fs::read_to_string(fixture("athlete.txt")).unwrap());
}

#[test]
fn image_without_endpoint_is_a_config_error() {
    let dir = TempDir::new().unwrap();
    let out = xkg(&["describe", "--image", path(&fixture("athlete.png")), "--out", path(&dir.path().join("d.txt"))]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("endpoint"), "{}", stderr(&out));
    assert!(!dir.path().join("d.txt").exists());
}

#[test]
fn unsupported_image_format_is_rejected() {
    let dir = TempDir::new().unwrap();
    let image = dir.path().join("scan.bmp");
    fs::write(&image, b"BM").unwrap();
    let out = xkg(&["describe", "--image", path(&image), "--mock", path(&fixture("mock"))]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn base_writes_the_athlete_graph() {
    let dir = TempDir::new().unwrap();
    let ttl = fs::read_to_string(base_graph(dir.path())).unwrap();
    for fragment in
        ["fred:celebrate_1", "pbrs:celebrate-01", "fred:athlete_1", "\"Saint Lucia\"", "wikidata.org/entity/Q760"]
    {
        assert!(ttl.contains(fragment), "{fragment} missing");
    }
    assert!(dir.path().join("base-profile.json").exists());
}

#[test]
fn enrich_writes_factual_impact_graph() {
    let dir = TempDir::new().unwrap();
    let base = base_graph(dir.path());
    let out = xkg(&[
        "enrich",
        "--base",
        path(&base),
        "--heuristic",
        "FactualImpact",
        "--mock",
        path(&fixture("mock")),
        "--out",
        path(dir.path()),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let ttl = fs::read_to_string(dir.path().join("xkg-FactualImpact.ttl")).unwrap();
    for fragment in ["impact:Joy", "impact:Pride", "impact:Exhilaration", "impact:NationalRecognition"] {
        assert!(ttl.contains(fragment), "{fragment} missing");
    }
    assert!(!dir.path().join("xkg-ImageSchemas.ttl").exists());
}

#[test]
fn empty_responses_merge_to_the_base() {
    let dir = TempDir::new().unwrap();
    let base = base_graph(dir.path());
    let out =
        xkg(&["enrich", "--base", path(&base), "--mock", path(&fixture("mock-empty")), "--out", path(dir.path())]);
    assert_eq!(out.status.code(), Some(1));
    let merged = fs::read_to_string(dir.path().join("xkg-merged.ttl")).unwrap();
    assert_eq!(merged, fs::read_to_string(&base).unwrap());
    assert!(fs::read_to_string(dir.path().join("diagnostics.json")).unwrap().contains("PARSE_FAILURE"));
}

#[test]
fn floating_additions_exit_with_errors() {
    let dir = TempDir::new().unwrap();
    let base = base_graph(dir.path());
    let out = xkg(&[
        "enrich",
        "--base",
        path(&base),
        "--heuristic",
        "FactualImpact",
        "--mock",
        path(&fixture("mock-floating")),
        "--out",
        path(dir.path()),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("ANCHOR_FLOAT"), "{}", stderr(&out));
    let forced = xkg(&[
        "enrich",
        "--base",
        path(&base),
        "--heuristic",
        "FactualImpact",
        "--mock",
        path(&fixture("mock-floating")),
        "--force-merge",
        "--out",
        path(dir.path()),
    ]);
    assert_eq!(forced.status.code(), Some(0));
    assert!(fs::read_to_string(dir.path().join("xkg-merged.ttl")).unwrap().contains("impact:Smile"));
}

#[test]
fn validate_reports_clash_and_precedence() {
    let dir = TempDir::new().unwrap();
    let out = xkg(&[
        "run",
        "--text",
        path(&fixture("athlete.txt")),
        "--amr",
        path(&fixture("athlete.amr")),
        "--mock",
        path(&fixture("mock")),
        "--out",
        path(dir.path()),
    ]);
    assert_eq!(out.status.code(), Some(1));

    let clash = xkg(&[
        "validate",
        "--graph",
        path(&dir.path().join("xkg-MetonymicCoercion.ttl")),
        "--out",
        path(&dir.path().join("v1")),
    ]);
    assert_eq!(clash.status.code(), Some(1));
    assert!(stdout(&clash).contains("DISJOINT_CLASH"), "{}", stdout(&clash));
    assert!(stdout(&clash).contains("PREFIX_MISUSE"));

    let events = xkg(&[
        "validate",
        "--graph",
        path(&dir.path().join("xkg-EventSequences.ttl")),
        "--out",
        path(&dir.path().join("v2")),
    ]);
    assert_eq!(events.status.code(), Some(0));
    assert!(stdout(&events).contains("fred:wear_1 precedes fred:celebrate_1"), "{}", stdout(&events));
    assert!(dir.path().join("v2/validation.json").exists());
}

#[test]
fn agree_reports_fixture_statistics() {
    let dir = TempDir::new().unwrap();
    let perfect = xkg(&["agree", "--ratings", path(&fixture("ratings/perfect.csv")), "--out", path(dir.path())]);
    assert_eq!(perfect.status.code(), Some(0), "{}", stderr(&perfect));
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("agreement.json")).unwrap()).unwrap();
    for h in json["heuristics"].as_array().unwrap() {
        assert_eq!(h["alpha"].as_f64(), Some(1.0));
    }

    let two = xkg(&["agree", "--ratings", path(&fixture("ratings/two-rater.csv")), "--out", path(dir.path())]);
    assert_eq!(two.status.code(), Some(0));
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("agreement.json")).unwrap()).unwrap();
    let kappa = json["heuristics"][0]["mean_kappa"].as_f64().unwrap();
    assert!((kappa - 0.75).abs() < 1e-9);
    assert!(stdout(&two).contains("0.75"), "{}", stdout(&two));
}

#[test]
fn credential_in_config_is_refused() {
    let dir = TempDir::new().unwrap();
    let config = dir.path().join("config.json");
    fs::write(
        &config,
        r#"{"backend": {"endpoint": "http://127.0.0.1:9", "model": "m", "credential_env": "XKG_KEY", "api_key": "secret"}}"#,
    )
    .unwrap();
    let out = xkg(&[
        "--config",
        path(&config),
        "agree",
        "--ratings",
        path(&fixture("ratings/perfect.csv")),
        "--out",
        path(dir.path()),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!stderr(&out).contains("secret"));
}

#[test]
fn missing_credential_is_a_backend_failure() {
    let dir = TempDir::new().unwrap();
    let base = base_graph(dir.path());
    let config = dir.path().join("config.json");
    fs::write(
        &config,
        r#"{"backend": {"endpoint": "http://127.0.0.1:9", "model": "m", "credential_env": "XKG_TEST_UNSET_KEY"}}"#,
    )
    .unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_xkg"))
        .args([
            "--config",
            path(&config),
            "enrich",
            "--base",
            path(&base),
            "--heuristic",
            "FactualImpact",
            "--out",
            path(dir.path()),
        ])
        .env_remove("XKG_TEST_UNSET_KEY")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("BACKEND_FAILURE"), "{}", stderr(&out));
    assert!(stderr(&out).contains("XKG_TEST_UNSET_KEY"));
}

#[test]
fn mock_runs_are_byte_identical() {
    let run = |dir: &Path| {
        xkg(&[
            "run",
            "--text",
            path(&fixture("athlete.txt")),
            "--amr",
            path(&fixture("athlete.amr")),
            "--mock",
            path(&fixture("mock")),
            "--out",
            path(dir),
        ]);
        let mut files: Vec<(String, Vec<u8>)> = fs::read_dir(dir)
            .unwrap()
            .map(|e| e.unwrap().path())
            .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&p).unwrap()))
            .collect();
        files.sort();
        files
    };
    let (a, b) = (TempDir::new().unwrap(), TempDir::new().unwrap());
    let first = run(a.path());
    assert!(first.len() >= 16);
    assert_eq!(first, run(b.path()));
}
