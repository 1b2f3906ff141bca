use std::path::{Path, PathBuf};

use cckit::catalog::all;
use cckit::cli::{evaluate, run, Request, Structure, EXIT_CHECK_FAILED, EXIT_INPUT, EXIT_PASS};
use cckit::io::{PairFile, PairSpec, StructureFile};
use cckit::random::Sampler;
use cckit::suite::SuiteConfig;
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn cckit(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("cckit").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// A scratch file under the target directory, removed on drop.
struct TempFile(PathBuf);

impl TempFile {
    fn new(name: &str, contents: &str) -> Self {
        let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
        let path = dir.join(format!("{}-{name}", std::process::id()));
        std::fs::write(&path, contents).unwrap();
        TempFile(path)
    }
}

impl Drop for TempFile {
    fn drop(&mut self) {
        std::fs::remove_file(&self.0).ok();
    }
}

#[test]
fn classify_fixtures() {
    let acc = fixture("acc3.json");
    let (code, out, _) = cckit(&["classify", "-s", path_str(&acc)]);
    assert_eq!(code, EXIT_PASS);
    let (class, density) = out.trim().split_once(", density = ").unwrap();
    assert_eq!(class, "almost_cosymplectic_contact");
    let chart = Structure::from_example("acc3").unwrap().chart;
    assert_eq!(chart.parse(density).unwrap(), chart.parse("1+y").unwrap());

    let (code, out, _) = cckit(&["classify", "-s", path_str(&fixture("singular3.json"))]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.starts_with("not_regular"));

    let (code, out, _) = cckit(&["classify", "-e", "contact5", "--json"]);
    assert_eq!(code, EXIT_PASS);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["class"], "contact");
}

#[test]
fn hamilton_jacobi_pair_is_certified() {
    let (code, out, _) = cckit(&[
        "symmetry",
        "-s",
        path_str(&fixture("contact3.json")),
        "-p",
        path_str(&fixture("hj_x.json")),
        "-t",
        "cov_pair",
    ]);
    assert_eq!(code, EXIT_PASS, "{out}");
    assert!(out.contains("pair 1: generator"));
}

#[test]
fn reeb_pair_on_acc3_fails_with_printed_residual() {
    let pairs = TempFile::new("reeb.json", r#"{"alpha": [], "h": "1"}"#);
    let (code, out, _) = cckit(&["symmetry", "-e", "acc3", "-p", path_str(&pairs.0), "-t", "omega", "--json"]);
    assert_eq!(code, EXIT_CHECK_FAILED);
    let v: Value = serde_json::from_str(&out).unwrap();
    let entries = v["reports"][0]["entries"].as_array().unwrap();
    let failing = entries.iter().find(|e| e["pass"] == false).unwrap();
    assert!(failing["residual"].as_str().unwrap().contains("dy"), "{failing}");
}

#[test]
fn verify_and_dualize() {
    for name in ["cosym3", "contact3", "contact5", "acc3"] {
        let (code, out, _) = cckit(&["verify", "-s", path_str(&fixture(&format!("{name}.json")))]);
        assert_eq!(code, EXIT_PASS, "{name}: {out}");
        let (code, _, _) = cckit(&["dualize", "-e", name]);
        assert_eq!(code, EXIT_PASS, "{name}");
    }
    let (code, out, _) = cckit(&["dualize", "-e", "singular3"]);
    assert_eq!(code, EXIT_CHECK_FAILED);
    assert!(out.contains("no dual pair"));
    let (code, _, _) = cckit(&["verify", "-e", "singular3"]);
    assert_eq!(code, EXIT_CHECK_FAILED);
}

#[test]
fn corrupted_two_form_flips_verify() {
    let text = std::fs::read_to_string(fixture("acc3.json")).unwrap();
    let corrupted = text.replacen(r#"[[0, 1], "1"]"#, r#"[[0, 1], "1 + z"]"#, 1);
    assert_ne!(text, corrupted);
    let file = TempFile::new("acc3-corrupt.json", &corrupted);
    let (code, out, _) = cckit(&["verify", "-s", path_str(&file.0)]);
    assert_eq!(code, EXIT_CHECK_FAILED, "{out}");
    assert!(out.contains("FAIL"));
    assert!(out.contains("d Omega = 0"));

    let (_, json_out, _) = cckit(&["verify", "-s", path_str(&file.0), "--json"]);
    let v: Value = serde_json::from_str(&json_out).unwrap();
    let structure = &v["reports"][0]["entries"];
    let closed = structure.as_array().unwrap().iter().find(|e| e["label"] == "d Omega = 0").unwrap();
    assert_eq!(closed["pass"], false);
    assert!(!closed["residual"].as_str().unwrap().is_empty());
}

#[test]
fn bracket_command() {
    let pairs = TempFile::new(
        "two.json",
        r#"[{"alpha": [[[0], "1"]], "h": "-x"}, {"alpha": {"1": "1"}, "h": "-y"}]"#,
    );
    let (code, out, _) = cckit(&["bracket", "-e", "contact3", "-p", path_str(&pairs.0), "--json"]);
    assert_eq!(code, EXIT_PASS, "{out}");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["pass"], true);
    assert!(v["result"]["h"].is_string());

    let one = TempFile::new("one.json", r#"{"alpha": [], "h": "1"}"#);
    let (code, _, err) = cckit(&["bracket", "-e", "contact3", "-p", path_str(&one.0)]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("exactly two"));

    let pre = TempFile::new(
        "pre.json",
        r#"{"dimension": 3, "coordinates": ["x","y","z"], "omega": [[[2], "1"]], "Omega": [[[0,1], "1"], [[1,2], "x"]]}"#,
    );
    let (code, out, _) = cckit(&["classify", "-s", path_str(&pre.0)]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.starts_with("pre_cosymplectic_only"));
    let (code, _, _) = cckit(&["bracket", "-s", path_str(&pre.0), "-p", path_str(&pairs.0)]);
    assert_eq!(code, EXIT_INPUT);
}

#[test]
fn input_errors_exit_2() {
    let missing = fixture("does-not-exist.json");
    assert_eq!(cckit(&["classify", "-s", path_str(&missing)]).0, EXIT_INPUT);
    assert_eq!(cckit(&["classify", "-e", "nope"]).0, EXIT_INPUT);
    assert_eq!(cckit(&["classify"]).0, EXIT_INPUT);
    assert_eq!(cckit(&["frobnicate"]).0, EXIT_INPUT);
    assert_eq!(cckit(&["symmetry", "-e", "acc3", "-p", path_str(&fixture("hj_x.json")), "-t", "nope"]).0, EXIT_INPUT);

    let cases = [
        ("malformed", r#"{"dimension": 3"#),
        ("even", r#"{"dimension": 4, "coordinates": ["a","b","c","d"], "omega": [], "Omega": []}"#),
        ("names", r#"{"dimension": 3, "coordinates": ["x","y"], "omega": [], "Omega": []}"#),
        ("order", r#"{"dimension": 3, "coordinates": ["x","y","z"], "omega": [[[2], "1"]], "Omega": [[[1,0], "1"]]}"#),
        ("range", r#"{"dimension": 3, "coordinates": ["x","y","z"], "omega": [[[3], "1"]], "Omega": []}"#),
        ("expr", r#"{"dimension": 3, "coordinates": ["x","y","z"], "omega": [[[2], "1 +"]], "Omega": []}"#),
        ("unknown var", r#"{"dimension": 3, "coordinates": ["x","y","z"], "omega": [[[2], "w"]], "Omega": []}"#),
    ];
    for (what, text) in cases {
        let file = TempFile::new(&format!("bad-{}.json", what.replace(' ', "-")), text);
        let (code, _, err) = cckit(&["classify", "-s", path_str(&file.0)]);
        assert_eq!(code, EXIT_INPUT, "{what}");
        assert!(err.starts_with("error:"), "{what}: {err}");
    }

    let bad_pair = TempFile::new("bad-pair.json", r#"{"alpha": [[[0, 1], "1"]], "h": "0"}"#);
    assert_eq!(cckit(&["symmetry", "-e", "acc3", "-p", path_str(&bad_pair.0), "-t", "omega"]).0, EXIT_INPUT);
}

#[test]
fn help_and_version_exit_0() {
    assert_eq!(cckit(&["--help"]).0, EXIT_PASS);
    assert_eq!(cckit(&["suite", "--help"]).0, EXIT_PASS);
    assert_eq!(cckit(&["--version"]).0, EXIT_PASS);
}

#[test]
fn structure_json_roundtrip() {
    for entry in all() {
        let file = StructureFile::from_structure(&entry.chart, &entry.cov);
        let text = file.to_json();
        let (chart, cov) = StructureFile::from_json(&text).unwrap().to_structure().unwrap();
        assert_eq!(chart, entry.chart);
        assert_eq!(cov, entry.cov);
        assert_eq!(StructureFile::from_structure(&chart, &cov).to_json(), text);
    }
}

#[test]
fn pair_json_roundtrip() {
    let chart = Structure::from_example("acc3").unwrap().chart;
    let mut s = Sampler::new(1, 3, 2);
    for _ in 0..10 {
        let g = s.pair(3);
        let spec = PairSpec::from_pair(&g, &chart);
        let text = serde_json::to_string(&spec).unwrap();
        let back = PairFile::from_json(&text).unwrap().to_pairs(&chart).unwrap();
        assert_eq!(back, vec![g]);
    }
}

#[test]
fn suite_is_deterministic() {
    let s = Structure::from_example("acc3").unwrap();
    let config = SuiteConfig { trials: 2, degree: 1, seed: 7 };
    let a = evaluate(&s, &Request::Suite(config)).unwrap();
    let b = evaluate(&s, &Request::Suite(config)).unwrap();
    assert_eq!(a.json, b.json);
    assert_eq!(a.exit_code, EXIT_PASS);

    let (code, out1, _) = cckit(&["suite", "-e", "contact3", "--trials", "2", "--seed", "3"]);
    let (_, out2, _) = cckit(&["suite", "-e", "contact3", "--trials", "2", "--seed", "3"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(out1, out2);
}

#[test]
fn suite_on_singular_structure_runs_bracket_engine_only() {
    let (code, out, _) = cckit(&["suite", "-e", "singular3", "--trials", "2"]);
    assert_eq!(code, EXIT_PASS, "{out}");
    assert!(out.contains("structure checks skipped"));
}
