use std::path::{Path, PathBuf};

use serde_json::Value;

use jlab::cli::{run_command, EXIT_FINDING, EXIT_OK, EXIT_RESOURCE, EXIT_USAGE};
use jlab::corpus::{self, CorpusEntry};

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn jlab(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("jlab").chain(args.iter().copied());
    let code = run_command(argv, &mut out, &mut err);
    Run {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn write_map(dir: &Path, entry: &CorpusEntry) -> PathBuf {
    let path = dir.join(format!("{}.map", entry.name));
    std::fs::write(&path, entry.map_file()).unwrap();
    path
}

#[test]
fn classify_reports_c2() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_map(dir.path(), &corpus::C2_SAMPLE);
    let run = jlab(&["classify", path.to_str().unwrap()]);
    assert_eq!(run.code, EXIT_OK, "{}", run.stderr);
    assert!(run.stdout.contains("class: C2"), "{}", run.stdout);
    assert!(run.stdout.contains("E_f = U_0 + U_1"));

    let run = jlab(&["--json", "classify", path.to_str().unwrap()]);
    let v: Value = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(v["class"]["class"], "C2");
    assert_eq!(v["class"]["r"], 1);
    assert_eq!(v["good"]["is_good"], true);
}

#[test]
fn every_corpus_label_through_the_cli() {
    let dir = tempfile::tempdir().unwrap();
    for entry in corpus::ALL {
        let path = write_map(dir.path(), &entry);
        let run = jlab(&["--json", "classify", path.to_str().unwrap()]);
        assert_eq!(run.code, EXIT_OK, "{}: {}", entry.name, run.stderr);
        let v: Value = serde_json::from_str(&run.stdout).unwrap();
        assert_eq!(v["class"]["class"], entry.expected.as_str(), "{}", entry.name);
        assert_eq!(v["map"]["name"], entry.name);
    }
}

#[test]
fn rewrite_emits_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_map(dir.path(), &corpus::C2_SAMPLE);
    let run = jlab(&["--json", "rewrite", path.to_str().unwrap()]);
    assert_eq!(run.code, EXIT_OK, "{}", run.stderr);
    assert!(run.stdout.contains("q_det"), "{}", run.stdout);
}

#[test]
fn asymptotic_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_map(dir.path(), &corpus::F_STAR);
    let p = path.to_str().unwrap();
    let run = jlab(&["asymptotic", p]);
    assert_eq!(run.code, EXIT_OK);
    assert!(run.stdout.contains("P(z) = -z, Q(z) = -z"), "{}", run.stdout);

    let csv = dir.path().join("trace.csv");
    let run = jlab(&["verify", p, "--z", "1", "--z", "2 - i", "--csv", csv.to_str().unwrap()]);
    assert_eq!(run.code, EXIT_OK, "{}{}", run.stdout, run.stderr);
    assert_eq!(std::fs::read_to_string(&csv).unwrap().lines().count(), 5);

    // a tolerance no sequence can meet is a finding, not an error
    let run = jlab(&["verify", p, "--z", "1", "--schedule", "10,20", "--tol", "1e-12"]);
    assert_eq!(run.code, EXIT_FINDING);
}

#[test]
fn fiber_and_dominance() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_map(dir.path(), &corpus::F_STAR);
    let p = path.to_str().unwrap();
    let run = jlab(&["--json", "fiber", p, "--alpha", "1", "--beta", "2"]);
    assert_eq!(run.code, EXIT_OK, "{}", run.stderr);
    let v: Value = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(v["points"].as_array().unwrap().len(), 2);

    let run = jlab(&["--json", "dominance", p, "--samples", "10", "--seed", "3"]);
    assert_eq!(run.code, EXIT_OK, "{}", run.stderr);
    let v: Value = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(v["dominance"]["nonempty_fibers"], 10);
}

#[test]
fn sweep_finds_no_nzc_map() {
    let run = jlab(&["sweep", "--r", "2", "--s", "1", "--N", "1", "--max-degree", "0"]);
    assert_eq!(run.code, EXIT_OK, "{}", run.stderr);
    assert!(run.stdout.contains("0 NZC hits"), "{}", run.stdout);
}

#[test]
fn output_does_not_depend_on_jobs() {
    let args = |jobs: &'static str| {
        vec!["--jobs", jobs, "--json", "sweep", "--r", "1", "--s", "2", "--N", "2", "--coeffs", "1,-1"]
    };
    let one = jlab(&args("1"));
    let four = jlab(&args("4"));
    assert_eq!(one.code, EXIT_OK);
    assert_eq!(one.stdout, four.stdout);

    let dir = tempfile::tempdir().unwrap();
    let path = write_map(dir.path(), &corpus::SQUARE_BRANCH);
    let p = path.to_str().unwrap();
    assert_eq!(
        jlab(&["--jobs", "1", "--json", "dominance", p, "--samples", "8"]).stdout,
        jlab(&["--jobs", "3", "--json", "dominance", p, "--samples", "8"]).stdout
    );
}

#[test]
fn checkpoint_resume_matches_fresh_run() {
    let dir = tempfile::tempdir().unwrap();
    let cp = dir.path().join("sweep.json");
    let base = ["--json", "sweep", "--r", "1", "--s", "1", "--N", "2", "--coeffs", "1,-1,2"];
    let fresh = jlab(&base);
    let mut with_cp: Vec<&str> = base.to_vec();
    with_cp.extend(["--checkpoint", cp.to_str().unwrap()]);
    let first = jlab(&with_cp);
    assert!(cp.exists());
    let resumed = jlab(&with_cp);
    assert_eq!(fresh.stdout, first.stdout);
    assert_eq!(fresh.stdout, resumed.stdout);
}

#[test]
fn usage_errors() {
    assert_eq!(jlab(&["classify", "/nonexistent/map.txt"]).code, EXIT_USAGE);
    assert_eq!(jlab(&["sweep"]).code, EXIT_USAGE);
    assert_eq!(jlab(&["frobnicate"]).code, EXIT_USAGE);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.map");
    std::fs::write(&bad, "f = x +* y\ng = y\n").unwrap();
    let run = jlab(&["classify", bad.to_str().unwrap()]);
    assert_eq!(run.code, EXIT_USAGE);
    assert!(run.stderr.contains("line 1"), "{}", run.stderr);
}

#[test]
fn degenerate_fiber_is_a_finding() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("const.map");
    std::fs::write(&path, "f = 1\ng = 2\n").unwrap();
    let run = jlab(&["fiber", path.to_str().unwrap(), "--alpha", "0", "--beta", "0"]);
    assert_eq!(run.code, EXIT_FINDING, "{}", run.stderr);
}

#[test]
fn resource_cap_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_map(dir.path(), &corpus::F_STAR);
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_jlab"))
        .args(["classify", path.to_str().unwrap()])
        .env("JLAB_RESOURCE_CAP", "1")
        .output()
        .unwrap();
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(EXIT_RESOURCE), "{stdout}");
    assert!(stdout.contains("UNDECIDED"), "{stdout}");
}
