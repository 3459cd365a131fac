use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn corpus_dir(sub: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(sub)
}

fn corpus(name: &str) -> PathBuf {
    let problem = corpus_dir("problems").join(name);
    if problem.exists() {
        problem
    } else {
        corpus_dir("elements").join(name)
    }
}

fn dcsep(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_dcsep"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
    )
}

fn run_on(cmd: &str, file: &str) -> (i32, Value) {
    let (code, out) = dcsep(&[cmd, "--input", corpus(file).to_str().unwrap()]);
    (code, serde_json::from_str(&out).expect("json output"))
}

fn primes(v: &Value) -> Vec<&str> {
    v["certificate"]["primes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p.as_str().unwrap())
        .collect()
}

#[test]
fn case1_emits_prime_five() {
    let (code, v) = run_on("doublecoset-sep", "case1.json");
    assert_eq!(code, 0);
    assert_eq!(v["outcome"], "certificate");
    assert_eq!(primes(&v), ["5"]);
}

#[test]
fn loxodromic_against_rank_two_cusp_is_unsupported() {
    let (code, v) = run_on("doublecoset-sep", "case2_unsupported.json");
    assert_eq!(code, 2);
    assert_eq!(v["reason"], "case2_required");
}

#[test]
fn membership_and_probe() {
    let (code, v) = run_on("doublecoset-sep", "case4_member.json");
    assert_eq!(code, 0);
    assert_eq!(v["exponents"], serde_json::json!(["2", "3"]));
    let (code, v) = run_on("probe", "case1_member.json");
    assert_eq!(code, 0);
    assert_eq!(v["exponents"], serde_json::json!(["1", "1"]));
}

#[test]
fn every_emitted_certificate_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let jobs = [
        ("doublecoset-sep", "case1.json"),
        ("doublecoset-sep", "case1_mismatch.json"),
        ("doublecoset-sep", "case4.json"),
        ("doublecoset-sep", "case5.json"),
        ("doublecoset-sep", "case5_u_entry.json"),
        ("subgroup-sep", "subgroup_maximal_abelian.json"),
        ("subgroup-sep", "subgroup_cyclic_loxodromic.json"),
        ("subgroup-sep", "subgroup_cyclic_parabolic.json"),
        ("conj-distinguish", "conj_loxodromic.json"),
    ];
    for (cmd, file) in jobs {
        let out = dir.path().join(file);
        let problem = corpus(file);
        let (code, _) = dcsep(&[
            cmd,
            "-i",
            problem.to_str().unwrap(),
            "-o",
            out.to_str().unwrap(),
        ]);
        assert_eq!(code, 0, "{cmd} {file}");
        let (code, report) = dcsep(&[
            "verify",
            "-i",
            problem.to_str().unwrap(),
            "--certificate",
            out.to_str().unwrap(),
        ]);
        let report: Value = serde_json::from_str(&report).unwrap();
        assert_eq!(
            (code, &report["accepted"]),
            (0, &Value::Bool(true)),
            "{file}: {report}"
        );
    }
}

#[test]
fn tampered_certificate_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let problem = corpus("case1.json");
    let (_, out) = dcsep(&["doublecoset-sep", "-i", problem.to_str().unwrap()]);
    let mut v: Value = serde_json::from_str(&out).unwrap();
    v["certificate"]["primes"] = serde_json::json!(["7"]);
    v["certificate"]["residue_rings"][0]["p"] = Value::String("7".into());
    let cert = dir.path().join("tampered.json");
    fs::write(&cert, v.to_string()).unwrap();
    let (code, report) = dcsep(&[
        "verify",
        "-i",
        problem.to_str().unwrap(),
        "--certificate",
        cert.to_str().unwrap(),
    ]);
    let report: Value = serde_json::from_str(&report).unwrap();
    assert_eq!(code, 4);
    assert_eq!(report["accepted"], false);
    assert!(report["failure_reason"].is_string());
}

#[test]
fn malformed_input_exits_four() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(
        &bad,
        r#"{"field": {"min_poly": ["1", "0", "1"]}, "gamma": [["1", "1"], ["1", "1"]]}"#,
    )
    .unwrap();
    let (code, _) = dcsep(&["doublecoset-sep", "-i", bad.to_str().unwrap()]);
    assert_eq!(code, 4);
}

#[test]
fn element_commands() {
    let (code, v) = run_on("order-find", "order_find_m3.json");
    assert_eq!(code, 0);
    assert_eq!(v["residue_rings"][0]["p"], "7");
    let (_, v) = run_on("power-sep", "power_sep_2_4.json");
    assert_eq!(v["residue_rings"][0]["p"], "3");
    let (_, v) = run_on("power-sep", "power_sep_8_2.json");
    assert_eq!(v["exponent"], "3");
    let (_, v) = run_on("additive-sep", "additive_cube_root.json");
    assert_eq!(
        (v["p"].as_str(), v["branch"].as_str()),
        (Some("5"), Some("product"))
    );
    let (_, v) = run_on("additive-sep", "additive_zeta8.json");
    assert_eq!(
        v["residue_rings"][0]["factor"],
        serde_json::json!(["2", "0", "1"])
    );
    let (_, v) = run_on("classify", "case5.json");
    assert_eq!(v["case"], "case5");
}

#[test]
fn batch_output_is_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let input = corpus_dir("problems");
    let run = |out: &Path, jobs: &str| {
        dcsep(&[
            "doublecoset-sep",
            "-i",
            input.to_str().unwrap(),
            "-o",
            out.to_str().unwrap(),
            "--jobs",
            jobs,
        ])
        .0
    };
    let code = run(a.path(), "1");
    assert_eq!(run(b.path(), "4"), code);
    assert_eq!(code, 2, "the corpus includes unsupported problems");
    let mut names: Vec<_> = fs::read_dir(a.path())
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    names.sort();
    assert!(names.len() >= 9);
    for n in names {
        assert_eq!(
            fs::read(a.path().join(&n)).unwrap(),
            fs::read(b.path().join(&n)).unwrap(),
            "{n:?}"
        );
    }
}
