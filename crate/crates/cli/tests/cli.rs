//! End-to-end behavior of the `nilform` binary and the command layer.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use nilform_cli::commands::{self, Settings};
use nilform_cli::AlgebraDocument;
use nilform_core::gallery::{gallery_entry, unimodular_scramble, Annotations};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

fn nilform(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilform"))
        .args(args)
        .env_remove("NILFORM_MAX_DIM")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write_doc(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn gallery_list_has_at_least_ten_entries() {
    let out = nilform(&["gallery", "list"]);
    assert_eq!(code(&out), 0);
    let entries = json(&out)["entries"].as_array().unwrap().clone();
    assert!(entries.len() >= 10);
    assert!(entries.iter().all(|e| e["description"].is_string()));
    let text = nilform(&["gallery", "list", "--output", "text"]);
    assert_eq!(
        String::from_utf8_lossy(&text.stdout).lines().count(),
        entries.len()
    );
}

#[test]
fn gallery_documents() {
    let out = nilform(&["gallery", "ex-3-8"]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_eq!(doc["dim"], 9);
    assert_eq!(doc["form"].as_array().unwrap().len(), 9);
    let out = nilform(&["gallery", "cotangent-sl2"]);
    assert_eq!(json(&out)["dim"], 6);
}

#[test]
fn unknown_gallery_name_suggests_neighbors() {
    let out = nilform(&["gallery", "ex-38"]);
    assert_eq!(code(&out), 1);
    assert!(
        stderr(&out).contains("did you mean: ex-3-8"),
        "{}",
        stderr(&out)
    );
    let out = nilform(&["analyze", "gallery://cotangent-sl3"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("cotangent-sl2"));
}

#[test]
fn analyze_ex_3_8() {
    let out = nilform(&["analyze", "gallery://ex-3-8"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let r = json(&out);
    assert_eq!(r["verdicts"]["signature"], "(3,3,3)");
    assert_eq!(r["verdicts"]["effective"], "true");
    assert_eq!(r["verdicts"]["nil_invariant"], "holds");
    assert_eq!(r["verdicts"]["invariant"], "false");
    assert_eq!(
        r["results"]["analysis"]["signature"],
        serde_json::json!([3, 3, 3])
    );
    assert_eq!(r["input"]["dim"], 9);
    assert!(r["input"]["digest"]
        .as_str()
        .unwrap()
        .starts_with("sha256:"));
    assert_eq!(r["command"]["name"], "analyze");
}

#[test]
fn analyze_e3_dual() {
    let out = nilform(&["analyze", "--input", "gallery://e3-dual"]);
    assert_eq!(code(&out), 0);
    let v = &json(&out)["verdicts"];
    assert_eq!(v["kernel_dim"], "0");
    assert_eq!(v["relative_index"], "3");
    assert_eq!(v["invariant"], "true");
    assert_eq!(v["signature"], "(3,3,0)");
}

#[test]
fn malformed_rational_exits_1_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_doc(
        &dir,
        "bad.json",
        r#"{"name":"bad","dim":2,"labels":["a","b"],
           "brackets":[{"i":0,"j":1,"coeffs":{"1":"3/x"}}],
           "form":[["1","0"],["0","1"]]}"#,
    );
    let out = nilform(&["analyze", &path]);
    assert_eq!(code(&out), 1);
    let err = stderr(&out);
    assert!(
        err.contains("brackets[0].coeffs[\"1\"]") && err.contains("character 2"),
        "{err}"
    );
    assert_eq!(json(&out)["exit_code"], 1);
}

#[test]
fn malformed_json_reports_line_and_column() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_doc(&dir, "bad.json", "{\n  \"name\": \"x\",\n  \"dim\": ,\n}");
    let out = nilform(&["analyze", &path]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));
}

#[test]
fn missing_form_is_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_doc(
        &dir,
        "r1.json",
        r#"{"name":"r1","dim":1,"labels":["x"],"brackets":[]}"#,
    );
    for cmd in ["analyze", "decompose"] {
        let out = nilform(&[cmd, &path]);
        assert_eq!(code(&out), 2, "{cmd}");
        assert!(stderr(&out).contains("no form"));
    }
}

#[test]
fn jacobi_violation_is_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_doc(
        &dir,
        "j.json",
        r#"{"name":"j","dim":3,"labels":["a","b","c"],"brackets":[
            {"i":0,"j":1,"coeffs":{"2":"1"}},
            {"i":1,"j":2,"coeffs":{"0":"1"}},
            {"i":0,"j":2,"coeffs":{"0":"1"}}]}"#,
    );
    let out = nilform(&["analyze", &path]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("Jacobi"), "{}", stderr(&out));
}

#[test]
fn decompose_places_factors() {
    let out = nilform(&["decompose", "gallery://ex-3-8"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let r = json(&out);
    assert_eq!(r["results"]["factor_dims"], serde_json::json!([9, 0, 0]));
    assert_eq!(r["verdicts"]["outcome"], "decomposed");

    let out = nilform(&["decompose", "gallery://cotangent-sl2"]);
    assert_eq!(code(&out), 0);
    let r = json(&out);
    assert_eq!(r["results"]["factor_dims"], serde_json::json!([0, 0, 6]));
    assert_eq!(r["verdicts"]["metric-cotangent"], "verified");
}

#[test]
fn decompose_rejects_non_effective_forms() {
    let out = nilform(&["decompose", "gallery://e4-definite"]);
    assert_eq!(code(&out), 2);
    let r = json(&out);
    assert_eq!(r["verdicts"]["effective"], "violated");
    let summary = r["summary"].to_string();
    assert!(
        summary.contains("kernel contains nonzero ideal"),
        "{summary}"
    );
}

#[test]
fn audit_stabilizer_and_controls() {
    let out = nilform(&["audit-stabilizer", "gallery://ex-4-7"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["verdicts"]["all_hold"], "true");

    let out = nilform(&[
        "audit-stabilizer",
        "gallery://ex-4-7",
        "--subalgebra",
        "radical",
    ]);
    let v = &json(&out)["verdicts"];
    assert_eq!(v["phi_nontrivial"], "false");
    assert_eq!(v["projects_onto_radical"], "true");

    let out = nilform(&[
        "audit-stabilizer",
        "gallery://ex-4-7",
        "--subalgebra",
        "levi",
    ]);
    let v = &json(&out)["verdicts"];
    assert_eq!(v["projects_onto_radical"], "false");
    assert_eq!(v["phi_nontrivial"], "true");

    // no stabilizer annotation
    let out = nilform(&["audit-stabilizer", "gallery://so3-killing"]);
    assert_eq!(code(&out), 1);
    // noncompact Levi factor
    let out = nilform(&[
        "audit-stabilizer",
        "gallery://cotangent-sl2",
        "--subalgebra",
        "radical",
    ]);
    assert_eq!(code(&out), 2, "{}", stderr(&out));
}

#[test]
fn verify_euclidean_cases() {
    let out = nilform(&["verify", "euclidean", "--n", "2,3,4"]);
    assert_eq!(code(&out), 0);
    let r = json(&out);
    let cases = r["results"]["cases"].as_array().unwrap();
    let dims: Vec<u64> = cases
        .iter()
        .map(|c| c["solution_dim"].as_u64().unwrap())
        .collect();
    assert_eq!(dims, [1, 7, 21]);
    assert!(cases.iter().all(|c| c.get("basis").is_none()));
    assert_eq!(r["verdicts"]["n=3"], "exception");
    assert_eq!(r["verdicts"]["n=4"], "radical-in-kernel");
    assert!(cases[1]["nondegenerate_invariant"].is_array());

    let out = nilform(&["verify", "euclidean", "--n", "4", "--include-basis"]);
    assert_eq!(
        json(&out)["results"]["cases"][0]["basis"]
            .as_array()
            .unwrap()
            .len(),
        21
    );

    for bad in ["0", "9"] {
        assert_eq!(code(&nilform(&["verify", "euclidean", "--n", bad])), 1);
    }
}

#[test]
fn verify_skew_pairing_cases() {
    let out = nilform(&["verify", "skew-pairing"]);
    assert_eq!(code(&out), 0);
    let r = json(&out);
    let dims: Vec<u64> = r["results"]["cases"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["solution_dim"].as_u64().unwrap())
        .collect();
    assert_eq!(dims, [3, 1, 0, 0]);
    assert_eq!(r["verdicts"]["l=1"], "killing-line");
    let out = nilform(&["verify", "skew-pairing", "--l", "4,5"]);
    assert_eq!(json(&out)["verdicts"]["l=5"], "zero");
    assert_eq!(code(&nilform(&["verify", "skew-pairing", "--l", "7"])), 1);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for args in [
        &["analyze", "gallery://ex-3-8"][..],
        &["decompose", "gallery://cotangent-so3"],
        &["verify", "euclidean", "--n", "3"],
        &["analyze", "gallery://random-mixed", "--seed", "5"],
    ] {
        let a = nilform(args);
        let b = nilform(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(!a.stdout.is_empty());
    }
}

#[test]
fn file_input_matches_gallery_input() {
    let dir = tempfile::tempdir().unwrap();
    let doc = nilform(&["gallery", "ex-3-8"]);
    let path = write_doc(&dir, "ex38.json", &String::from_utf8_lossy(&doc.stdout));
    let from_file = json(&nilform(&["analyze", &path]));
    let from_gallery = json(&nilform(&["analyze", "gallery://ex-3-8"]));
    assert_eq!(
        from_file["input"]["digest"],
        from_gallery["input"]["digest"]
    );
    assert_eq!(from_file["results"], from_gallery["results"]);

    let mut child = Command::new(env!("CARGO_BIN_EXE_nilform"))
        .args(["analyze", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(&doc.stdout).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(json(&out)["results"], from_gallery["results"]);
}

#[test]
fn max_dim_env_caps_input() {
    let run = |cap: &str| {
        Command::new(env!("CARGO_BIN_EXE_nilform"))
            .args(["analyze", "gallery://ex-3-8"])
            .env("NILFORM_MAX_DIM", cap)
            .output()
            .unwrap()
    };
    let out = run("8");
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("NILFORM_MAX_DIM"));
    assert_eq!(code(&run("9")), 0);
    assert_eq!(code(&run("nine")), 1);
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(code(&nilform(&["analyze"])), 1);
    assert_eq!(code(&nilform(&["frobnicate"])), 1);
    assert_eq!(code(&nilform(&["verify", "euclidean"])), 1);
    assert_eq!(code(&nilform(&["--help"])), 0);
}

#[test]
fn text_output_is_plain() {
    let out = nilform(&["analyze", "gallery://ex-3-8", "--output", "text"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("signature (n+,n-,n0) = (3,3,3)"));
    assert!(text.ends_with("exit: 0\n"));
    assert!(!text.contains('\u{2014}'));
}

/// Writes `name` after a random unimodular basis change.
fn scrambled_doc(dir: &tempfile::TempDir, name: &str, seed: u64) -> String {
    let e = gallery_entry(name, 0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (p, _) = unimodular_scramble(e.algebra.dim(), &mut rng);
    let g = e.algebra.change_basis(&p).unwrap();
    let f = e.form.as_ref().map(|f| f.change_basis(&p));
    let doc = AlgebraDocument::from_parts(name, "", &g, f.as_ref(), &Annotations::default());
    write_doc(
        dir,
        &format!("{name}-{seed}.json"),
        &doc.to_canonical_json(),
    )
}

/// Basis-free fields: every verdict, the Levi summary and factor dims.
fn basis_free(r: &nilform_cli::Report) -> (Value, Value, Value, i32) {
    let v = serde_json::to_value(&r.verdicts).unwrap();
    (
        v,
        r.results["levi"].clone(),
        r.results["factor_dims"].clone(),
        r.exit_code,
    )
}

const SMALL: [&str; 10] = [
    "so3-killing",
    "sl2-killing",
    "so3xsl2",
    "so3xr3-hyperbolic",
    "e2",
    "e3-dual",
    "e4-definite",
    "cotangent-so3",
    "cotangent-sl2",
    "ex-3-8",
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn reports_are_basis_free(idx in 0usize..SMALL.len(), seed in 0u64..1000) {
        let name = SMALL[idx];
        let dir = tempfile::tempdir().unwrap();
        let path = scrambled_doc(&dir, name, seed);
        let gallery = format!("gallery://{name}");
        let s = Settings::default();
        let a = commands::analyze(&gallery, s).unwrap();
        let b = commands::analyze(&path, s).unwrap();
        prop_assert_eq!(basis_free(&a), basis_free(&b));
        let a = commands::decompose(&gallery, s).unwrap();
        let b = commands::decompose(&path, s).unwrap();
        prop_assert_eq!(basis_free(&a), basis_free(&b));
    }
}

#[test]
fn large_reports_are_basis_free_through_the_binary() {
    let dir = tempfile::tempdir().unwrap();
    let path = scrambled_doc(&dir, "ex-3-9", 7);
    for cmd in ["analyze", "decompose"] {
        let a = json(&nilform(&[cmd, "gallery://ex-3-9"]));
        let b = json(&nilform(&[cmd, &path]));
        assert_eq!(a["verdicts"], b["verdicts"], "{cmd}");
        assert_eq!(a["results"]["levi"], b["results"]["levi"], "{cmd}");
        assert_eq!(a["exit_code"], b["exit_code"], "{cmd}");
    }
}
