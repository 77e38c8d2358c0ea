//! End-to-end tests of the `khtot` binary.

use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use tempfile::TempDir;

const TREFOIL: &str = r#"{"pd": [[1,4,2,5],[3,6,4,1],[5,2,6,3]], "decorations": [0,0,0], "basepoint": null}"#;
const FIGURE_EIGHT: &str = r#"{"pd": [[4,2,5,1],[8,6,1,5],[6,3,7,4],[2,7,3,8]], "decorations": [0,0,0,0], "basepoint": 1}"#;

fn khtot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_khtot")).args(args).env_remove("KHTOT_THREADS").output().expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn ftot_homology_of_trefoil_has_rank_two() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "trefoil.json", TREFOIL);
    let out = khtot(&["homology", "--theory", "ftot", s(&f)]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["result"]["homology"][0]["total_free"], 2);
    assert_eq!(v["result"]["homology"][0]["total_torsion"], 0);
}

#[test]
fn s_of_trefoil_with_slope_one_is_two() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "trefoil.json", TREFOIL);
    let out = khtot(&["s", "--upright", "t=1", s(&f)]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let values = v["result"]["values"].as_array().unwrap();
    assert_eq!(values.len(), 3);
    assert!(values.iter().all(|r| r["s"] == 2 && r["upright"] == "t=1"));
    assert_eq!(v["result"]["genus_bound"], "1");
}

#[test]
fn s_single_variant_and_mirror() {
    let out = khtot(&["s", "--knot", "m3_1", "--upright", "max", "--variant", "minus-o"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["result"]["values"], json!([{ "upright": "max", "variant": "minus-o", "s": -2 }]));
}

#[test]
fn exhaustive_d_squared_on_figure_eight_passes() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "fig8.json", FIGURE_EIGHT);
    let out = khtot(&["verify", "--d-squared", "--all-decorations", s(&f)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json_of(&out);
    assert_eq!(v["result"]["decorations"].as_array().unwrap().len(), 16);
    assert_eq!(v["result"]["checks"][0]["name"], "d_squared");
    assert_eq!(v["result"]["checks"][0]["passed"], true);
}

#[test]
fn full_verification_suite_on_trefoil() {
    let out = khtot(&["verify", "--knot", "3_1", "--samples", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let names: Vec<&str> =
        v["result"]["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["d_squared", "sweep", "axioms", "reduced"]);
    assert_eq!(v["passed"], true);
}

#[test]
fn json_output_is_byte_identical_across_runs_and_thread_counts() {
    let args = ["s", "--knot", "5_2"];
    let a = khtot(&args);
    let b = khtot(&args);
    let c = Command::new(env!("CARGO_BIN_EXE_khtot")).args(args).env("KHTOT_THREADS", "3").output().unwrap();
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let h1 = khtot(&["homology", "--knot", "T2_4", "--theory", "kh", "--theory", "bn", "--theory", "sz"]);
    let h2 = khtot(&["homology", "--knot", "T2_4", "--theory", "kh", "--theory", "bn", "--theory", "sz"]);
    assert_eq!(h1.stdout, h2.stdout);
}

#[test]
fn timing_is_opt_in() {
    let v = json_of(&khtot(&["homology", "--knot", "3_1"]));
    assert!(v.get("wall_time_ms").is_none());
    let v = json_of(&khtot(&["homology", "--knot", "3_1", "--timing"]));
    assert!(v["wall_time_ms"].is_u64());
}

#[test]
fn tsv_homology_table() {
    let out = khtot(&["homology", "--knot", "3_1", "--format", "tsv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    let start = lines.iter().position(|l| *l == "# homology").unwrap();
    assert_eq!(lines[start + 1], "theory\tgr_h\tgr_q\tfree\ttorsion");
    // Khovanov homology of the right-handed trefoil over F2.
    let rows: Vec<&str> = lines[start + 2..].iter().take_while(|l| !l.starts_with('#')).copied().collect();
    assert_eq!(
        rows,
        ["kh\t0\t1\t1\t", "kh\t0\t3\t1\t", "kh\t2\t5\t1\t", "kh\t2\t7\t1\t", "kh\t3\t7\t1\t", "kh\t3\t9\t1\t"]
    );
}

#[test]
fn pd_text_inputs_match_json() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "trefoil.pd", "PD[X(1,4,2,5), X(3,6,4,1), X(5,2,6,3)]\n");
    let a = json_of(&khtot(&["homology", s(&f)]));
    let b = json_of(&khtot(&["homology", "--pd", "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]"]));
    let c = json_of(&khtot(&["homology", "--knot", "3_1"]));
    assert_eq!(a["input"], b["input"]);
    assert_eq!(a["result"], b["result"]);
    assert_eq!(a["result"], c["result"]);
}

#[test]
fn reduced_homology_of_trefoil() {
    let v = json_of(&khtot(&["homology", "--knot", "3_1", "--reduced"]));
    let groups: Vec<(i64, i64)> = v["result"]["homology"][0]["groups"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| (g["gr_h"].as_i64().unwrap(), g["gr_q"].as_i64().unwrap()))
        .collect();
    assert_eq!(groups, [(0, 2), (2, 6), (3, 8)]);
    assert!(v["result"]["basepoint"].is_u64());
}

#[test]
fn total_ring_homology_is_rejected() {
    let out = khtot(&["homology", "--knot", "3_1", "--theory", "total"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_and_input_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    assert_eq!(khtot(&["homology", "--no-such-flag", "--knot", "3_1"]).status.code(), Some(2));
    assert_eq!(khtot(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(khtot(&["homology"]).status.code(), Some(2));
    assert_eq!(khtot(&["homology", "/definitely/missing.json"]).status.code(), Some(2));
    let bad = write(&dir, "bad.json", r#"{"pd": [[1,2,3,4]]}"#);
    assert_eq!(khtot(&["homology", s(&bad)]).status.code(), Some(2));
    let unknown = write(&dir, "unknown.json", r#"{"pd": [], "loops": 1, "colour": 3}"#);
    assert_eq!(khtot(&["homology", s(&unknown)]).status.code(), Some(2));
    assert_eq!(khtot(&["s", "--knot", "hopf"]).status.code(), Some(2));
    assert_eq!(khtot(&["s", "--knot", "3_1", "--upright", "t=2"]).status.code(), Some(2));
    assert_eq!(khtot(&["homology", "--knot", "3_1", "--threads", "0"]).status.code(), Some(2));
    assert_eq!(khtot(&["--help"]).status.code(), Some(0));
}

#[test]
fn moves_preserve_homology_and_round_trip() {
    let dir = TempDir::new().unwrap();
    let out = khtot(&["moves", "--knot", "3_1", "--apply", "R1+:1:L; R2:2:6:R; R1-:3:R"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json_of(&out);
    assert_eq!(v["result"]["check"]["equal"], true);
    assert_eq!(v["result"]["moves"], json!(["R1+:1:L", "R2:2:6:R", "R1-:3:R"]));
    let moved = v["result"]["diagram"].clone();
    assert_eq!(moved["pd"].as_array().unwrap().len(), 3 + 1 + 2 + 1);
    // The emitted diagram is a valid input with the advertised digest.
    let f = write(&dir, "moved.json", &moved.to_string());
    let again = json_of(&khtot(&["homology", s(&f)]));
    assert_eq!(again["input"]["digest"], v["result"]["digest"]);
    let before = json_of(&khtot(&["homology", "--knot", "3_1"]));
    assert_eq!(again["result"]["homology"], before["result"]["homology"]);
}

#[test]
fn invalid_move_site_is_an_input_error() {
    let out = khtot(&["moves", "--knot", "3_1", "--apply", "R3:1:L"]);
    assert_eq!(out.status.code(), Some(2));
    let out = khtot(&["moves", "--knot", "3_1", "--apply", "R7:1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reduce_exports_a_unit_free_complex_that_verifies() {
    let dir = TempDir::new().unwrap();
    let out = khtot(&["reduce", "--knot", "4_1"]);
    assert_eq!(out.status.code(), Some(0));
    let mut v = json_of(&out);
    let cx = &v["result"]["complex"];
    assert_eq!(cx["schema"], 1);
    let survivors = cx["generators"].as_array().unwrap().len() as u64;
    assert!(survivors >= 2 && survivors < v["result"]["original_generators"].as_u64().unwrap());
    for e in cx["entries"].as_array().unwrap() {
        assert_ne!(e["terms"], json!([[0, 0]]), "unit entry survived: {e}");
    }
    let f = write(&dir, "r.json", &v.to_string());
    assert_eq!(khtot(&["verify", "--complex", s(&f)]).status.code(), Some(0));

    // Tamper: add the reverse of an existing entry, creating a nonzero
    // diagonal entry of delta^2.
    let entries = v["result"]["complex"]["entries"].as_array_mut().unwrap();
    let (src, tgt) = (entries[0]["source"].clone(), entries[0]["target"].clone());
    entries.push(json!({ "source": tgt, "target": src, "terms": [[0, 0]] }));
    let f = write(&dir, "bad.json", &v.to_string());
    let out = khtot(&["verify", "--complex", s(&f)]);
    assert_eq!(out.status.code(), Some(1));
    let r = json_of(&out);
    assert_eq!(r["passed"], false);
    assert!(!r["result"]["checks"][0]["failures"].as_array().unwrap().is_empty());
}

#[test]
fn debug_classifies_configurations() {
    let dir = TempDir::new().unwrap();
    let out = khtot(&["debug", "--knot", "3_1", "--u", "0", "--v", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["result"]["index"], 2);
    let dump = v["result"]["configuration"].as_str().unwrap().to_string();
    // Round trip through a dump file.
    let f = write(&dir, "cfg.txt", &dump);
    let w = json_of(&khtot(&["debug", "--config", s(&f)]));
    assert_eq!(w["result"]["labels"], v["result"]["labels"]);
    assert!(w["input"].is_null());
    // A single merge of two circles labeled 1 is the Khovanov merge, and also
    // the one-arc member of the parallel-arc family.
    let merge = write(&dir, "merge.txt", "arcs 1\ncircle: 0tL\ncircle: 0hL\n");
    let m = json_of(&khtot(&["debug", "--config", s(&merge), "--x", "0", "--y", "0"]));
    assert_eq!(m["result"]["labels"], json!([{ "x": 0, "y": 0, "families": ["MergeA", "TypeA"] }]));
}
