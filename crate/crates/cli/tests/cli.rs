mod common;

use std::fs;
use std::path::Path;

use sha2::{Digest, Sha256};

use common::{bin, corpus, read_json, run, RawAutomaton};

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn stdout(o: &std::process::Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &std::process::Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn a_vs_b() -> (std::path::PathBuf, std::path::PathBuf) {
    let d = corpus().join("pairs/disjoint/a_vs_b");
    (d.join("net1.json"), d.join("net2.json"))
}

#[test]
fn missing_file_is_an_input_error() {
    let o = run(&["km", "/nonexistent/net.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("/nonexistent/net.json"));
}

#[test]
fn malformed_json_reports_a_location() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"dim\": 1,\n  \"controls\": [\"p\"\n").unwrap();
    let o = run(&["km", p(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line"), "{}", stderr(&o));
}

#[test]
fn unknown_field_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    let mut v = read_json(&corpus().join("nets/counter.json"));
    v["extra"] = serde_json::json!(1);
    fs::write(&bad, v.to_string()).unwrap();
    assert_eq!(run(&["km", p(&bad)]).status.code(), Some(2));
}

#[test]
fn nondeterministic_second_net_is_a_precondition_error() {
    let dir = tempfile::tempdir().unwrap();
    let mut v = read_json(&corpus().join("nets/counter.json"));
    v["transitions"]
        .as_array_mut()
        .unwrap()
        .push(serde_json::json!({"src": "p", "letter": "a", "take": [0], "put": [0], "dst": "p'"}));
    let net2 = dir.path().join("nd.json");
    fs::write(&net2, v.to_string()).unwrap();
    let net1 = corpus().join("nets/counter.json");
    let o = run(&["separate", p(&net1), p(&net2), "-o", p(&dir.path().join("out"))]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
}

fn one_state_nfa(accepting: bool) -> String {
    serde_json::json!({
        "states": [{"id": 0, "payload": {"control": "x", "vec": []}, "final": accepting}],
        "initial": [0],
        "trans": [[0, "a", [0]], [0, "b", [0]]],
    })
    .to_string()
}

#[test]
fn verify_flags_a_universal_automaton() {
    let dir = tempfile::tempdir().unwrap();
    let nfa = dir.path().join("all.json");
    fs::write(&nfa, one_state_nfa(true)).unwrap();
    let (n1, n2) = a_vs_b();
    let o = run(&["verify", p(&n1), p(&n2), p(&nfa)]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("inclusion: true"));
    assert!(out.contains("(in L(net2), accepted): b"), "{out}");
}

#[test]
fn verify_flags_an_empty_automaton() {
    let dir = tempfile::tempdir().unwrap();
    let nfa = dir.path().join("none.json");
    fs::write(&nfa, one_state_nfa(false)).unwrap();
    let (n1, n2) = a_vs_b();
    let o = run(&["verify", p(&n1), p(&n2), p(&nfa)]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("(in L(net1), rejected): a"), "{out}");
    assert!(out.contains("disjointness: true"));
}

#[test]
fn rado_member() {
    assert_eq!(stdout(&run(&["rado", "member", "<<>>"])).trim(), "true");
    assert_eq!(stdout(&run(&["rado", "member", "<>>"])).trim(), "false");
    assert_eq!(run(&["rado", "member", "<x"]).status.code(), Some(2));
}

#[test]
fn rado_suffixes() {
    let o = run(&["rado", "suffixes", "1", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("u = >>") && out.contains("v = >0"), "{out}");
    assert!(out.contains("certified: true"));
    assert_eq!(run(&["rado", "suffixes", "2", "2"]).status.code(), Some(2));
}

#[test]
fn rado_fragment_check() {
    let o = run(&["rado", "fragment-check", "--max-len", "8"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("checked 165 words, 0 mismatches"));
}

#[test]
fn bound_comes_from_flag_or_environment() {
    let net = corpus().join("nets/counter.json");
    let by_flag = stdout(&run(&["members", p(&net), "--bound", "3"]));
    let by_env = bin()
        .env("SEPWSTS_BOUND", "3")
        .args(["members", p(&net)])
        .output()
        .unwrap();
    assert_eq!(by_flag, stdout(&by_env));
    assert_eq!(by_flag.lines().collect::<Vec<_>>(), ["ε", "a", "aa", "aaa", "aab", "ab"]);
    let default = stdout(&run(&["members", p(&net)]));
    assert!(default.lines().count() > by_flag.lines().count());
}

#[test]
fn km_json_and_dot() {
    let net = corpus().join("nets/counter.json");
    let o = run(&["km", p(&net)]);
    assert_eq!(o.status.code(), Some(0));
    let cover: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(cover.as_array().unwrap().len(), 2);
    let dot = stdout(&run(&["km", p(&net), "--format", "dot"]));
    assert!(dot.starts_with("digraph km {"));
}

#[test]
fn covers_reports_basis_and_witness() {
    let net = corpus().join("nets/counter.json");
    let o = run(&["covers", p(&net), "p'", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["covered"], true);
    assert_eq!(r["witness"], serde_json::json!(["a", "a", "a", "b"]));
    let o = run(&["covers", p(&net), "p", "1,2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn membership_on_nets_and_explicit_models() {
    let net = corpus().join("nets/counter.json");
    assert_eq!(stdout(&run(&["membership", p(&net), "aab"])).trim(), "true");
    assert_eq!(stdout(&run(&["membership", p(&net), "abb"])).trim(), "false");
    let up = corpus().join("olts/up_counter.json");
    assert_eq!(stdout(&run(&["membership", p(&up), "ii"])).trim(), "true");
    assert_eq!(stdout(&run(&["membership", p(&up), "iid"])).trim(), "false");
}

#[test]
fn det_preserves_the_language() {
    let up = corpus().join("olts/up_counter.json");
    let o = run(&["det", p(&up)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let det: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let orig = RawAutomaton::from_olts_json(&read_json(&up));
    assert_eq!(RawAutomaton::from_olts_json(&det).language(6), orig.language(6));
    assert_eq!(det["initial"].as_array().unwrap().len(), 1);
    assert!(det["trans"].as_array().unwrap().iter().all(|t| t[2].as_array().unwrap().len() == 1));
    let net = corpus().join("nets/counter.json");
    assert_eq!(run(&["det", p(&net)]).status.code(), Some(3));
}

#[test]
fn members_of_explicit_model() {
    let up = corpus().join("olts/up_counter.json");
    let o = run(&["members", p(&up), "--bound", "3"]);
    let want: Vec<String> = RawAutomaton::from_olts_json(&read_json(&up))
        .language(3)
        .into_iter()
        .map(|w| w.concat())
        .collect();
    assert_eq!(stdout(&o).lines().collect::<Vec<_>>(), want);
}

#[test]
fn report_records_input_digests() {
    let dir = tempfile::tempdir().unwrap();
    let net = corpus().join("nets/counter.json");
    let report = dir.path().join("r.json");
    let o = run(&["membership", p(&net), "ab", "--report", p(&report)]);
    assert_eq!(o.status.code(), Some(0));
    let r = read_json(&report);
    assert_eq!(r["command"], "membership");
    assert_eq!(r["verdicts"]["member"], true);
    assert_eq!(r["verdicts"]["exitCode"], 0);
    let digest = hex::encode(Sha256::digest(fs::read(&net).unwrap()));
    assert_eq!(r["inputs"][0]["sha256"], digest);
    assert!(r["wallClockMs"].as_f64().unwrap() >= 0.0);
}

#[test]
fn separate_writes_golden_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let pair = corpus().join("pairs/disjoint/counter");
    let out = dir.path().join("out");
    let o = run(&[
        "separate",
        p(&pair.join("net1.json")),
        p(&pair.join("net2.json")),
        "-o",
        p(&out),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(
        fs::read(out.join("separator.json")).unwrap(),
        fs::read(corpus().join("golden/counter_separator.json")).unwrap()
    );
    let r = read_json(&out.join("report.json"));
    assert_eq!(r["verdicts"]["disjoint"], true);
    assert_eq!(r["verdicts"]["states"], 3);
    assert_eq!(r["verdicts"]["verify"]["inclusion"], true);
    assert_eq!(r["verdicts"]["verify"]["disjointness"], true);
    assert_eq!(r["verdicts"]["boundedShadow"]["violation"], serde_json::Value::Null);
    assert_eq!(r["inputs"].as_array().unwrap().len(), 2);
    assert_eq!(r["artifacts"].as_array().unwrap().len(), 3);
}
