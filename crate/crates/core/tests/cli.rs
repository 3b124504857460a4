use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ringext"))
}

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus").join(format!("{name}.json"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn temp(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ringext-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn analyze_trivial_extension_sets_every_flag() {
    let p = corpus("q-s3-over-q-s3");
    let out = run(&["analyze", "--json", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    for k in ["separable", "split", "h_separable", "left_d2", "right_d2"] {
        assert_eq!(v["classification"][k], true, "{k}");
    }
}

#[test]
fn certify_separable_on_f2_has_no_certificate() {
    let p = corpus("f2-c2-over-f2");
    let out = run(&["certify", "separable", p.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], false);
    assert!(v["certificates"]["separability_element"].is_null());
}

#[test]
fn non_associative_table_exits_1_with_the_triple() {
    let p = temp(
        "nonassoc.json",
        r#"{"field": "Q", "algebra": {"dim": 3, "unit": [1, 0, 0],
            "mult": [[[1,0,0],[0,1,0],[0,0,1]],[[0,1,0],[0,0,1],[0,0,0]],[[0,0,1],[0,0,0],[0,1,0]]]},
            "subalgebra": "ground"}"#,
    );
    let out = run(&["analyze", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("triple (1, 1, 2)"), "{err}");
}

#[test]
fn malformed_json_exits_1_with_location() {
    let p = temp("broken.json", "{\"field\": \"Q\",\n \"algebra\": [}\n");
    let out = run(&["analyze", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn certificates_round_trip_through_verify() {
    let p = corpus("q-s3-over-q-a3");
    for kind in ["separable", "split", "d2-left", "d2-right"] {
        let out = run(&["certify", kind, p.to_str().unwrap(), "--json"]);
        let saved = temp(&format!("{kind}.json"), std::str::from_utf8(&out.stdout).unwrap());
        let check = run(&["verify", saved.to_str().unwrap(), "--json"]);
        assert_eq!(check.status.code(), Some(0), "{kind}");
        assert_eq!(json(&check)["all_verified"], true);
    }
}

#[test]
fn tampered_report_fails_verification() {
    let p = corpus("q-c2-over-q");
    let out = run(&["certify", "separable", p.to_str().unwrap(), "--json"]);
    let mut v = json(&out);
    v["certificates"]["separability_element"]["e"][1] = serde_json::json!("5/3");
    let saved = temp("tampered.json", &v.to_string());
    assert_eq!(run(&["verify", saved.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn same_seed_gives_identical_bytes() {
    let p = corpus("q-q8-over-q-c4");
    let a = run(&["analyze", "--json", "--seed", "11", p.to_str().unwrap()]);
    let b = run(&["analyze", "--json", "--seed", "11", p.to_str().unwrap()]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["seed"], 11);
}

#[test]
fn equivalence_on_unknown_module_is_an_input_error() {
    let p = corpus("q-c2-over-q");
    let out = run(&["equivalence", p.to_str().unwrap(), "--module", "nope"]);
    assert_eq!(out.status.code(), Some(1));
    let ok = run(&["equivalence", p.to_str().unwrap(), "--module", "random-right", "--json"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(json(&ok)["equivalences"].as_array().unwrap().iter().all(|e| e["verified"] == true));
}

#[test]
fn hopf_command_covers_every_subgroup() {
    let q8 = ringext::GroupData::quaternion();
    let doc = serde_json::json!({ "name": "Q8", "field": "Q", "group": { "order": 8, "cayley": q8.cayley() } });
    let p = temp("q8.json", &doc.to_string());
    let out = run(&["hopf", p.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["subgroups"].as_array().unwrap().len(), 6);
    assert_eq!(v["all_agree"], true);
}

#[test]
fn text_is_the_default() {
    let p = corpus("q-q-over-q");
    let out = run(&["normality", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("verdict: normal on sampled ideals"), "{s}");
}
