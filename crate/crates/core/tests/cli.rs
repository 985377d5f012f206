use std::process::{Command, Output};

use serde_json::Value;

fn rootlat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rootlat")).args(args).output().expect("run rootlat")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("JSON document")
}

#[test]
fn rootsys_info() {
    let o = rootlat(&["rootsys", "info", "B3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["system"], "B3");
    assert_eq!(v["result"]["roots"], 18);
    assert_eq!(v["result"]["weyl_order"], 48);
    assert_eq!(v["result"]["degrees"], serde_json::json!([2, 4, 6]));
    assert!(v["tool_version"].is_string());
}

#[test]
fn census_rows_and_mismatch_code() {
    let o = rootlat(&["census", "table1", "--types", "A2", "--families", "posets"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "type,family,count,reference_count,match\nA2,posets,19,19,match\n");

    let o = rootlat(&["census", "table1", "--types", "A1..A3", "--families", "coip"]);
    let text = stdout(&o);
    assert!(text.contains("A3,coip(bip),70,70,match"));
    assert!(text.contains("A3,coip(lin),68,68,match"));

    let o = rootlat(&["census", "table1", "--types", "D4", "--families", "posets"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("mismatch"));
}

#[test]
fn hasse_dot() {
    let o = rootlat(&["hasse", "--type", "A2", "--family", "posets", "--format", "dot"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("digraph"));
    assert_eq!(text.matches("[label=").count(), 19);
    let o = rootlat(&["hasse", "--type", "A2", "--family", "woep", "--format", "json"]);
    let v = json(&o);
    assert_eq!(v["result"]["nodes"].as_array().unwrap().len(), 6);
    assert_eq!(v["result"]["edges"].as_array().unwrap().len(), 6);
}

#[test]
fn conjecture_and_counterexamples() {
    let o = rootlat(&["check-conjecture", "coip-sublattice", "--type", "B2", "--coxeter", "lin"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["result"][0]["verified"], true);
    let o = rootlat(&["counterexample", "all"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(json(&o)["result"].as_array().unwrap().iter().all(|r| r["reproduced"] == true));
}

#[test]
fn family_files_round_trip() {
    let dir = std::env::temp_dir().join(format!("rootlat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for family in ["woip", "coip", "cofp", "boep"] {
        let path = dir.join(format!("{family}.json"));
        let p = path.to_str().unwrap();
        let o = rootlat(&["families", "build", "--type", "A3", "--family", family, "--coxeter", "bip", "--out", p]);
        assert_eq!(o.status.code(), Some(0), "{family}");
        let o = rootlat(&["families", "verify", "--type", "A3", "--family", family, "--coxeter", "bip", "--in", p]);
        assert_eq!(o.status.code(), Some(0), "{family}");
        assert_eq!(json(&o)["result"]["valid"], true);
    }
    // a WOIP member that is not a WOEP member is rejected
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"["{}"]"#).unwrap();
    let o = rootlat(&["families", "verify", "--type", "A2", "--family", "woep", "--in", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn order_compare() {
    let o =
        rootlat(&["order", "compare", "--type", "A2", "--left", "-[1,0],+[0,1]", "--right", "{}", "--level", "posets"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["result"]["left_le_right"], false);
    assert_eq!(v["result"]["meet"], "+[0,1]");
    assert_eq!(v["result"]["join"], "-[1,0]");
}

#[test]
fn exit_codes() {
    assert_eq!(rootlat(&[]).status.code(), Some(2));
    assert_eq!(rootlat(&["rootsys", "info", "Z9"]).status.code(), Some(2));
    assert_eq!(rootlat(&["families", "build", "--type", "A2", "--family", "nope"]).status.code(), Some(2));
    let o =
        rootlat(&["order", "compare", "--type", "A2", "--left", "+[1,0],-[1,0]", "--right", "{}", "--level", "posets"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(
        rootlat(&["lattice", "verify", "--type", "A3", "--level", "closed", "--cap", "10"]).status.code(),
        Some(3)
    );
    let o = rootlat(&["--threads", "2", "--seed", "7", "lattice", "verify", "--type", "B2", "--level", "posets"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["result"]["size"], 37);
}
