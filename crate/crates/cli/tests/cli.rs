use std::process::{Command, Output};

fn intlef(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_intlef"))
        .args(args)
        .env_remove("LEFSCHETZ_MAX_BYTES")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn heisenberg_genus_two_matches_fixture() {
    let text = intlef(&["heisenberg", "--g", "2"]);
    assert_eq!(text.status.code(), Some(0));
    assert_eq!(stdout(&text), include_str!("fixtures/heisenberg_g2.txt"));
    let csv = intlef(&["heisenberg", "--g", "2", "--format", "csv"]);
    assert_eq!(stdout(&csv), include_str!("fixtures/heisenberg_g2.csv"));
    let groups: Vec<String> = stdout(&csv)
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(2).unwrap().to_string())
        .collect();
    assert_eq!(groups, ["Z", "Z^4", "Z^5", "Z^5", "Z^4", "Z"]);
}

#[test]
fn json_is_versioned_and_parses() {
    let o = intlef(&["floer", "hf", "--g", "3", "--ring", "z", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], 1);
    assert!(v["tables"][0]["notes"][0].as_str().unwrap().contains("U-period"));
    let rows = v["tables"][0]["rows"].as_array().unwrap();
    let total_odd = rows
        .iter()
        .find(|r| r["group"] == "total" && r["parity"] == "odd")
        .unwrap();
    assert!(total_odd["value"].as_str().unwrap().starts_with("Z^"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(intlef(&["verify", "--tag", "lemma9.9"]).status.code(), Some(2));
    assert_eq!(intlef(&["verify"]).status.code(), Some(2));
    assert_eq!(intlef(&["coker", "--k", "1"]).status.code(), Some(2));
    assert_eq!(intlef(&["verify", "--all", "--g-max", "9"]).status.code(), Some(2));
    assert_eq!(
        intlef(&["floer", "hc", "--g", "2", "--ring", "f4"]).status.code(),
        Some(2)
    );
    assert_eq!(intlef(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn empty_range_passes_with_headers_only() {
    let o = intlef(&["verify", "--tag", "lemma2.2", "--g-max", "0", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(
        out.starts_with("table,id,params,status,computed,expected,note\n\n"),
        "{out}"
    );
}

#[test]
fn failing_checks_exit_one() {
    let o = intlef(&["verify", "--tag", "lemma5.10", "--g-max", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("fail"));
}

#[test]
fn help_lists_every_tag() {
    let o = intlef(&["verify", "--help"]);
    let help = stdout(&o);
    for t in intlef::suite::TAGS {
        assert!(help.contains(t.tag), "{}", t.tag);
    }
}

#[test]
fn spot_values() {
    let o = intlef(&[
        "coker", "--g", "3", "--k", "1", "--form", "omega", "--graded", "--format", "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains(",wedge,Z/2\n"));
    let o = intlef(&["floer", "torsion", "--g-max", "4", "--format", "csv"]);
    assert!(stdout(&o).contains(",4,Z^252 + Z/2^10,"));
    let o = intlef(&["lefschetz", "filtration", "--g", "2", "--k", "2", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let o = intlef(&["touchard", "--k", "3", "--format", "csv"]);
    assert!(stdout(&o).contains(",coker E,Z + Z/6\n"));
}

#[test]
fn memory_guard_skips_large_genera() {
    let o = Command::new(env!("CARGO_BIN_EXE_intlef"))
        .args(["verify", "--tag", "thm2.9", "--g-max", "2", "--format", "csv"])
        .env("LEFSCHETZ_MAX_BYTES", "1024")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains(",thm2.9,g=1,pass,"));
    assert!(out.contains(",thm2.9,g=2,skipped,"));
}
