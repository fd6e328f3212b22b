//! End-to-end acceptance checks through the `intlef` binary.
//!
//! Each test prints one `criterion N: PASS|FAIL` line. All comparisons are
//! exact.

use std::process::Command;

use serde_json::Value;

struct Row {
    id: String,
    params: String,
    status: String,
    computed: String,
    note: String,
}

struct Run {
    code: Option<i32>,
    rows: Vec<Row>,
    raw: Vec<u8>,
}

fn intlef(args: &[&str]) -> (Option<i32>, Vec<u8>) {
    let o = Command::new(env!("CARGO_BIN_EXE_intlef"))
        .args(args)
        .env_remove("LEFSCHETZ_MAX_BYTES")
        .output()
        .expect("binary runs");
    (o.status.code(), o.stdout)
}

fn verify(tags: &[&str], g_max: usize, extra: &[&str]) -> Run {
    let g = g_max.to_string();
    let mut args = vec!["verify", "--g-max", &g, "--format", "json", "--jobs", "4"];
    for t in tags {
        args.extend(["--tag", t]);
    }
    args.extend(extra);
    let (code, raw) = intlef(&args);
    let v: Value = serde_json::from_slice(&raw).expect("json report");
    let field = |r: &Value, k: &str| r[k].as_str().unwrap_or("").to_string();
    let rows = v["tables"][0]["rows"]
        .as_array()
        .expect("rows")
        .iter()
        .map(|r| Row {
            id: field(r, "id"),
            params: field(r, "params"),
            status: field(r, "status"),
            computed: field(r, "computed"),
            note: field(r, "note"),
        })
        .collect();
    Run { code, rows, raw }
}

impl Run {
    fn all_pass(&self) -> bool {
        self.code == Some(0) && !self.rows.is_empty() && self.rows.iter().all(|r| r.status == "pass")
    }

    fn failures(&self) -> Vec<String> {
        self.rows
            .iter()
            .filter(|r| r.status != "pass")
            .map(|r| format!("{} {}: {} {}", r.id, r.params, r.status, r.computed))
            .collect()
    }

    fn row(&self, id: &str, params: &str) -> Option<&Row> {
        self.rows.iter().find(|r| r.id == id && r.params == params)
    }
}

fn report(n: usize, what: &str, ok: bool, detail: &str) {
    println!(
        "criterion {n}: {} {what}{}",
        if ok { "PASS" } else { "FAIL" },
        if detail.is_empty() {
            String::new()
        } else {
            format!(" ({detail})")
        }
    );
    assert!(ok, "criterion {n} failed: {detail}");
}

#[test]
fn criterion_01_contraction_identities() {
    let r = verify(&["lemma2.1", "lemma2.2"], 5, &[]);
    let exhaustive = (1..=4).all(|g| r.row("lemma2.2", &format!("g={g} exhaustive")).is_some());
    let random = ["lemma2.1", "lemma2.2"].iter().all(|t| {
        r.row(t, "g=5 random")
            .is_some_and(|row| row.computed == "10000 random cases hold")
    });
    report(
        1,
        "contraction identities, exhaustive g<=4, 10^4 random at g=5",
        r.all_pass() && exhaustive && random,
        &r.failures().join("; "),
    );
}

#[test]
fn criterion_02_graded_pieces_and_constants() {
    let r = verify(&["thm2.9", "cor2.10"], 5, &[]);
    report(
        2,
        "graded ranks, unimodularity and graded constants for g<=5",
        r.all_pass() && r.rows.len() == 10,
        &r.failures().join("; "),
    );
}

#[test]
fn criterion_03_middle_cokernels() {
    let r = verify(&["thm3.1"], 6, &[]);
    let spot = r
        .row("thm3.1", "g=3 k=1")
        .map(|row| row.computed.clone())
        .unwrap_or_default();
    let count = (1..=6).map(|g| g + 1).sum::<usize>();
    report(
        3,
        "coker of wedge with w_k for k<=g<=6, spot (3,1) = Z/2",
        r.all_pass() && spot == "Z/2" && r.rows.len() == count,
        &format!("spot {spot}"),
    );
}

#[test]
fn criterion_04_heisenberg_routes() {
    let r = verify(&["thm3.2", "thm3.3"], 5, &[]);
    let (code, raw) = intlef(&["heisenberg", "--g", "4", "--route", "gysin", "--format", "json"]);
    let v: Value = serde_json::from_slice(&raw).unwrap();
    let mut twos = 0usize;
    for row in v["tables"][0]["rows"].as_array().unwrap() {
        for part in row["gysin"].as_str().unwrap().split(" + ") {
            if let Some(rest) = part.strip_prefix("Z/2") {
                twos += if rest.is_empty() {
                    1
                } else {
                    rest.trim_start_matches('^').parse::<usize>().unwrap()
                };
            }
        }
    }
    let ok = r.all_pass() && code == Some(0) && twos == 10;
    report(
        4,
        "Gysin = formula = filtration for g<=5; duality; H_*(N_4) torsion (Z/2)^10",
        ok,
        &format!("Z/2 count {twos}; {}", r.failures().join("; ")),
    );
}

#[test]
fn criterion_05_omega_and_exp_cokernels() {
    let r = verify(&["prop3.5a"], 6, &[]);
    let compared = (1..=6).all(|g| r.row("prop3.5a", &format!("g={g} cokernels")).is_some());
    report(
        5,
        "coker(i_w) = coker(i_(e^w-1)) by SNF and transport, equal kernels, g<=6",
        r.all_pass() && compared,
        &r.failures().join("; "),
    );
}

#[test]
fn criterion_06_shifted_filtration_and_touchard() {
    let r = verify(&["prop3.5b", "touchard"], 4, &[]);
    let touchard = r.rows.iter().filter(|row| row.id == "touchard").count();
    report(
        6,
        "shifted graded cokernels g<=4, preimage stability, Touchard k<=12",
        r.all_pass() && touchard == 13,
        &r.failures().join("; "),
    );
}

#[test]
fn criterion_07_f2_genus_four() {
    let r = verify(&["f2g4"], 4, &[]);
    let dim = |p: &str| r.row("f2g4", p).map(|row| row.computed.clone()).unwrap_or_default();
    let dims = (
        dim("g=4 dim C4"),
        dim("g=4 dim i_w F2 L6"),
        dim("g=4 dim coker(w) total"),
    );
    let cert = r
        .row("f2g4", "g=4 non-isomorphism")
        .is_some_and(|row| row.status == "pass");
    let ok = r.all_pass() && dims == ("44".into(), "26".into(), "136".into()) && cert;
    report(
        7,
        "F_2 genus 4 dimensions 44/26/136, structure checks, non-isomorphism certificate",
        ok,
        &format!("{dims:?}; {}", r.failures().join("; ")),
    );
}

#[test]
fn criterion_08_floer_model() {
    let r = verify(&["thm1.7", "cor1.8"], 6, &["--ring", "z"]);
    let first = |q: u32| {
        r.row("cor1.8", &format!("first Z/{q} g<=6"))
            .map(|row| row.computed.clone())
            .unwrap_or_default()
    };
    let stated_reported = r
        .rows
        .iter()
        .filter(|row| row.id == "cor1.8" && row.note.starts_with("stated count"))
        .count();
    let ok = r.all_pass() && first(2) == "g=3" && first(3) == "g=5" && stated_reported == 6;
    report(
        8,
        "HC = HF for g<=6; first Z/2 at g=3, first Z/3 at g=5; stated counts reported",
        ok,
        &format!("{} / {}", first(2), first(3)),
    );
}

#[test]
fn criterion_09_nondegeneracy_and_fixed_points() {
    let r = verify(&["lemma5.10"], 4, &[]);
    report(
        9,
        "witness for every nonzero kernel element; transvection fixed points = coker summand",
        r.all_pass(),
        &r.failures().join("; "),
    );
}

#[test]
fn criterion_10_thread_count_determinism() {
    let (c1, one) = intlef(&["verify", "--all", "--g-max", "4", "--jobs", "1"]);
    let (c8, eight) = intlef(&["verify", "--all", "--g-max", "4", "--jobs", "8"]);
    let json = verify(&["lemma2.5", "thm3.3", "prop3.5a"], 3, &[]);
    let json8 = {
        let (_, raw) = intlef(&[
            "verify", "--g-max", "3", "--format", "json", "--jobs", "8", "--tag", "lemma2.5", "--tag", "thm3.3",
            "--tag", "prop3.5a",
        ]);
        raw
    };
    let ok = c1 == c8 && !one.is_empty() && one == eight && json.raw == json8;
    report(
        10,
        "verify --all --g-max 4 byte-identical for --jobs 1 and --jobs 8",
        ok,
        &format!("{} vs {} bytes", one.len(), eight.len()),
    );
}
