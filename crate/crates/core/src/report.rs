//! Check records and the text, JSON and CSV emitters shared by the CLI.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

/// One verified (or refuted, or skipped) statement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub id: String,
    pub params: String,
    pub status: Status,
    pub computed: String,
    pub expected: String,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub note: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

impl CheckReport {
    pub fn new(
        id: &str,
        params: impl Into<String>,
        holds: bool,
        computed: impl Into<String>,
        expected: impl Into<String>,
    ) -> Self {
        CheckReport {
            id: id.into(),
            params: params.into(),
            status: if holds { Status::Pass } else { Status::Fail },
            computed: computed.into(),
            expected: expected.into(),
            note: String::new(),
            wall_ms: None,
        }
    }

    pub fn skipped(id: &str, params: impl Into<String>, reason: impl Into<String>) -> Self {
        CheckReport {
            id: id.into(),
            params: params.into(),
            status: Status::Skipped,
            computed: String::new(),
            expected: String::new(),
            note: reason.into(),
            wall_ms: None,
        }
    }

    /// A failure caused by an error while computing.
    pub fn error(id: &str, params: impl Into<String>, err: &Error, expected: impl Into<String>) -> Self {
        CheckReport::new(id, params, false, format!("error: {err}"), expected)
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::Parse(format!("unknown format `{s}` (text, json, csv)"))),
        }
    }
}

/// A titled table of strings; every CLI view is rendered through one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table {
    pub title: String,
    /// Lines printed above a text table and carried as `notes` in JSON.
    pub notes: Vec<String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(title: impl Into<String>, columns: &[&str]) -> Self {
        Table {
            title: title.into(),
            notes: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn note(mut self, n: impl Into<String>) -> Self {
        self.notes.push(n.into());
        self
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

const CHECK_COLUMNS: [&str; 6] = ["id", "params", "status", "computed", "expected", "note"];

pub fn checks_table(title: &str, checks: &[CheckReport]) -> Table {
    let timed = checks.iter().any(|c| c.wall_ms.is_some());
    let mut cols: Vec<&str> = CHECK_COLUMNS.to_vec();
    if timed {
        cols.push("wall_ms");
    }
    let mut t = Table::new(title, &cols);
    for c in checks {
        let mut row = vec![
            c.id.clone(),
            c.params.clone(),
            c.status.name().to_string(),
            c.computed.clone(),
            c.expected.clone(),
            c.note.clone(),
        ];
        if timed {
            row.push(c.wall_ms.map(|w| w.to_string()).unwrap_or_default());
        }
        t.push(row);
    }
    t
}

fn text(tables: &[Table]) -> String {
    let mut out = String::new();
    for (i, t) in tables.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let _ = writeln!(out, "== {} ==", t.title);
        for n in &t.notes {
            let _ = writeln!(out, "# {n}");
        }
        let widths: Vec<usize> = (0..t.columns.len())
            .map(|j| {
                t.rows
                    .iter()
                    .map(|r| r[j].chars().count())
                    .chain([t.columns[j].chars().count()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |cells: &[String]| {
            let mut s = String::new();
            for (j, c) in cells.iter().enumerate() {
                if j + 1 == cells.len() {
                    s.push_str(c);
                } else {
                    s.push_str(c);
                    s.extend(std::iter::repeat(' ').take(widths[j] - c.chars().count() + 2));
                }
            }
            s.trim_end().to_string()
        };
        let _ = writeln!(out, "{}", line(&t.columns));
        for r in &t.rows {
            let _ = writeln!(out, "{}", line(r));
        }
    }
    out
}

#[derive(Serialize)]
struct JsonDoc<'a> {
    schema: u32,
    tables: Vec<JsonTable<'a>>,
}

#[derive(Serialize)]
struct JsonTable<'a> {
    title: &'a str,
    notes: &'a [String],
    rows: Vec<serde_json::Map<String, serde_json::Value>>,
}

fn json(tables: &[Table]) -> Result<String> {
    let doc = JsonDoc {
        schema: SCHEMA_VERSION,
        tables: tables
            .iter()
            .map(|t| JsonTable {
                title: &t.title,
                notes: &t.notes,
                rows: t
                    .rows
                    .iter()
                    .map(|r| {
                        t.columns
                            .iter()
                            .zip(r)
                            .map(|(c, v)| (c.clone(), serde_json::Value::String(v.clone())))
                            .collect()
                    })
                    .collect(),
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).map_err(|e| Error::Internal(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// One CSV block per table, with a leading `table` column and blank lines between.
fn csv_text(tables: &[Table]) -> Result<String> {
    let mut out = Vec::new();
    for (i, t) in tables.iter().enumerate() {
        if i > 0 {
            out.push(b'\n');
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Internal(e.to_string());
        w.write_record(std::iter::once("table").chain(t.columns.iter().map(String::as_str)))
            .map_err(io)?;
        for r in &t.rows {
            w.write_record(std::iter::once(t.title.as_str()).chain(r.iter().map(String::as_str)))
                .map_err(io)?;
        }
        out.extend(w.into_inner().map_err(|e| Error::Internal(e.to_string()))?);
    }
    String::from_utf8(out).map_err(|e| Error::Internal(e.to_string()))
}

pub fn emit(tables: &[Table], format: Format) -> Result<String> {
    match format {
        Format::Text => Ok(text(tables)),
        Format::Json => json(tables),
        Format::Csv => csv_text(tables),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new("demo", &["g", "H"]).note("per U-period");
        t.push(vec!["1".into(), "Z^2".into()]);
        t.push(vec!["2".into(), "Z^5 + Z/2".into()]);
        t
    }

    #[test]
    fn text_alignment() {
        let s = emit(&[sample()], Format::Text).unwrap();
        assert_eq!(s, "== demo ==\n# per U-period\ng  H\n1  Z^2\n2  Z^5 + Z/2\n");
    }

    #[test]
    fn empty_tables_keep_headers() {
        let t = Table::new("empty", &["a", "b"]);
        assert_eq!(emit(&[t.clone()], Format::Text).unwrap(), "== empty ==\na  b\n");
        assert_eq!(emit(&[t], Format::Csv).unwrap(), "table,a,b\n");
    }

    #[test]
    fn json_round_trip() {
        let s = emit(&[sample()], Format::Json).unwrap();
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["schema"], SCHEMA_VERSION);
        assert_eq!(v["tables"][0]["rows"][1]["H"], "Z^5 + Z/2");
    }

    #[test]
    fn csv_quotes() {
        let mut t = Table::new("q", &["x"]);
        t.push(vec!["a, b".into()]);
        assert_eq!(emit(&[t], Format::Csv).unwrap(), "table,x\nq,\"a, b\"\n");
    }

    #[test]
    fn failures_carry_both_payloads() {
        let c = CheckReport::new("x", "g=1", false, "Z", "Z/2");
        assert_eq!(c.status, Status::Fail);
        assert!(!c.computed.is_empty() && !c.expected.is_empty());
    }
}
