//! The embedded knot table and its loader.
//!
//! One knot per line, `name: PD  # tags`, where the tags are a comma
//! separated list; `torus` marks torus knots. Entries are re-validated on
//! load.

use std::fmt;
use std::path::Path;

use knotperi_core::diagram::{compute_regions, parse_pd, PdCode};

pub const EMBEDDED: &str = include_str!("../data/knots.txt");

/// Environment variable naming a table file to use instead of the embedded one.
pub const TABLE_ENV: &str = "KNOTPERI_TABLE";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnotTableEntry {
    pub name: String,
    pub pd: PdCode,
    pub is_torus: bool,
}

impl KnotTableEntry {
    pub fn crossings(&self) -> usize {
        self.pd.crossing_count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for TableError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "knot table: {}", self.message)
        } else {
            write!(f, "knot table line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for TableError {}

pub fn parse_table(text: &str) -> Result<Vec<KnotTableEntry>, TableError> {
    let mut out: Vec<KnotTableEntry> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |message: String| TableError { line, message };
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (name, rest) = trimmed.split_once(':').ok_or_else(|| err("expected `name: PD`".into()))?;
        let name = name.trim();
        if name.is_empty() || name.contains(char::is_whitespace) {
            return Err(err(format!("bad knot name {name:?}")));
        }
        let (pd_text, tags) = match rest.split_once('#') {
            Some((pd, tags)) => (pd, tags),
            None => (rest, ""),
        };
        let is_torus = tags.split(',').any(|t| t.trim() == "torus");
        let pd = parse_pd(pd_text).map_err(|e| err(format!("{name}: {e}")))?;
        let d = compute_regions(&pd, None).map_err(|e| err(format!("{name}: {e}")))?;
        let report = d.validate();
        if !report.is_valid() {
            return Err(err(format!("{name}: {}", report.problems.join("; "))));
        }
        if out.iter().any(|e| e.name == name) {
            return Err(err(format!("duplicate knot name {name}")));
        }
        out.push(KnotTableEntry { name: name.to_string(), pd, is_torus });
    }
    Ok(out)
}

pub fn load_file(path: &Path) -> Result<Vec<KnotTableEntry>, TableError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| TableError { line: 0, message: format!("{}: {e}", path.display()) })?;
    parse_table(&text)
}

/// The table named by `KNOTPERI_TABLE`, or the embedded one.
pub fn load() -> Result<Vec<KnotTableEntry>, TableError> {
    match std::env::var_os(TABLE_ENV) {
        Some(path) if !path.is_empty() => load_file(Path::new(&path)),
        _ => parse_table(EMBEDDED),
    }
}

pub fn find<'a>(table: &'a [KnotTableEntry], name: &str) -> Option<&'a KnotTableEntry> {
    table.iter().find(|e| e.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_table_loads() {
        let t = parse_table(EMBEDDED).unwrap();
        assert_eq!(t.len(), 32);
        let torus: Vec<&str> = t.iter().filter(|e| e.is_torus).map(|e| e.name.as_str()).collect();
        assert_eq!(torus, ["3_1", "5_1", "7_1"]);
        assert_eq!(find(&t, "8_18").unwrap().crossings(), 8);
    }

    #[test]
    fn rejects_bad_lines() {
        assert_eq!(parse_table("3_1 X(1,4,2,5)").unwrap_err().line, 1);
        let dup = "a: X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)\na: X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)\n";
        assert!(parse_table(dup).unwrap_err().message.contains("duplicate"));
        let nugatory = "# comment\n\nk: X(1,4,2,5) X(3,8,4,1) X(5,2,6,3) X(6,7,7,8)";
        assert_eq!(parse_table(nugatory).unwrap_err().line, 3);
    }
}
