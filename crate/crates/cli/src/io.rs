//! JSON documents for solutions (`n`, `l`, `r`) and self-maps (`n`, `f`).
//!
//! Output is canonical: keys sorted, one table row per line, trailing
//! newline, so that saving is byte-stable.

use std::fmt::Write as _;
use std::path::Path;

use fse_core::{EndoMap, PairMap};
use serde_json::{Map, Value};

use crate::error::CliError;

/// A loaded document of either kind.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Document {
    Solution(PairMap),
    Endo(EndoMap),
}

fn parse(text: &str, origin: &str) -> Result<Map<String, Value>, CliError> {
    let v: Value = serde_json::from_str(text).map_err(|e| CliError::Parse {
        origin: origin.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    match v {
        Value::Object(m) => Ok(m),
        _ => Err(CliError::Shape(format!("{origin}: top level must be an object"))),
    }
}

fn get<'a>(m: &'a Map<String, Value>, key: &str, origin: &str) -> Result<&'a Value, CliError> {
    m.get(key).ok_or_else(|| CliError::Shape(format!("{origin}: missing key \"{key}\"")))
}

fn size(m: &Map<String, Value>, origin: &str) -> Result<usize, CliError> {
    let n = get(m, "n", origin)?
        .as_u64()
        .ok_or_else(|| CliError::Shape(format!("{origin}: \"n\" must be a non-negative integer")))?;
    if n == 0 {
        return Err(CliError::Range(format!("{origin}: n must be at least 1")));
    }
    Ok(n as usize)
}

fn row(v: &Value, n: usize, what: &str, origin: &str) -> Result<Vec<usize>, CliError> {
    let arr = v.as_array().ok_or_else(|| CliError::Shape(format!("{origin}: {what} must be an array")))?;
    if arr.len() != n {
        return Err(CliError::Shape(format!("{origin}: {what} has length {}, expected {n}", arr.len())));
    }
    arr.iter()
        .enumerate()
        .map(|(i, x)| {
            let x = x
                .as_u64()
                .ok_or_else(|| CliError::Shape(format!("{origin}: {what}[{i}] is not a non-negative integer")))?;
            if x >= n as u64 {
                return Err(CliError::Range(format!("{origin}: {what}[{i}] = {x} is outside 0..{n}")));
            }
            Ok(x as usize)
        })
        .collect()
}

fn table(m: &Map<String, Value>, key: &str, n: usize, origin: &str) -> Result<Vec<usize>, CliError> {
    let rows = get(m, key, origin)?
        .as_array()
        .ok_or_else(|| CliError::Shape(format!("{origin}: \"{key}\" must be an array of rows")))?;
    if rows.len() != n {
        return Err(CliError::Shape(format!("{origin}: \"{key}\" has {} rows, expected {n}", rows.len())));
    }
    let mut out = Vec::with_capacity(n * n);
    for (x, r) in rows.iter().enumerate() {
        out.extend(row(r, n, &format!("{key}[{x}]"), origin)?);
    }
    Ok(out)
}

pub fn parse_document(text: &str, origin: &str) -> Result<Document, CliError> {
    let m = parse(text, origin)?;
    let n = size(&m, origin)?;
    if m.contains_key("f") {
        let f = row(get(&m, "f", origin)?, n, "\"f\"", origin)?;
        return Ok(Document::Endo(EndoMap::new(f)?));
    }
    let l = table(&m, "l", n, origin)?;
    let r = table(&m, "r", n, origin)?;
    Ok(Document::Solution(PairMap::new(n, l, r)?))
}

pub fn read_document(path: &Path) -> Result<Document, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    parse_document(&text, &path.display().to_string())
}

pub fn read_solution(path: &Path) -> Result<PairMap, CliError> {
    match read_document(path)? {
        Document::Solution(pm) => Ok(pm),
        Document::Endo(_) => {
            Err(CliError::Shape(format!("{}: expected a solution file (keys n, l, r)", path.display())))
        }
    }
}

pub fn read_endo(path: &Path) -> Result<EndoMap, CliError> {
    match read_document(path)? {
        Document::Endo(f) => Ok(f),
        Document::Solution(_) => {
            Err(CliError::Shape(format!("{}: expected a self-map file (keys n, f)", path.display())))
        }
    }
}

fn write_row(out: &mut String, row: &[usize]) {
    out.push('[');
    for (i, x) in row.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        let _ = write!(out, "{x}");
    }
    out.push(']');
}

fn write_table(out: &mut String, key: &str, n: usize, flat: &[usize]) {
    let _ = writeln!(out, "  \"{key}\": [");
    for x in 0..n {
        out.push_str("    ");
        write_row(out, &flat[x * n..(x + 1) * n]);
        out.push_str(if x + 1 < n { ",\n" } else { "\n" });
    }
    out.push_str("  ]");
}

pub fn solution_to_string(pm: &PairMap) -> String {
    let n = pm.n();
    let mut out = String::from("{\n");
    write_table(&mut out, "l", n, pm.left_table());
    let _ = write!(out, ",\n  \"n\": {n},\n");
    write_table(&mut out, "r", n, pm.right_table());
    out.push_str("\n}\n");
    out
}

pub fn endo_to_string(f: &EndoMap) -> String {
    let mut out = String::from("{\n  \"f\": ");
    write_row(&mut out, f.as_slice());
    let _ = write!(out, ",\n  \"n\": {}\n}}\n", f.len());
    out
}

pub fn document_to_string(d: &Document) -> String {
    match d {
        Document::Solution(pm) => solution_to_string(pm),
        Document::Endo(f) => endo_to_string(f),
    }
}

pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solution_round_trip() {
        let pm = PairMap::flip(3);
        let s = solution_to_string(&pm);
        assert_eq!(parse_document(&s, "t").unwrap(), Document::Solution(pm));
        assert!(s.ends_with("}\n"));
        assert!(s.contains("  \"n\": 3,\n"));
    }

    #[test]
    fn endo_round_trip() {
        let f = EndoMap::new(vec![1, 0, 0]).unwrap();
        let s = endo_to_string(&f);
        assert_eq!(s, "{\n  \"f\": [1, 0, 0],\n  \"n\": 3\n}\n");
        assert_eq!(parse_document(&s, "t").unwrap(), Document::Endo(f));
    }

    #[test]
    fn error_kinds() {
        let e = parse_document("{\"n\": 2,\n \"f\": [0, }", "t").unwrap_err();
        assert!(matches!(e, CliError::Parse { line: 2, .. }), "{e:?}");
        let e = parse_document("{\"n\": 2, \"f\": [0]}", "t").unwrap_err();
        assert!(matches!(e, CliError::Shape(_)));
        let e = parse_document("{\"n\": 2, \"f\": [0, 2]}", "t").unwrap_err();
        assert!(matches!(e, CliError::Range(_)));
        let e = parse_document("{\"n\": 2, \"l\": [[0, 0], [1]], \"r\": [[0, 0], [1, 1]]}", "t").unwrap_err();
        assert!(matches!(e, CliError::Shape(_)));
        let e = parse_document("{\"n\": 1}", "t").unwrap_err();
        assert!(matches!(e, CliError::Shape(_)));
        let e = parse_document("[1]", "t").unwrap_err();
        assert!(matches!(e, CliError::Shape(_)));
        assert_ne!(e.kind(), CliError::Range(String::new()).kind());
    }
}
