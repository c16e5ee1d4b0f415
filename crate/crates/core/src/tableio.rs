//! Reading and writing Cayley tables.
//!
//! Text format: first line is the order n, then n rows of n integers
//! separated by single spaces, with a trailing newline. The JSON format
//! mirrors it as {"order", "mul", optional "name"}. Tables whose symbols are
//! not 0-based (e.g. 1..n, or arbitrary integer labels) are normalized by
//! sorting the distinct symbols and relabeling.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::quasigroup::Quasigroup;

#[derive(Serialize, Deserialize)]
struct TableFile {
    order: usize,
    mul: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
}

pub fn write_table_text(q: &Quasigroup) -> String {
    let mut out = format!("{}\n", q.order());
    for row in q.rows() {
        let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn read_table_text(s: &str) -> Result<Quasigroup, Error> {
    let mut lines = s.lines();
    let first = lines.next().ok_or(Error::EmptyTable)?;
    let n: usize = first
        .trim()
        .parse()
        .map_err(|_| Error::TableFormat(format!("first line must be the order, got `{first}`")))?;
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let line = lines
            .next()
            .ok_or_else(|| Error::TableFormat(format!("expected {n} rows")))?;
        let row: Vec<usize> = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| Error::TableFormat(format!("bad entry `{tok}`")))
            })
            .collect::<Result<_, _>>()?;
        rows.push(row);
    }
    if lines.any(|l| !l.trim().is_empty()) {
        return Err(Error::TableFormat("trailing content after the table".into()));
    }
    from_rows_normalized(rows)
}

pub fn write_table_json(q: &Quasigroup, name: Option<&str>) -> String {
    let file = TableFile { order: q.order(), mul: q.rows(), name: name.map(str::to_string) };
    let mut s = serde_json::to_string(&file).expect("table serialization cannot fail");
    s.push('\n');
    s
}

pub fn read_table_json(s: &str) -> Result<(Quasigroup, Option<String>), Error> {
    let file: TableFile =
        serde_json::from_str(s).map_err(|e| Error::TableFormat(e.to_string()))?;
    if file.mul.len() != file.order {
        return Err(Error::TableFormat(format!(
            "order field says {} but mul has {} rows",
            file.order,
            file.mul.len()
        )));
    }
    Ok((from_rows_normalized(file.mul)?, file.name))
}

/// Sniffs the format: a leading '{' means JSON, anything else is text.
pub fn read_table_auto(s: &str) -> Result<(Quasigroup, Option<String>), Error> {
    if s.trim_start().starts_with('{') {
        read_table_json(s)
    } else {
        Ok((read_table_text(s)?, None))
    }
}

/// Accepts tables over any integer symbol set: if the entries are not
/// already 0..n-1, the n distinct symbols (when there are exactly n) are
/// mapped to 0..n-1 in sorted order.
fn from_rows_normalized(rows: Vec<Vec<usize>>) -> Result<Quasigroup, Error> {
    let n = rows.len();
    let already_canonical = rows.iter().flatten().all(|&v| v < n);
    if already_canonical {
        return Quasigroup::from_mul_table(&rows);
    }
    let mut symbols: Vec<usize> = rows.iter().flatten().copied().collect();
    symbols.sort_unstable();
    symbols.dedup();
    if symbols.len() != n {
        // no sensible relabeling exists; report the first oversized entry
        return Quasigroup::from_mul_table(&rows);
    }
    let relabeled: Vec<Vec<usize>> = rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| symbols.binary_search(v).unwrap())
                .collect()
        })
        .collect();
    Quasigroup::from_mul_table(&relabeled)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z3() -> Quasigroup {
        Quasigroup::cyclic(3)
    }

    #[test]
    fn text_format_is_byte_exact() {
        assert_eq!(write_table_text(&z3()), "3\n0 1 2\n1 2 0\n2 0 1\n");
        assert_eq!(read_table_text("3\n0 1 2\n1 2 0\n2 0 1\n").unwrap(), z3());
    }

    #[test]
    fn text_round_trips() {
        for q in [z3(), Quasigroup::cyclic(1), Quasigroup::cyclic(5)] {
            assert_eq!(read_table_text(&write_table_text(&q)).unwrap(), q);
        }
    }

    #[test]
    fn one_based_symbols_are_normalized() {
        let q = read_table_text("3\n1 2 3\n2 3 1\n3 1 2\n").unwrap();
        assert_eq!(q, z3());
    }

    #[test]
    fn json_round_trips_with_name() {
        let s = write_table_json(&z3(), Some("z3"));
        assert_eq!(s, "{\"order\":3,\"mul\":[[0,1,2],[1,2,0],[2,0,1]],\"name\":\"z3\"}\n");
        let (q, name) = read_table_json(&s).unwrap();
        assert_eq!(q, z3());
        assert_eq!(name.as_deref(), Some("z3"));

        let bare = write_table_json(&z3(), None);
        assert_eq!(bare, "{\"order\":3,\"mul\":[[0,1,2],[1,2,0],[2,0,1]]}\n");
    }

    #[test]
    fn auto_sniffs_json_vs_text() {
        assert_eq!(read_table_auto("3\n0 1 2\n1 2 0\n2 0 1\n").unwrap().0, z3());
        assert_eq!(read_table_auto(" {\"order\":1,\"mul\":[[0]]}").unwrap().0, Quasigroup::cyclic(1));
    }

    #[test]
    fn malformed_tables_are_rejected_with_diagnostics() {
        assert!(matches!(read_table_text(""), Err(Error::EmptyTable)));
        assert!(matches!(read_table_text("x\n"), Err(Error::TableFormat(_))));
        assert!(matches!(read_table_text("2\n0 1\n"), Err(Error::TableFormat(_))));
        assert!(matches!(read_table_text("2\n0 1\n1 0\njunk\n"), Err(Error::TableFormat(_))));
        // normalization cannot rescue a grid with too many distinct symbols
        assert!(read_table_text("2\n0 7\n9 0\n").is_err());
    }
}
