//! Plain-text matrix dump:
//!
//! ```text
//! coeffmatrix <nrows> <ncols> <field>
//! provenance <free text>
//! <row> <col> <value>
//! ...
//! ```

use std::fmt::Write as _;

use super::matrix::CoeffMatrix;
use crate::error::{Error, Result};
use crate::field::FieldDescriptor;

/// Dimension ceiling accepted when reading a dump.
pub const MAX_DUMP_DIM: usize = 1 << 20;

pub fn write_dump(m: &CoeffMatrix) -> String {
    let mut out = String::new();
    writeln!(out, "coeffmatrix {} {} {}", m.nrows, m.ncols, m.field).unwrap();
    writeln!(out, "provenance {}", m.provenance.replace('\n', " ")).unwrap();
    for (r, row) in m.rows.iter().enumerate() {
        for (c, v) in row {
            writeln!(out, "{r} {c} {v}").unwrap();
        }
    }
    out
}

fn line_err<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { pos: line, msg: msg.into() })
}

/// Reads a dump back; `pos` in parse errors is the 1-based line number.
pub fn parse_dump(text: &str) -> Result<CoeffMatrix> {
    let mut lines = text.lines().enumerate();
    let Some((_, header)) = lines.next() else { return line_err(1, "missing header") };
    let fields: Vec<&str> = header.split_whitespace().collect();
    let (nrows, ncols, field) = match fields.as_slice() {
        ["coeffmatrix", r, c, f] => {
            let r: usize = r.parse().or_else(|_| line_err(1, "bad row count"))?;
            let c: usize = c.parse().or_else(|_| line_err(1, "bad column count"))?;
            let f: FieldDescriptor = f.parse()?;
            (r, c, f)
        }
        _ => return line_err(1, "expected `coeffmatrix <nrows> <ncols> <field>`"),
    };
    if nrows > MAX_DUMP_DIM || ncols > MAX_DUMP_DIM {
        return line_err(1, "matrix dimensions too large");
    }
    let provenance = match lines.next() {
        Some((_, l)) => match l.strip_prefix("provenance") {
            Some(rest) => rest.trim().to_string(),
            None => return line_err(2, "expected provenance line"),
        },
        None => return line_err(2, "missing provenance line"),
    };
    let mut rows: Vec<Vec<(usize, crate::field::Scalar)>> = vec![Vec::new(); nrows];
    for (i, l) in lines {
        let lineno = i + 1;
        if l.trim().is_empty() {
            continue;
        }
        let parts: Vec<&str> = l.split_whitespace().collect();
        let [r, c, v] = parts.as_slice() else { return line_err(lineno, "expected `row col value`") };
        let r: usize = r.parse().or_else(|_| line_err(lineno, "bad row index"))?;
        let c: usize = c.parse().or_else(|_| line_err(lineno, "bad column index"))?;
        if r >= nrows || c >= ncols {
            return line_err(lineno, "index out of range");
        }
        let value = field.parse_scalar(v)?;
        if field.is_zero(&value) {
            return line_err(lineno, "explicit zero entry");
        }
        if rows[r].iter().any(|e| e.0 == c) {
            return line_err(lineno, "duplicate entry");
        }
        rows[r].push((c, value));
    }
    for r in rows.iter_mut() {
        r.sort_by_key(|e| e.0);
    }
    Ok(CoeffMatrix {
        field,
        nrows,
        ncols,
        rows,
        row_labels: Vec::new(),
        col_labels: Vec::new(),
        provenance,
    })
}
