//! Intersection tables of thrackled polygons.
//!
//! Row `i` of a table lists, in order along edge `e_i` from `v_i` toward
//! `v_{i+1}`, the `n - 3` edges that `e_i` crosses. Edge labels are always
//! normalized to `1..=n`.
//!
//! A table is a *musquash* table when row 1 generates every row by the shift
//! `row_i = row_1 + (i - 1)`, and a *bi-musquash* table when row 1 generates
//! the odd rows (shift `i - 1`) and row 2 the even rows (shift `i - 2`).

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Version tag written into every structured document this crate emits.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("polygon length {0} is too small (need n >= 5)")]
    TooSmall(usize),
    #[error("expected {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("row {row}: expected {expected} entries, found {found}")]
    RowLength {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("row {row}, entry {col}: label {value} is outside 1..={n}")]
    OutOfRange {
        row: usize,
        col: usize,
        value: i64,
        n: usize,
    },
    #[error("row {row}, entry {col}: edge {value} is the edge itself or one of its neighbours")]
    NotCrossable { row: usize, col: usize, value: usize },
    #[error("row {row}: edge {value} appears more than once")]
    Duplicate { row: usize, value: usize },
    #[error("bi-musquash requires even n (got {0})")]
    OddLength(usize),
    #[error("generator pair has no second row")]
    MissingRow2,
    #[error("{0}")]
    Generator(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

/// An edge `e_i` of an `n`-gon, `1 <= i <= n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(usize);

impl EdgeId {
    pub fn new(value: usize, n: usize) -> Result<Self, TableError> {
        if value == 0 || value > n {
            return Err(TableError::OutOfRange {
                row: 0,
                col: 0,
                value: value as i64,
                n,
            });
        }
        Ok(EdgeId(value))
    }

    pub fn get(self) -> usize {
        self.0
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// Shift a label by `k` modulo `n`, keeping the representative in `1..=n`.
pub fn shift_label(label: usize, k: i64, n: usize) -> usize {
    let n_i = n as i64;
    ((label as i64 - 1 + k).rem_euclid(n_i) + 1) as usize
}

/// True when edges `a` and `b` of an `n`-gon share a vertex (or are equal).
pub fn adjacent_or_equal(a: usize, b: usize, n: usize) -> bool {
    let d = (a as i64 - b as i64).rem_euclid(n as i64) as usize;
    d == 0 || d == 1 || d == n - 1
}

fn check_row(n: usize, row_index: usize, row: &[usize]) -> Result<(), TableError> {
    if row.len() != n - 3 {
        return Err(TableError::RowLength {
            row: row_index,
            expected: n - 3,
            found: row.len(),
        });
    }
    let mut seen = vec![false; n + 1];
    for (col, &value) in row.iter().enumerate() {
        if value == 0 || value > n {
            return Err(TableError::OutOfRange {
                row: row_index,
                col: col + 1,
                value: value as i64,
                n,
            });
        }
        if adjacent_or_equal(value, row_index, n) {
            return Err(TableError::NotCrossable {
                row: row_index,
                col: col + 1,
                value,
            });
        }
        if seen[value] {
            return Err(TableError::Duplicate {
                row: row_index,
                value,
            });
        }
        seen[value] = true;
    }
    Ok(())
}

/// Checks every row of a candidate table. Returns the first violation found.
pub fn validate_rows(n: usize, rows: &[Vec<usize>]) -> Result<(), TableError> {
    if n < 5 {
        return Err(TableError::TooSmall(n));
    }
    if rows.len() != n {
        return Err(TableError::RowCount {
            expected: n,
            found: rows.len(),
        });
    }
    for (i, row) in rows.iter().enumerate() {
        check_row(n, i + 1, row)?;
    }
    // Each crossing {i, j} must be listed in both incident rows. With the
    // permutation property above this always holds; it is checked anyway.
    let mut count = vec![0u8; n * n];
    for (i, row) in rows.iter().enumerate() {
        for &j in row {
            let (a, b) = if i + 1 < j { (i + 1, j) } else { (j, i + 1) };
            count[(a - 1) * n + (b - 1)] += 1;
        }
    }
    debug_assert_eq!(
        count.iter().filter(|&&c| c == 2).count(),
        n * (n - 3) / 2
    );
    Ok(())
}

/// A validated `n x (n-3)` intersection table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntersectionTable {
    n: usize,
    rows: Vec<Vec<usize>>,
}

impl IntersectionTable {
    pub fn new(n: usize, rows: Vec<Vec<usize>>) -> Result<Self, TableError> {
        validate_rows(n, &rows)?;
        Ok(IntersectionTable { n, rows })
    }

    /// Builds a table from rows that are known to be valid. Only used by
    /// the symmetry operations below, which map valid tables to valid tables.
    fn from_valid(n: usize, rows: Vec<Vec<usize>>) -> Self {
        debug_assert!(validate_rows(n, &rows).is_ok());
        IntersectionTable { n, rows }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    /// Row of edge `e_i`, 1-based.
    pub fn row(&self, i: usize) -> &[usize] {
        &self.rows[i - 1]
    }

    pub fn into_rows(self) -> Vec<Vec<usize>> {
        self.rows
    }

    /// Number of distinct crossing pairs, `n(n-3)/2`.
    pub fn crossing_count(&self) -> usize {
        self.n * (self.n - 3) / 2
    }

    /// Rows concatenated in order; the key used for lexicographic comparison.
    pub fn flatten(&self) -> Vec<usize> {
        self.rows.iter().flatten().copied().collect()
    }

    pub fn classify(&self) -> TableClassification {
        classify_rows(self.n, &self.rows)
    }

    pub fn rotate(&self, k: i64) -> Self {
        rotate(self, k)
    }

    pub fn mirror(&self) -> Self {
        mirror(self)
    }

    pub fn reverse_traversal(&self) -> Self {
        reverse_traversal(self)
    }

    pub fn canonical_form(&self) -> Self {
        canonical_form(self)
    }

    /// Generator pair read off rows 1 and 2.
    pub fn generators(&self) -> GeneratorPair {
        GeneratorPair {
            n: self.n,
            row1: self.rows[0].clone(),
            row2: Some(self.rows[1].clone()),
        }
    }
}

fn shifted(row: &[usize], k: i64, n: usize) -> Vec<usize> {
    row.iter().map(|&v| shift_label(v, k, n)).collect()
}

/// Rows 1 and 2 of a (bi-)musquash table. For musquash-style generation only
/// `row1` is present.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GeneratorPair {
    pub n: usize,
    pub row1: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub row2: Option<Vec<usize>>,
}

impl GeneratorPair {
    pub fn new(n: usize, row1: Vec<usize>, row2: Option<Vec<usize>>) -> Result<Self, TableError> {
        if n < 5 {
            return Err(TableError::TooSmall(n));
        }
        check_row(n, 1, &row1)?;
        if let Some(r2) = &row2 {
            check_row(n, 2, r2)?;
        }
        Ok(GeneratorPair { n, row1, row2 })
    }
}

/// Expands row 1 by condition (d): `row_i[t] = row_1[t] + (i - 1) mod n`.
pub fn expand_musquash(row1: &[usize], n: usize) -> Result<IntersectionTable, TableError> {
    if n < 5 {
        return Err(TableError::TooSmall(n));
    }
    check_row(n, 1, row1)?;
    let rows = (0..n).map(|i| shifted(row1, i as i64, n)).collect();
    Ok(IntersectionTable::from_valid(n, rows))
}

/// Expands a generator pair by condition (d'): odd rows from row 1 shifted by
/// `i - 1`, even rows from row 2 shifted by `i - 2`.
pub fn expand_bimusquash(gen: &GeneratorPair) -> Result<IntersectionTable, TableError> {
    let n = gen.n;
    if n % 2 == 1 {
        return Err(TableError::OddLength(n));
    }
    let row2 = gen.row2.as_ref().ok_or(TableError::MissingRow2)?;
    GeneratorPair::new(n, gen.row1.clone(), Some(row2.clone()))?;
    let rows = (1..=n)
        .map(|i| {
            if i % 2 == 1 {
                shifted(&gen.row1, i as i64 - 1, n)
            } else {
                shifted(row2, i as i64 - 2, n)
            }
        })
        .collect();
    Ok(IntersectionTable::from_valid(n, rows))
}

/// The two conjectured generator families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GeneratorSet {
    Set1,
    Set2,
}

fn check_p(p: usize) -> Result<(), TableError> {
    if p % 2 == 0 || p < 5 {
        return Err(TableError::Generator(format!(
            "p must be odd and at least 5 (got {p}); n = 6 is handled by search"
        )));
    }
    Ok(())
}

fn set1_rows(p: usize) -> (Vec<usize>, Vec<usize>) {
    let half = (p - 3) / 2;
    let mut row1 = vec![p + 1, p];
    for k in 1..=half {
        row1.extend([2 * p - 2 * k, p - 2 * k]);
    }
    for k in 1..=half {
        row1.extend([2 * p - 2 * k + 1, p - 2 * k + 1]);
    }
    row1.push(p + 2);

    let mut row2 = vec![p + 2, p + 1];
    for k in 1..=half {
        row2.extend([p - 2 * k + 1, 2 * p - 2 * k + 1]);
    }
    for k in 0..half {
        row2.extend([p - 2 * k, 2 * p - 2 * k]);
    }
    row2.push(p + 3);
    (row1, row2)
}

/// Generator rows for `n = 2p`. SET2 is built by moving the leading entry of
/// each SET1 row to the end; [`set2_from_display`] spells SET2 out directly.
pub fn set_generators(which: GeneratorSet, p: usize) -> Result<GeneratorPair, TableError> {
    check_p(p)?;
    let (mut row1, mut row2) = set1_rows(p);
    if which == GeneratorSet::Set2 {
        row1.rotate_left(1);
        row2.rotate_left(1);
    }
    GeneratorPair::new(2 * p, row1, Some(row2))
}

/// SET2 written term by term:
/// row 1 = `p, 2p-2, p-2, ..., p+3, 3, 2p-1, p-1, ..., p+4, 4, p+2, p+1`,
/// row 2 = `p+1, p-1, 2p-1, ..., 4, p+4, p, 2p, p-2, 2p-2, ..., 5, p+5, p+3, p+2`.
pub fn set2_from_display(p: usize) -> Result<GeneratorPair, TableError> {
    check_p(p)?;
    let mut row1 = vec![p];
    // descending even run: (2p-2, p-2), (2p-4, p-4), ..., (p+3, 3)
    let mut hi = 2 * p - 2;
    while hi >= p + 3 {
        row1.extend([hi, hi - p]);
        hi -= 2;
    }
    // descending odd run: (2p-1, p-1), ..., (p+4, 4)
    let mut hi = 2 * p - 1;
    while hi >= p + 4 {
        row1.extend([hi, hi - p]);
        hi -= 2;
    }
    row1.extend([p + 2, p + 1]);

    let mut row2 = vec![p + 1];
    // (p-1, 2p-1), (p-3, 2p-3), ..., (4, p+4)
    let mut lo = p - 1;
    while lo >= 4 {
        row2.extend([lo, lo + p]);
        lo -= 2;
    }
    // (p, 2p), (p-2, 2p-2), ..., (5, p+5)
    let mut lo = p;
    while lo >= 5 {
        row2.extend([lo, lo + p]);
        lo -= 2;
    }
    row2.extend([p + 3, p + 2]);
    GeneratorPair::new(2 * p, row1, Some(row2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableClassification {
    pub valid_rows: bool,
    pub is_musquash: bool,
    pub is_bimusquash: bool,
}

/// Classifies arbitrary candidate rows; invalid rows are reported, not rejected.
pub fn classify_rows(n: usize, rows: &[Vec<usize>]) -> TableClassification {
    let valid_rows = validate_rows(n, rows).is_ok();
    if !valid_rows {
        return TableClassification {
            valid_rows,
            is_musquash: false,
            is_bimusquash: false,
        };
    }
    let is_musquash = (1..=n).all(|i| rows[i - 1] == shifted(&rows[0], i as i64 - 1, n));
    let is_bimusquash = n % 2 == 0
        && (1..=n).all(|i| {
            let expected = if i % 2 == 1 {
                shifted(&rows[0], i as i64 - 1, n)
            } else {
                shifted(&rows[1], i as i64 - 2, n)
            };
            rows[i - 1] == expected
        });
    TableClassification {
        valid_rows,
        is_musquash,
        is_bimusquash,
    }
}

pub fn classify(table: &IntersectionTable) -> TableClassification {
    table.classify()
}

/// Relabels `e_i -> e_{i+k}`: new row `i` is old row `i - k` shifted by `k`.
pub fn rotate(table: &IntersectionTable, k: i64) -> IntersectionTable {
    let n = table.n;
    let rows = (1..=n)
        .map(|i| shifted(table.row(shift_label(i, -k, n)), k, n))
        .collect();
    IntersectionTable::from_valid(n, rows)
}

/// Reverses every row; labels are unchanged.
pub fn mirror(table: &IntersectionTable) -> IntersectionTable {
    let rows = table
        .rows
        .iter()
        .map(|r| r.iter().rev().copied().collect())
        .collect();
    IntersectionTable::from_valid(table.n, rows)
}

/// Traverses the polygon the other way round: `e_j -> e_{n+1-j}`, and each
/// relabelled row is read backwards.
pub fn reverse_traversal(table: &IntersectionTable) -> IntersectionTable {
    let n = table.n;
    let rows = (1..=n)
        .map(|i| {
            table
                .row(n + 1 - i)
                .iter()
                .rev()
                .map(|&j| n + 1 - j)
                .collect()
        })
        .collect();
    IntersectionTable::from_valid(n, rows)
}

/// Every image of `table` under the group generated by rotation, traversal
/// reversal and (optionally) mirror. Images may repeat.
pub fn orbit(table: &IntersectionTable, include_mirror: bool) -> Vec<IntersectionTable> {
    let mut bases = vec![table.clone(), reverse_traversal(table)];
    if include_mirror {
        let mirrored: Vec<_> = bases.iter().map(mirror).collect();
        bases.extend(mirrored);
    }
    bases
        .iter()
        .flat_map(|b| (0..table.n as i64).map(move |k| rotate(b, k)))
        .collect()
}

/// Lexicographically least image (rows concatenated) under rotation,
/// traversal reversal and mirror.
pub fn canonical_form(table: &IntersectionTable) -> IntersectionTable {
    orbit(table, true)
        .into_iter()
        .min_by(|a, b| a.rows.cmp(&b.rows))
        .expect("orbit is never empty")
}

/// Like [`canonical_form`] but without mirror: the least image under
/// relabelings that come from re-indexing the same closed curve.
pub fn chiral_canonical_form(table: &IntersectionTable) -> IntersectionTable {
    orbit(table, false)
        .into_iter()
        .min_by(|a, b| a.rows.cmp(&b.rows))
        .expect("orbit is never empty")
}

// ---------------------------------------------------------------------------
// Text formats

#[derive(Debug, Serialize, Deserialize)]
struct TableDocument {
    schema_version: u32,
    n: usize,
    rows: Vec<Vec<usize>>,
}

/// Tab-separated rows, one per line, with a trailing newline.
pub fn serialize_tsv(table: &IntersectionTable) -> String {
    let mut out = String::new();
    for row in &table.rows {
        let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&line.join("\t"));
        out.push('\n');
    }
    out
}

/// Structured JSON document `{"schema_version", "n", "rows"}`.
pub fn serialize_json(table: &IntersectionTable) -> String {
    let doc = TableDocument {
        schema_version: SCHEMA_VERSION,
        n: table.n,
        rows: table.rows.clone(),
    };
    serde_json::to_string_pretty(&doc).expect("table serializes") + "\n"
}

pub fn parse_tsv(text: &str) -> Result<IntersectionTable, TableError> {
    let mut rows = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut row = Vec::new();
        let mut column = 1;
        for field in line.split('\t') {
            let token = field.trim();
            let value: i64 = token.parse().map_err(|_| TableError::Parse {
                line: line_no + 1,
                column,
                message: format!("expected an integer, found {token:?}"),
            })?;
            if value < 1 {
                return Err(TableError::Parse {
                    line: line_no + 1,
                    column,
                    message: format!("edge labels start at 1, found {value}"),
                });
            }
            row.push(value as usize);
            column += field.chars().count() + 1;
        }
        rows.push(row);
    }
    let n = rows.len();
    IntersectionTable::new(n, rows)
}

pub fn parse_json(text: &str) -> Result<IntersectionTable, TableError> {
    let doc: TableDocument = serde_json::from_str(text).map_err(|e| TableError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if doc.schema_version != SCHEMA_VERSION {
        return Err(TableError::Parse {
            line: 1,
            column: 1,
            message: format!("unsupported schema_version {}", doc.schema_version),
        });
    }
    IntersectionTable::new(doc.n, doc.rows)
}

/// Parses either format; JSON documents start with `{`.
pub fn parse_table(text: &str) -> Result<IntersectionTable, TableError> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_tsv(text)
    }
}

impl fmt::Display for IntersectionTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_tsv(self))
    }
}
