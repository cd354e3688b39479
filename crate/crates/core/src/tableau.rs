//! Shapes, tableaux, and input sequences.
//!
//! All types validate their invariants at construction and are immutable
//! values afterwards; they can be shared freely between threads. Row and
//! column indices are 1-based throughout, so the top-left cell is `(1,1)`.

use std::fmt;

use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum TableauError {
    #[error("row lengths must be positive and weakly decreasing")]
    InvalidDiagram,
    #[error("entries do not form a standard tableau")]
    InvalidStandard,
    #[error("entries do not form a row/column increasing real tableau")]
    InvalidReal,
    #[error("values must be pairwise distinct and finite")]
    InvalidRealization,
    #[error("malformed tableau JSON: {0}")]
    Parse(String),
}

/// A lattice cell, 1-based: `row` counts down, `col` counts right.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Self {
        assert!(row >= 1 && col >= 1, "cells are 1-based");
        Cell { row, col }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// A partition shape: weakly decreasing positive row lengths. The empty
/// diagram is a legal value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YoungDiagram {
    rows: Vec<usize>,
}

impl YoungDiagram {
    pub fn new(rows: Vec<usize>) -> Result<Self, TableauError> {
        if rows.iter().any(|&r| r == 0) || rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(TableauError::InvalidDiagram);
        }
        Ok(YoungDiagram { rows })
    }

    pub fn empty() -> Self {
        YoungDiagram { rows: Vec::new() }
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    /// Total number of cells.
    pub fn cell_count(&self) -> usize {
        self.rows.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn contains(&self, cell: Cell) -> bool {
        cell.row >= 1
            && cell.col >= 1
            && cell.row <= self.rows.len()
            && cell.col <= self.rows[cell.row - 1]
    }

    /// The conjugate (transposed) shape.
    pub fn conjugate(&self) -> YoungDiagram {
        let cols = self.rows.first().copied().unwrap_or(0);
        let rows = (1..=cols)
            .map(|c| self.rows.iter().take_while(|&&len| len >= c).count())
            .collect();
        YoungDiagram { rows }
    }
}

fn shape_of<T>(rows: &[Vec<T>]) -> Result<YoungDiagram, TableauError> {
    YoungDiagram::new(rows.iter().map(Vec::len).collect())
}

/// Returns true iff `rows` is a bijective filling of its shape by `1..=n`
/// that strictly increases along rows and down columns.
pub fn is_standard(rows: &[Vec<u32>]) -> bool {
    if shape_of(rows).is_err() {
        return false;
    }
    let n: usize = rows.iter().map(Vec::len).sum();
    let mut seen = vec![false; n + 1];
    for row in rows {
        for &e in row {
            let e = e as usize;
            if e < 1 || e > n || seen[e] {
                return false;
            }
            seen[e] = true;
        }
    }
    increasing_rows_cols(rows)
}

fn increasing_rows_cols<T: PartialOrd>(rows: &[Vec<T>]) -> bool {
    for row in rows {
        if row.windows(2).any(|w| w[0] >= w[1]) {
            return false;
        }
    }
    for r in 1..rows.len() {
        for c in 0..rows[r].len() {
            if rows[r - 1][c] >= rows[r][c] {
                return false;
            }
        }
    }
    true
}

/// A standard Young tableau: the cells of a diagram filled bijectively
/// with `1..=n`, increasing along rows and down columns. This is the
/// recording (`Q`) side of the RSK correspondence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardTableau {
    pub(crate) rows: Vec<Vec<u32>>,
}

impl StandardTableau {
    pub fn from_rows(rows: Vec<Vec<u32>>) -> Result<Self, TableauError> {
        if !is_standard(&rows) {
            return Err(TableauError::InvalidStandard);
        }
        Ok(StandardTableau { rows })
    }

    pub fn empty() -> Self {
        StandardTableau { rows: Vec::new() }
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn shape(&self) -> YoungDiagram {
        YoungDiagram {
            rows: self.rows.iter().map(Vec::len).collect(),
        }
    }

    pub fn cell_count(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Entry at `cell`, or `None` outside the shape.
    pub fn entry(&self, cell: Cell) -> Option<u32> {
        self.rows
            .get(cell.row - 1)
            .and_then(|r| r.get(cell.col - 1))
            .copied()
    }

    /// Reflects the filling across the main diagonal; an involution onto
    /// the conjugate shape.
    pub fn transpose(&self) -> StandardTableau {
        let cols = self.rows.first().map(Vec::len).unwrap_or(0);
        let mut out: Vec<Vec<u32>> = vec![Vec::new(); cols];
        for row in &self.rows {
            for (c, &e) in row.iter().enumerate() {
                out[c].push(e);
            }
        }
        StandardTableau { rows: out }
    }

    /// Canonical JSON form: `{"shape":[...],"rows":[[...]]}`.
    pub fn to_canonical_json(&self) -> String {
        let shape: Vec<String> = self.rows.iter().map(|r| r.len().to_string()).collect();
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(|e| e.to_string()).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        format!(
            "{{\"shape\":[{}],\"rows\":[{}]}}",
            shape.join(","),
            rows.join(",")
        )
    }

    pub fn from_canonical_json(text: &str) -> Result<Self, TableauError> {
        let raw: RawTableau<u32> = parse_raw(text)?;
        Self::from_rows(raw.rows)
    }
}

/// A tableau filled with distinct reals, increasing along rows and down
/// columns. This is the insertion (`P`) side of the RSK correspondence;
/// entries are nominally drawn from the unit interval.
#[derive(Debug, Clone, PartialEq)]
pub struct RealTableau {
    pub(crate) rows: Vec<Vec<f64>>,
}

impl RealTableau {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self, TableauError> {
        shape_of(&rows).map_err(|_| TableauError::InvalidReal)?;
        if rows.iter().flatten().any(|v| !v.is_finite()) {
            return Err(TableauError::InvalidReal);
        }
        if !increasing_rows_cols(&rows) {
            return Err(TableauError::InvalidReal);
        }
        if !all_distinct(rows.iter().flatten().copied()) {
            return Err(TableauError::InvalidReal);
        }
        Ok(RealTableau { rows })
    }

    pub fn empty() -> Self {
        RealTableau { rows: Vec::new() }
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn shape(&self) -> YoungDiagram {
        YoungDiagram {
            rows: self.rows.iter().map(Vec::len).collect(),
        }
    }

    pub fn cell_count(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn entry(&self, cell: Cell) -> Option<f64> {
        self.rows
            .get(cell.row - 1)
            .and_then(|r| r.get(cell.col - 1))
            .copied()
    }

    pub fn contains_value(&self, v: f64) -> bool {
        self.rows.iter().flatten().any(|&e| e == v)
    }

    /// Canonical JSON form; reals carry 17 significant digits so the
    /// round trip through text is exact.
    pub fn to_canonical_json(&self) -> String {
        let shape: Vec<String> = self.rows.iter().map(|r| r.len().to_string()).collect();
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(|v| format_real(*v)).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        format!(
            "{{\"shape\":[{}],\"rows\":[{}]}}",
            shape.join(","),
            rows.join(",")
        )
    }

    pub fn from_canonical_json(text: &str) -> Result<Self, TableauError> {
        let raw: RawTableau<f64> = parse_raw(text)?;
        Self::from_rows(raw.rows)
    }
}

/// 17 significant digits: enough to reproduce any f64 bit pattern.
pub(crate) fn format_real(v: f64) -> String {
    format!("{:.16e}", v)
}

#[derive(Deserialize)]
struct RawTableau<T> {
    shape: Vec<usize>,
    rows: Vec<Vec<T>>,
}

fn parse_raw<T: for<'de> Deserialize<'de>>(text: &str) -> Result<RawTableau<T>, TableauError> {
    let raw: RawTableau<T> =
        serde_json::from_str(text).map_err(|e| TableauError::Parse(e.to_string()))?;
    let lens: Vec<usize> = raw.rows.iter().map(Vec::len).collect();
    if lens != raw.shape {
        return Err(TableauError::Parse(
            "shape field disagrees with row lengths".into(),
        ));
    }
    Ok(raw)
}

fn all_distinct(values: impl Iterator<Item = f64>) -> bool {
    let mut v: Vec<f64> = values.collect();
    v.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
    !v.windows(2).any(|w| w[0] == w[1])
}

/// A finite prefix of an input sequence: finite, pairwise distinct reals,
/// nominally in the open unit interval.
#[derive(Debug, Clone, PartialEq)]
pub struct Realization {
    values: Vec<f64>,
}

impl Realization {
    pub fn new(values: Vec<f64>) -> Result<Self, TableauError> {
        if values.iter().any(|v| !v.is_finite()) || !all_distinct(values.iter().copied()) {
            return Err(TableauError::InvalidRealization);
        }
        Ok(Realization { values })
    }

    /// Constructor for values already known to be distinct (RSK inverses,
    /// samplers). Checked in debug builds only.
    pub(crate) fn from_distinct(values: Vec<f64>) -> Self {
        debug_assert!(all_distinct(values.iter().copied()));
        Realization { values }
    }

    /// The word `σ(1)/(n+1), ..., σ(n)/(n+1)` encoding a permutation as
    /// reals in `(0,1)`.
    pub fn from_permutation(perm: &[usize]) -> Result<Self, TableauError> {
        let n = perm.len();
        let values = perm.iter().map(|&k| k as f64 / (n as f64 + 1.0)).collect();
        Self::new(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The realization with the first coordinate dropped.
    pub fn tail(&self) -> Realization {
        Realization {
            values: self.values[1..].to_vec(),
        }
    }

    pub fn prefix(&self, k: usize) -> Realization {
        Realization {
            values: self.values[..k].to_vec(),
        }
    }
}
