//! The RSK correspondence for words of distinct reals, its inverse, and
//! the Knuth equivalences.
//!
//! Row insertion follows the classical Schensted rule: an inserted value
//! displaces the smallest strictly larger entry of the row, and the
//! displaced entry bumps into the next row. Words over any linearly
//! ordered alphabet are handled directly; permutations are the special
//! case of values `σ(k)/(n+1)`.

use thiserror::Error;

use crate::tableau::{Cell, RealTableau, Realization, StandardTableau};

#[derive(Debug, Error, PartialEq)]
pub enum RskError {
    #[error("value is already present in the tableau")]
    DuplicateValue,
    #[error("P and Q shapes differ")]
    ShapeMismatch,
    #[error("tableau fails validation")]
    InvalidTableau,
    #[error("words have different lengths")]
    LengthMismatch,
    #[error("words are not rearrangements of the same values")]
    EntryMultisetMismatch,
}

/// The insertion tableau and the recording tableau of one word.
#[derive(Debug, Clone, PartialEq)]
pub struct RskPair {
    pub p: RealTableau,
    pub q: StandardTableau,
}

impl RskPair {
    pub fn new(p: RealTableau, q: StandardTableau) -> Result<Self, RskError> {
        if p.shape() != q.shape() {
            return Err(RskError::ShapeMismatch);
        }
        Ok(RskPair { p, q })
    }

    pub fn shape(&self) -> crate::tableau::YoungDiagram {
        self.p.shape()
    }
}

impl RealTableau {
    /// Schensted row insertion of `v`, in place. Returns the cell created
    /// at the end of the bump chain. The shape grows by exactly one cell.
    pub fn row_insert(&mut self, v: f64) -> Result<Cell, RskError> {
        if self.contains_value(v) {
            return Err(RskError::DuplicateValue);
        }
        Ok(self.insert_distinct(v))
    }

    /// Insertion fast path for values known to be absent.
    pub(crate) fn insert_distinct(&mut self, v: f64) -> Cell {
        let mut v = v;
        for (r, row) in self.rows.iter_mut().enumerate() {
            let idx = row.partition_point(|&e| e < v);
            if idx == row.len() {
                row.push(v);
                return Cell::new(r + 1, idx + 1);
            }
            std::mem::swap(&mut v, &mut row[idx]);
        }
        self.rows.push(vec![v]);
        Cell::new(self.rows.len(), 1)
    }
}

/// Pure-function form of row insertion; see [`RealTableau::row_insert`].
pub fn row_insert(p: &RealTableau, v: f64) -> Result<(RealTableau, Cell), RskError> {
    let mut out = p.clone();
    let cell = out.row_insert(v)?;
    Ok((out, cell))
}

/// Applies the RSK correspondence to a word. `P` collects the inserted
/// values; `Q` records, as the entry `k`, the cell created at step `k`.
pub fn rsk(x: &Realization) -> RskPair {
    let mut p = RealTableau::empty();
    let mut q: Vec<Vec<u32>> = Vec::new();
    for (k, &v) in x.values().iter().enumerate() {
        let cell = p.insert_distinct(v);
        if cell.row > q.len() {
            q.push(Vec::new());
        }
        q[cell.row - 1].push(k as u32 + 1);
    }
    RskPair {
        p,
        q: StandardTableau { rows: q },
    }
}

/// The insertion tableau alone (skips the recording bookkeeping).
pub fn p_tableau(x: &Realization) -> RealTableau {
    let mut p = RealTableau::empty();
    for &v in x.values() {
        p.insert_distinct(v);
    }
    p
}

/// Recovers the word from its tableau pair by reverse bumping in
/// decreasing order of the recording entries. Exact inverse of [`rsk`].
pub fn inverse_rsk(pair: &RskPair) -> Result<Realization, RskError> {
    if pair.p.shape() != pair.q.shape() {
        return Err(RskError::ShapeMismatch);
    }
    if !crate::tableau::is_standard(pair.q.rows())
        || RealTableau::from_rows(pair.p.rows().to_vec()).is_err()
    {
        return Err(RskError::InvalidTableau);
    }

    let n = pair.q.cell_count();
    // position of each recording entry, indexed by entry - 1
    let mut pos = vec![Cell::new(1, 1); n];
    for (r, row) in pair.q.rows().iter().enumerate() {
        for (c, &e) in row.iter().enumerate() {
            pos[e as usize - 1] = Cell::new(r + 1, c + 1);
        }
    }

    let mut p = pair.p.rows().to_vec();
    let mut values = vec![0.0; n];
    for k in (0..n).rev() {
        let cell = pos[k];
        debug_assert_eq!(p[cell.row - 1].len(), cell.col);
        let mut w = p[cell.row - 1].pop().expect("cell present");
        if p[cell.row - 1].is_empty() {
            p.pop();
        }
        for row in p[..cell.row - 1].iter_mut().rev() {
            let idx = row.partition_point(|&e| e < w);
            debug_assert!(idx >= 1, "reverse bump always finds a smaller entry");
            std::mem::swap(&mut w, &mut row[idx - 1]);
        }
        values[k] = w;
    }
    Ok(Realization::from_distinct(values))
}

/// All words one elementary Knuth move away from `w`: with `a < b < c`,
/// the moves exchange `bac ↔ bca` and `acb ↔ cab` at some window of three
/// consecutive positions.
pub fn knuth_neighbors(w: &Realization) -> Vec<Realization> {
    let v = w.values();
    let mut out = Vec::new();
    for i in 0..v.len().saturating_sub(2) {
        let (x, y, z) = (v[i], v[i + 1], v[i + 2]);
        // bac ↔ bca: middle value on the outside, swap last two
        if (y < x && x < z) || (z < x && x < y) {
            let mut nv = v.to_vec();
            nv.swap(i + 1, i + 2);
            out.push(Realization::from_distinct(nv));
        }
        // acb ↔ cab: middle value on the outside, swap first two
        if (x < z && z < y) || (y < z && z < x) {
            let mut nv = v.to_vec();
            nv.swap(i, i + 1);
            out.push(Realization::from_distinct(nv));
        }
    }
    out
}

fn sorted_values(w: &Realization) -> Vec<f64> {
    let mut v = w.values().to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    v
}

/// Knuth equivalence: reachability by elementary moves, decided through
/// the insertion-tableau criterion (equal `P`-tableaux).
pub fn knuth_equivalent(w1: &Realization, w2: &Realization) -> Result<bool, RskError> {
    if w1.len() != w2.len() {
        return Err(RskError::LengthMismatch);
    }
    if sorted_values(w1) != sorted_values(w2) {
        return Err(RskError::EntryMultisetMismatch);
    }
    Ok(p_tableau(w1) == p_tableau(w2))
}

/// Dual Knuth equivalence: equality of recording tableaux. For
/// permutations this is Knuth equivalence of the inverses.
pub fn dual_knuth_equivalent(w1: &Realization, w2: &Realization) -> Result<bool, RskError> {
    if w1.len() != w2.len() {
        return Err(RskError::LengthMismatch);
    }
    Ok(rsk(w1).q == rsk(w2).q)
}
