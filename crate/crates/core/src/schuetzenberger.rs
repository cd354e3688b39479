//! The nerve of a standard tableau, the finite promotion shift along it,
//! and the nerve-endpoint decoder.
//!
//! The nerve is the chain of cells that starts at `(1,1)` and repeatedly
//! moves to whichever of the right/bottom neighbors inside the shape
//! holds the smaller entry; it ends at an outer corner. The finite shift
//! slides entries one step back along the nerve, deletes the final nerve
//! cell, and decrements every entry, so that the shift of the recording
//! tableau of a word equals the recording tableau of the word with its
//! first letter dropped — cell-exact, at every length.

use thiserror::Error;

use crate::rsk;
use crate::tableau::{Cell, Realization, StandardTableau};

#[derive(Debug, Error, PartialEq)]
pub enum NerveError {
    #[error("tableau is empty")]
    EmptyTableau,
    #[error("kappa must be positive")]
    NonpositiveKappa,
}

/// The nerve: its cells in order, and the entries along them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nerve {
    pub cells: Vec<Cell>,
    pub values: Vec<u32>,
}

impl Nerve {
    pub fn endpoint(&self) -> Cell {
        *self.cells.last().expect("nerve is nonempty")
    }
}

/// Traces the nerve of a nonempty standard tableau.
pub fn nerve(q: &StandardTableau) -> Result<Nerve, NerveError> {
    if q.is_empty() {
        return Err(NerveError::EmptyTableau);
    }
    let mut cell = Cell::new(1, 1);
    let mut cells = vec![cell];
    let mut values = vec![q.entry(cell).expect("(1,1) in nonempty shape")];
    loop {
        let right = q.entry(Cell::new(cell.row, cell.col + 1));
        let below = q.entry(Cell::new(cell.row + 1, cell.col));
        cell = match (right, below) {
            (None, None) => break,
            (Some(_), None) => Cell::new(cell.row, cell.col + 1),
            (None, Some(_)) => Cell::new(cell.row + 1, cell.col),
            (Some(r), Some(b)) => {
                if r < b {
                    Cell::new(cell.row, cell.col + 1)
                } else {
                    Cell::new(cell.row + 1, cell.col)
                }
            }
        };
        cells.push(cell);
        values.push(q.entry(cell).expect("neighbor inside shape"));
    }
    Ok(Nerve { cells, values })
}

/// Lattice coordinates `(a1, a2)` of the last nerve cell: `a1` is the
/// row index, `a2` the column index.
pub fn nerve_endpoint(q: &StandardTableau) -> Result<(usize, usize), NerveError> {
    let end = nerve(q)?.endpoint();
    Ok((end.row, end.col))
}

/// One step of the finite promotion shift. Entries slide one cell back
/// along the nerve, the last nerve cell is deleted, and all entries
/// decrease by 1; the result has one cell fewer.
pub fn sch_shift(q: &StandardTableau) -> Result<StandardTableau, NerveError> {
    let nerve = nerve(q)?;
    let mut rows = q.rows().to_vec();
    for pair in nerve.cells.windows(2) {
        rows[pair[0].row - 1][pair[0].col - 1] = rows[pair[1].row - 1][pair[1].col - 1];
    }
    let last = nerve.endpoint();
    rows[last.row - 1].pop();
    if rows[last.row - 1].is_empty() {
        rows.pop();
    }
    for row in &mut rows {
        for e in row {
            *e -= 1;
        }
    }
    debug_assert!(crate::tableau::is_standard(&rows));
    Ok(StandardTableau { rows })
}

/// The recording tableaux of every prefix: `Q(x¹), Q(x²), …, Q(xⁿ)`.
/// Each extends the previous one by a single outer-corner cell.
pub fn q_tableau_stream(x: &Realization) -> Vec<StandardTableau> {
    let mut p = crate::tableau::RealTableau::empty();
    let mut q: Vec<Vec<u32>> = Vec::new();
    let mut out = Vec::with_capacity(x.len());
    for (k, &v) in x.values().iter().enumerate() {
        let cell = p.insert_distinct(v);
        if cell.row > q.len() {
            q.push(Vec::new());
        }
        q[cell.row - 1].push(k as u32 + 1);
        out.push(StandardTableau { rows: q.clone() });
    }
    out
}

/// Recording tableau of the whole word.
pub fn q_tableau(x: &Realization) -> StandardTableau {
    rsk::rsk(x).q
}

/// The raw decoding statistic of the nerve endpoint: the row coordinate
/// scaled by `1/√n`.
///
/// A large first coordinate pulls the early bump chains, and with them
/// the small recording entries, down the first column, so the nerve of a
/// typical recording tableau descends in rows as the first coordinate
/// grows; the row side is the decoding coordinate. Confirmed empirically
/// by `experiments::run_decoding_experiment`.
pub fn nerve_raw_statistic(q: &StandardTableau) -> Result<f64, NerveError> {
    let (a1, _) = nerve_endpoint(q)?;
    Ok(a1 as f64 / (q.cell_count() as f64).sqrt())
}

/// Decodes the first coordinate from the nerve endpoint as
/// `clamp(kappa · a/√n, 0, 1)`, with `a` the decoding coordinate of the
/// endpoint and `kappa` a calibration constant (default 1).
pub fn decode_first_nerve(q: &StandardTableau, kappa: f64) -> Result<f64, NerveError> {
    if !(kappa > 0.0) {
        return Err(NerveError::NonpositiveKappa);
    }
    let raw = nerve_raw_statistic(q)?;
    Ok((kappa * raw).clamp(0.0, 1.0))
}
