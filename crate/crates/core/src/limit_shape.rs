//! Analytic limit objects for scaled tableaux: the boundary curve `Ω`,
//! polar geometry of the limit triangle, the arch surface, and the
//! scaled step functions built from tableaux.
//!
//! Coordinates: a cell `(row, col)` of an `n`-cell diagram scales to
//! `p = row/√n`, `q = col/√n`. Rotated coordinates are `u = (q - p)/2`,
//! `v = (q + p)/2`, under which the limit boundary is `v = Ω(u)` for
//! `|u| ≤ 1` and the first row and column scale to length 2.

use thiserror::Error;

use crate::tableau::{RealTableau, StandardTableau, YoungDiagram};

#[derive(Debug, Error, PartialEq)]
pub enum ShapeError {
    #[error("argument outside the function's domain: {0}")]
    Domain(&'static str),
    #[error("point lies outside the diagram")]
    OutsideDiagram,
    #[error("diagram cell count does not match n")]
    CellCountMismatch,
}

/// The limit boundary curve `Ω(s) = (2/π)(s·arcsin s + √(1-s²))` on
/// `|s| ≤ 1`; even, with `Ω(0) = 2/π` and `Ω(±1) = 1`.
pub fn omega(s: f64) -> Result<f64, ShapeError> {
    if !(s.abs() <= 1.0) {
        return Err(ShapeError::Domain("omega requires |s| <= 1"));
    }
    Ok(2.0 / std::f64::consts::PI * (s * s.asin() + (1.0 - s * s).sqrt()))
}

/// A point in scaled diagram coordinates (units of `√n` cells).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledPoint {
    pub p: f64,
    pub q: f64,
}

impl ScaledPoint {
    pub fn new(p: f64, q: f64) -> Result<Self, ShapeError> {
        if !(p >= 0.0 && q >= 0.0) {
            return Err(ShapeError::Domain("scaled coordinates must be nonnegative"));
        }
        Ok(ScaledPoint { p, q })
    }
}

/// Rotated coordinates `u = (q - p)/2`, `v = (q + p)/2`.
pub fn to_rotated(pt: ScaledPoint) -> (f64, f64) {
    ((pt.q - pt.p) / 2.0, (pt.q + pt.p) / 2.0)
}

/// A polar point over the limit triangle. The angle is measured from the
/// column axis, so `θ → 0` points along the first row and `θ → π/2`
/// along the first column.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarPoint {
    pub r: f64,
    pub theta: f64,
}

impl PolarPoint {
    pub fn new(r: f64, theta: f64) -> Result<Self, ShapeError> {
        if !(r >= 0.0) {
            return Err(ShapeError::Domain("radius must be nonnegative"));
        }
        if !(theta > 0.0 && theta < std::f64::consts::FRAC_PI_2) {
            return Err(ShapeError::Domain("theta must lie strictly inside (0, π/2)"));
        }
        Ok(PolarPoint { r, theta })
    }

    /// The scaled diagram point on this ray.
    pub fn to_scaled(self) -> ScaledPoint {
        ScaledPoint {
            p: self.r * self.theta.sin(),
            q: self.r * self.theta.cos(),
        }
    }
}

/// Radius of the limit boundary on the ray at angle `theta`: the unique
/// `r > 0` whose rotated image lies on `v = Ω(u)`. Bisection on `[0, 4]`
/// to absolute tolerance 1e-10; `v - Ω(u)` is increasing in `r` along
/// every interior ray.
pub fn r_theta(theta: f64) -> Result<f64, ShapeError> {
    if !(theta > 0.0 && theta < std::f64::consts::FRAC_PI_2) {
        return Err(ShapeError::Domain("theta must lie strictly inside (0, π/2)"));
    }
    let (sin, cos) = (theta.sin(), theta.cos());
    let above = |r: f64| -> bool {
        let u = r * (cos - sin) / 2.0;
        let v = r * (cos + sin) / 2.0;
        match omega(u) {
            Ok(w) => v >= w,
            Err(_) => true, // past the corner, hence past the curve
        }
    };
    let (mut lo, mut hi) = (0.0f64, 4.0f64);
    debug_assert!(!above(lo) && above(hi));
    while hi - lo > 1e-10 {
        let mid = 0.5 * (lo + hi);
        if above(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// The arch surface `A(r, θ) = r²/r_θ²`: 1 on the limit curve, 0 at the
/// origin, parabolic along each ray.
pub fn arch(pt: PolarPoint) -> Result<f64, ShapeError> {
    let rt = r_theta(pt.theta)?;
    if pt.r > rt + 1e-9 {
        return Err(ShapeError::Domain("radius lies beyond the limit boundary"));
    }
    Ok((pt.r / rt).powi(2))
}

/// Cell index covering a nonnegative scaled coordinate (1-based); points
/// on a cell boundary are assigned to the earlier cell.
fn cell_index(coord: f64) -> usize {
    let c = coord.ceil();
    if c < 1.0 {
        1
    } else {
        c as usize
    }
}

fn locate(shape_rows: usize, row_len: impl Fn(usize) -> usize, n: usize, pt: ScaledPoint) -> Result<(usize, usize), ShapeError> {
    let scale = (n as f64).sqrt();
    let row = cell_index(pt.p * scale);
    let col = cell_index(pt.q * scale);
    if row > shape_rows || col > row_len(row) {
        return Err(ShapeError::OutsideDiagram);
    }
    Ok((row, col))
}

/// The scaled insertion-tableau step function: the entry of the cell
/// containing `pt·√n`. Values stay in the unit interval.
pub fn phi_eval(p_tab: &RealTableau, n: usize, pt: ScaledPoint) -> Result<f64, ShapeError> {
    let rows = p_tab.rows();
    let (row, col) = locate(rows.len(), |r| rows[r - 1].len(), n, pt)?;
    Ok(rows[row - 1][col - 1])
}

/// The scaled recording-tableau step function: the entry of the covering
/// cell divided by `n`, in `(0, 1]`.
pub fn psi_eval(q_tab: &StandardTableau, n: usize, pt: ScaledPoint) -> Result<f64, ShapeError> {
    let rows = q_tab.rows();
    let (row, col) = locate(rows.len(), |r| rows[r - 1].len(), n, pt)?;
    Ok(rows[row - 1][col - 1] as f64 / n as f64)
}

/// The rotated, `1/√n`-scaled boundary profile of a diagram, evaluated
/// at `u`. Piecewise linear with slopes ±1: the upper envelope of the
/// tents hanging from the outer corners, and `|u|` outside the support.
pub fn profile(d: &YoungDiagram, n: usize, u: f64) -> f64 {
    let scale = 2.0 * (n as f64).sqrt();
    let rows = d.rows();
    let mut v = u.abs();
    for (i, &len) in rows.iter().enumerate() {
        let next = rows.get(i + 1).copied().unwrap_or(0);
        if len > next {
            // outer corner of row i+1 at lattice point (i+1, len)
            let uc = (len as f64 - (i + 1) as f64) / scale;
            let vc = (len as f64 + (i + 1) as f64) / scale;
            v = v.max(vc - (u - uc).abs());
        }
    }
    v
}

/// Sup-distance between the scaled staircase boundary of `d` and the
/// limit curve, over a 201-point grid on `u ∈ [-0.95, 0.95]`.
pub fn profile_distance(d: &YoungDiagram, n: usize) -> Result<f64, ShapeError> {
    if d.cell_count() != n {
        return Err(ShapeError::CellCountMismatch);
    }
    if n == 0 {
        return Err(ShapeError::Domain("profile distance needs n >= 1"));
    }
    let grid = 201;
    let mut worst = 0.0f64;
    for k in 0..grid {
        let u = -0.95 + 1.9 * k as f64 / (grid - 1) as f64;
        let diff = (profile(d, n, u) - omega(u).expect("|u| < 1")).abs();
        worst = worst.max(diff);
    }
    Ok(worst)
}
