//! Seeded Monte Carlo drivers measuring the asymptotic statements at
//! finite `n`: decoding error of both codecs, shape and arch convergence,
//! insertion-tableau entry dynamics, and boundary fluctuation sampling.
//!
//! Every experiment is a pure function of its config. Trials draw from
//! independent counter-based streams keyed by `(master seed, trial
//! index)`, run in parallel, and are collected in trial order, so reruns
//! are byte-identical.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::limit_shape::{self, PolarPoint};
use crate::rsk;
use crate::schuetzenberger;
use crate::tableau::{Cell, RealTableau, Realization};
use crate::weyl;

#[derive(Debug, Error, PartialEq)]
pub enum ExperimentError {
    #[error("invalid experiment config: {0}")]
    Config(String),
    #[error("tracked index is outside the realization")]
    IndexOutOfRange,
}

/// One trial's named measurements, keyed for reproducibility by the
/// derived per-trial seed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRecord {
    pub seed: u64,
    pub n: u64,
    pub measurements: BTreeMap<String, f64>,
}

impl TrialRecord {
    fn new(seed: u64, n: u64) -> Self {
        TrialRecord {
            seed,
            n,
            measurements: BTreeMap::new(),
        }
    }

    fn set(&mut self, name: &str, value: f64) {
        self.measurements.insert(name.to_string(), value);
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.measurements.get(name).copied()
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Deterministic per-trial stream key.
pub fn trial_seed(master: u64, trial: u64) -> u64 {
    splitmix(master ^ splitmix(trial))
}

/// Draws `n` i.i.d. uniform values from the stream keyed by `seed`;
/// exact zeros and ties are rejected and redrawn.
pub fn sample_realization(seed: u64, n: usize) -> Realization {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::with_capacity(2 * n);
    let mut values = Vec::with_capacity(n);
    while values.len() < n {
        let v: f64 = rng.gen();
        if v > 0.0 && seen.insert(v.to_bits()) {
            values.push(v);
        }
    }
    Realization::from_distinct(values)
}

/// Where one tracked value sits in the insertion tableau after each
/// step. Bumping only ever moves an entry to the next row, weakly left,
/// so rows are nondecreasing and columns nonincreasing along the path.
#[derive(Debug, Clone, PartialEq)]
pub struct EntryPath {
    pub steps: Vec<(usize, Cell)>,
}

impl EntryPath {
    pub fn is_monotone(&self) -> bool {
        self.steps.windows(2).all(|w| {
            let (a, b) = (w[0].1, w[1].1);
            b.row >= a.row && b.col <= a.col
        })
    }

    pub fn final_cell(&self) -> Cell {
        self.steps.last().expect("path is nonempty").1
    }
}

/// Row insertion that keeps a finger on one tableau entry. If
/// `following` starts true, `tracked` is set to wherever `v` itself
/// lands; afterwards the finger moves whenever the bump chain displaces
/// the entry under it.
fn insert_following(rows: &mut Vec<Vec<f64>>, v: f64, tracked: &mut Cell, following: bool) {
    let mut v = v;
    let mut following = following;
    for r in 0..rows.len() {
        let row = &mut rows[r];
        let idx = row.partition_point(|&e| e < v);
        if idx == row.len() {
            row.push(v);
            if following {
                *tracked = Cell::new(r + 1, idx + 1);
            }
            return;
        }
        std::mem::swap(&mut v, &mut row[idx]);
        if following {
            *tracked = Cell::new(r + 1, idx + 1);
            following = false;
        } else if tracked.row == r + 1 && tracked.col == idx + 1 {
            following = true;
        }
    }
    rows.push(vec![v]);
    if following {
        *tracked = Cell::new(rows.len(), 1);
    }
}

/// The cell of `x_m` in the insertion tableau of every prefix
/// `x¹..xᵏ`, `k ≥ m`.
pub fn trace_entry(x: &Realization, m: usize) -> Result<EntryPath, ExperimentError> {
    if m < 1 || m > x.len() {
        return Err(ExperimentError::IndexOutOfRange);
    }
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for &v in &x.values()[..m - 1] {
        let mut dummy = Cell::new(1, 1);
        insert_following(&mut rows, v, &mut dummy, false);
    }
    let mut tracked = Cell::new(1, 1);
    let mut steps = Vec::with_capacity(x.len() - m + 1);
    insert_following(&mut rows, x.values()[m - 1], &mut tracked, true);
    steps.push((m, tracked));
    for (k, &v) in x.values().iter().enumerate().skip(m) {
        insert_following(&mut rows, v, &mut tracked, false);
        steps.push((k + 1, tracked));
    }
    Ok(EntryPath { steps })
}

/// Smallest prefix length at which `x_m` sits in the first column of the
/// insertion tableau, or `None` if it has not arrived within `x`.
pub fn arrival_step(x: &Realization, m: usize) -> Result<Option<usize>, ExperimentError> {
    if m < 1 || m > x.len() {
        return Err(ExperimentError::IndexOutOfRange);
    }
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for &v in &x.values()[..m - 1] {
        let mut dummy = Cell::new(1, 1);
        insert_following(&mut rows, v, &mut dummy, false);
    }
    let mut tracked = Cell::new(1, 1);
    insert_following(&mut rows, x.values()[m - 1], &mut tracked, true);
    if tracked.col == 1 {
        return Ok(Some(m));
    }
    for (k, &v) in x.values().iter().enumerate().skip(m) {
        insert_following(&mut rows, v, &mut tracked, false);
        if tracked.col == 1 {
            return Ok(Some(k + 1));
        }
    }
    Ok(None)
}

/// Verifies that the `(1,1)` entry of the insertion tableau equals the
/// running minimum after every prefix. Always true; a `false` signals an
/// implementation bug.
pub fn run_min_check(x: &Realization) -> bool {
    let mut p = RealTableau::empty();
    let mut min = f64::INFINITY;
    for &v in x.values() {
        p.insert_distinct(v);
        min = min.min(v);
        if p.rows()[0][0] != min {
            return false;
        }
    }
    true
}

/// Common size parameters for the drivers.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
}

impl ExperimentConfig {
    pub fn new(n: usize, trials: usize, seed: u64) -> Self {
        ExperimentConfig { n, trials, seed }
    }

    fn validate(&self) -> Result<(), ExperimentError> {
        if self.n < 2 {
            return Err(ExperimentError::Config("n must be at least 2".into()));
        }
        if self.trials < 1 {
            return Err(ExperimentError::Config("trials must be at least 1".into()));
        }
        Ok(())
    }
}

/// Per trial: the first coordinate, the rank-codec estimate `d_n/n`,
/// and the raw and calibrated nerve-endpoint estimates. Every hundredth
/// trial re-verifies the promotion conjugacy on its sample.
pub fn run_decoding_experiment(
    config: &ExperimentConfig,
    kappa: f64,
) -> Result<Vec<TrialRecord>, ExperimentError> {
    config.validate()?;
    if !(kappa > 0.0) {
        return Err(ExperimentError::Config("kappa must be positive".into()));
    }
    let n = config.n;
    let records = (0..config.trials)
        .into_par_iter()
        .map(|t| {
            let seed = trial_seed(config.seed, t as u64);
            let x = sample_realization(seed, n);
            let x1 = x.values()[0];
            let z = weyl::encode_weyl(&x);
            let weyl_est = weyl::decode_first_weyl(&z);
            let pair = rsk::rsk(&x);
            let (a1, a2) = schuetzenberger::nerve_endpoint(&pair.q).expect("nonempty");
            let raw = a1 as f64 / (n as f64).sqrt();
            let est = (kappa * raw).clamp(0.0, 1.0);

            let mut rec = TrialRecord::new(seed, n as u64);
            rec.set("trial", t as f64);
            rec.set("x1", x1);
            rec.set("weyl_estimate", weyl_est);
            rec.set("weyl_abs_error", (weyl_est - x1).abs());
            rec.set("nerve_a1", a1 as f64);
            rec.set("nerve_a2", a2 as f64);
            rec.set("nerve_raw", raw);
            rec.set("nerve_estimate", est);
            rec.set("nerve_abs_error", (est - x1).abs());
            if t % 100 == 0 {
                let shifted = schuetzenberger::sch_shift(&pair.q).expect("nonempty");
                assert_eq!(
                    shifted,
                    schuetzenberger::q_tableau(&x.tail()),
                    "promotion conjugacy violated at seed {seed}"
                );
                rec.set("conjugacy_ok", 1.0);
            }
            rec
        })
        .collect();
    Ok(records)
}

/// Per trial: sup-distance of the scaled RSK shape from the limit curve
/// and the scaled first-row/first-column lengths.
pub fn run_shape_experiment(
    config: &ExperimentConfig,
) -> Result<Vec<TrialRecord>, ExperimentError> {
    config.validate()?;
    let n = config.n;
    let records = (0..config.trials)
        .into_par_iter()
        .map(|t| {
            let seed = trial_seed(config.seed, t as u64);
            let x = sample_realization(seed, n);
            let shape = rsk::p_tableau(&x).shape();
            let sqrt_n = (n as f64).sqrt();
            let mut rec = TrialRecord::new(seed, n as u64);
            rec.set("trial", t as f64);
            rec.set(
                "profile_distance",
                limit_shape::profile_distance(&shape, n).expect("matching cell count"),
            );
            rec.set("row_ratio", shape.rows()[0] as f64 / sqrt_n);
            rec.set("col_ratio", shape.row_count() as f64 / sqrt_n);
            rec
        })
        .collect();
    Ok(records)
}

/// Evenly spread interior evaluation grid: `angles` rays, `radii`
/// fractions of the boundary radius up to 0.9.
pub fn default_arch_grid(angles: usize, radii: usize) -> Vec<PolarPoint> {
    let mut grid = Vec::with_capacity(angles * radii);
    for i in 1..=angles {
        let theta = std::f64::consts::FRAC_PI_2 * i as f64 / (angles as f64 + 1.0);
        let rt = limit_shape::r_theta(theta).expect("interior angle");
        for j in 0..radii {
            let frac = 0.1 + 0.8 * j as f64 / (radii.max(2) - 1) as f64;
            grid.push(PolarPoint::new(frac * rt, theta).expect("valid point"));
        }
    }
    grid
}

/// Per trial and grid point: the arch value and the deviations of both
/// scaled step functions from it. Points falling outside the realized
/// diagram are marked `outside` and carry no deviation.
pub fn run_arch_experiment(
    config: &ExperimentConfig,
    grid: &[PolarPoint],
) -> Result<Vec<TrialRecord>, ExperimentError> {
    config.validate()?;
    if grid.is_empty() {
        return Err(ExperimentError::Config("arch grid is empty".into()));
    }
    let mut arch_values = Vec::with_capacity(grid.len());
    for pt in grid {
        let rt = limit_shape::r_theta(pt.theta)
            .map_err(|e| ExperimentError::Config(e.to_string()))?;
        if pt.r > rt {
            return Err(ExperimentError::Config(format!(
                "grid point (r={}, theta={}) lies beyond the limit boundary",
                pt.r, pt.theta
            )));
        }
        arch_values.push(limit_shape::arch(*pt).expect("validated point"));
    }

    let n = config.n;
    let records: Vec<Vec<TrialRecord>> = (0..config.trials)
        .into_par_iter()
        .map(|t| {
            let seed = trial_seed(config.seed, t as u64);
            let x = sample_realization(seed, n);
            let pair = rsk::rsk(&x);
            grid.iter()
                .zip(&arch_values)
                .map(|(pt, &a)| {
                    let mut rec = TrialRecord::new(seed, n as u64);
                    rec.set("trial", t as f64);
                    rec.set("r", pt.r);
                    rec.set("theta", pt.theta);
                    rec.set("arch", a);
                    let scaled = pt.to_scaled();
                    match (
                        limit_shape::phi_eval(&pair.p, n, scaled),
                        limit_shape::psi_eval(&pair.q, n, scaled),
                    ) {
                        (Ok(phi), Ok(psi)) => {
                            rec.set("phi", phi);
                            rec.set("psi", psi);
                            rec.set("phi_abs_error", (phi - a).abs());
                            rec.set("psi_abs_error", (psi - a).abs());
                            rec.set("outside", 0.0);
                        }
                        _ => {
                            rec.set("outside", 1.0);
                        }
                    }
                    rec
                })
                .collect()
        })
        .collect();
    Ok(records.into_iter().flatten().collect())
}

/// Per trial and ray: the scaled shortfall `√n·(1 - ψ_n)` of the
/// recording entry at the limit-boundary cell. Rays whose boundary cell
/// misses the realized diagram are marked `outside`.
pub fn run_fluctuation_sampling(
    config: &ExperimentConfig,
    thetas: &[f64],
) -> Result<Vec<TrialRecord>, ExperimentError> {
    config.validate()?;
    if thetas.is_empty() {
        return Err(ExperimentError::Config("no rays given".into()));
    }
    let mut boundary = Vec::with_capacity(thetas.len());
    for &theta in thetas {
        let rt = limit_shape::r_theta(theta)
            .map_err(|e| ExperimentError::Config(e.to_string()))?;
        boundary.push(PolarPoint::new(rt, theta).expect("boundary point"));
    }

    let n = config.n;
    let records: Vec<Vec<TrialRecord>> = (0..config.trials)
        .into_par_iter()
        .map(|t| {
            let seed = trial_seed(config.seed, t as u64);
            let x = sample_realization(seed, n);
            let q = schuetzenberger::q_tableau(&x);
            boundary
                .iter()
                .map(|pt| {
                    let mut rec = TrialRecord::new(seed, n as u64);
                    rec.set("trial", t as f64);
                    rec.set("theta", pt.theta);
                    match limit_shape::psi_eval(&q, n, pt.to_scaled()) {
                        Ok(psi) => {
                            rec.set("sample", (n as f64).sqrt() * (1.0 - psi));
                            rec.set("outside", 0.0);
                        }
                        Err(_) => {
                            rec.set("outside", 1.0);
                        }
                    }
                    rec
                })
                .collect()
        })
        .collect();
    Ok(records.into_iter().flatten().collect())
}

/// Parameters for the first-column arrival experiment.
#[derive(Debug, Clone)]
pub struct ArrivalConfig {
    pub m_values: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    /// Prefix length allowed per tracked index, as a multiple of `m²`.
    pub horizon_factor: f64,
}

impl ArrivalConfig {
    pub fn new(m_values: Vec<usize>, trials: usize, seed: u64) -> Self {
        ArrivalConfig {
            m_values,
            trials,
            seed,
            horizon_factor: DEFAULT_ARRIVAL_HORIZON_FACTOR,
        }
    }
}

/// Default observation horizon multiple of `m²`; several times the
/// oracle-fitted arrival constant, so truncation is rare.
pub const DEFAULT_ARRIVAL_HORIZON_FACTOR: f64 = 16.0;

/// Per tracked index and trial: the first-column arrival step of `x_m`,
/// watched over a prefix of length `horizon_factor · m²`.
pub fn run_arrival_experiment(config: &ArrivalConfig) -> Result<Vec<TrialRecord>, ExperimentError> {
    if config.m_values.is_empty() {
        return Err(ExperimentError::Config("no tracked indices given".into()));
    }
    if config.m_values.iter().any(|&m| m < 1) {
        return Err(ExperimentError::Config("tracked indices are 1-based".into()));
    }
    if config.trials < 1 {
        return Err(ExperimentError::Config("trials must be at least 1".into()));
    }
    if !(config.horizon_factor >= 1.0) {
        return Err(ExperimentError::Config(
            "horizon factor must be at least 1".into(),
        ));
    }

    let jobs: Vec<(usize, usize)> = config
        .m_values
        .iter()
        .flat_map(|&m| (0..config.trials).map(move |t| (m, t)))
        .collect();
    let records = jobs
        .into_par_iter()
        .enumerate()
        .map(|(job, (m, t))| {
            let horizon = ((config.horizon_factor * (m * m) as f64).ceil() as usize).max(m);
            let seed = trial_seed(config.seed, job as u64);
            let x = sample_realization(seed, horizon);
            let arrival = arrival_step(&x, m).expect("m within horizon");
            let mut rec = TrialRecord::new(seed, horizon as u64);
            rec.set("m", m as f64);
            rec.set("trial", t as f64);
            match arrival {
                Some(k) => {
                    rec.set("arrived", 1.0);
                    rec.set("arrival_step", k as f64);
                }
                None => {
                    rec.set("arrived", 0.0);
                }
            }
            rec
        })
        .collect();
    Ok(records)
}

// ---------------------------------------------------------------------------
// Record output
// ---------------------------------------------------------------------------

/// CSV form: `seed,n` followed by the sorted union of measurement names;
/// absent measurements leave the cell empty.
pub fn records_to_csv(records: &[TrialRecord]) -> String {
    let mut names: BTreeSet<&str> = BTreeSet::new();
    for rec in records {
        names.extend(rec.measurements.keys().map(String::as_str));
    }
    let mut out = String::new();
    out.push_str("seed,n");
    for name in &names {
        out.push(',');
        out.push_str(name);
    }
    out.push('\n');
    for rec in records {
        let _ = write!(out, "{},{}", rec.seed, rec.n);
        for name in &names {
            out.push(',');
            if let Some(v) = rec.measurements.get(*name) {
                let _ = write!(out, "{v}");
            }
        }
        out.push('\n');
    }
    out
}

/// JSON form: an array of record objects with sorted measurement keys.
pub fn records_to_json(records: &[TrialRecord]) -> String {
    serde_json::to_string_pretty(records).expect("records serialize")
}

// ---------------------------------------------------------------------------
// Small statistics helpers shared by the drivers and the test suites
// ---------------------------------------------------------------------------

pub mod stats {
    /// Median of the values (empty input gives NaN).
    pub fn median(values: &[f64]) -> f64 {
        if values.is_empty() {
            return f64::NAN;
        }
        let mut v = values.to_vec();
        v.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        let mid = v.len() / 2;
        if v.len() % 2 == 1 {
            v[mid]
        } else {
            0.5 * (v[mid - 1] + v[mid])
        }
    }

    pub fn mean(values: &[f64]) -> f64 {
        values.iter().sum::<f64>() / values.len() as f64
    }

    fn ranks(values: &[f64]) -> Vec<f64> {
        let mut idx: Vec<usize> = (0..values.len()).collect();
        idx.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).expect("finite"));
        let mut r = vec![0.0; values.len()];
        for (pos, &i) in idx.iter().enumerate() {
            r[i] = pos as f64 + 1.0;
        }
        r
    }

    fn pearson(a: &[f64], b: &[f64]) -> f64 {
        let n = a.len() as f64;
        let (ma, mb) = (mean(a), mean(b));
        let mut cov = 0.0;
        let mut va = 0.0;
        let mut vb = 0.0;
        for (&x, &y) in a.iter().zip(b) {
            cov += (x - ma) * (y - mb);
            va += (x - ma) * (x - ma);
            vb += (y - mb) * (y - mb);
        }
        cov / (va.sqrt() * vb.sqrt()) * if n > 0.0 { 1.0 } else { f64::NAN }
    }

    /// Spearman rank correlation (no tie correction; inputs here are
    /// continuous).
    pub fn spearman(a: &[f64], b: &[f64]) -> f64 {
        pearson(&ranks(a), &ranks(b))
    }

    /// Least-squares slope through the origin of `y ≈ slope · x`.
    pub fn slope_through_origin(x: &[f64], y: &[f64]) -> f64 {
        let num: f64 = x.iter().zip(y).map(|(&a, &b)| a * b).sum();
        let den: f64 = x.iter().map(|&a| a * a).sum();
        num / den
    }

    /// Ordinary least-squares slope of `ln y` against `ln x`.
    pub fn loglog_slope(x: &[f64], y: &[f64]) -> f64 {
        let lx: Vec<f64> = x.iter().map(|&v| v.ln()).collect();
        let ly: Vec<f64> = y.iter().map(|&v| v.ln()).collect();
        let (mx, my) = (mean(&lx), mean(&ly));
        let num: f64 = lx.iter().zip(&ly).map(|(&a, &b)| (a - mx) * (b - my)).sum();
        let den: f64 = lx.iter().map(|&a| (a - mx) * (a - mx)).sum();
        num / den
    }
}

/// Calibration of the nerve decoder: least-squares fit, through the
/// origin, of the known first coordinates against the raw endpoint
/// statistics of a decoding run.
pub fn fit_kappa(records: &[TrialRecord]) -> f64 {
    let raw: Vec<f64> = records.iter().filter_map(|r| r.get("nerve_raw")).collect();
    let x1: Vec<f64> = records.iter().filter_map(|r| r.get("x1")).collect();
    stats::slope_through_origin(&raw, &x1)
}

// ---------------------------------------------------------------------------
// Embedded invariant suite
// ---------------------------------------------------------------------------

/// Result of one embedded invariant check.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

/// Cheap self-checks of the structural invariants: codec conjugacies,
/// RSK round trips, entry-path monotonicity, the running-minimum law,
/// and rerun determinism.
pub fn run_invariant_suite(seed: u64) -> Vec<CheckResult> {
    let mut out = Vec::new();

    // shift conjugacy of the rank codec
    let mut failures = 0;
    for t in 0..200u64 {
        let x = sample_realization(trial_seed(seed, t), 20);
        if weyl::shift_w(&weyl::encode_weyl(&x)).unwrap() != weyl::encode_weyl(&x.tail()) {
            failures += 1;
        }
    }
    out.push(CheckResult {
        name: "weyl_shift_conjugacy",
        pass: failures == 0,
        detail: format!("{failures}/200 failures at length 20"),
    });

    // promotion conjugacy of the recording tableau
    let mut failures = 0;
    for t in 0..200u64 {
        let len = 2 + (trial_seed(seed ^ 1, t) % 49) as usize;
        let x = sample_realization(trial_seed(seed ^ 2, t), len);
        let shifted = schuetzenberger::sch_shift(&schuetzenberger::q_tableau(&x)).unwrap();
        if shifted != schuetzenberger::q_tableau(&x.tail()) {
            failures += 1;
        }
    }
    out.push(CheckResult {
        name: "promotion_conjugacy",
        pass: failures == 0,
        detail: format!("{failures}/200 failures at lengths 2..=50"),
    });

    // RSK round trip
    let mut failures = 0;
    for t in 0..200u64 {
        let x = sample_realization(trial_seed(seed ^ 3, t), 30);
        if rsk::inverse_rsk(&rsk::rsk(&x)).unwrap() != x {
            failures += 1;
        }
    }
    out.push(CheckResult {
        name: "rsk_round_trip",
        pass: failures == 0,
        detail: format!("{failures}/200 failures at length 30"),
    });

    // running minimum at (1,1)
    let mut failures = 0;
    for t in 0..200u64 {
        if !run_min_check(&sample_realization(trial_seed(seed ^ 4, t), 50)) {
            failures += 1;
        }
    }
    out.push(CheckResult {
        name: "running_min_at_origin",
        pass: failures == 0,
        detail: format!("{failures}/200 failures over 10^4 prefixes"),
    });

    // entry-path monotonicity
    let mut failures = 0;
    for t in 0..50u64 {
        let x = sample_realization(trial_seed(seed ^ 5, t), 200);
        let m = 1 + (trial_seed(seed ^ 6, t) % 200) as usize;
        if !trace_entry(&x, m).unwrap().is_monotone() {
            failures += 1;
        }
    }
    out.push(CheckResult {
        name: "entry_path_monotone",
        pass: failures == 0,
        detail: format!("{failures}/50 failures at length 200"),
    });

    // determinism of a small decoding run
    let cfg = ExperimentConfig::new(400, 8, seed);
    let a = run_decoding_experiment(&cfg, 1.0).unwrap();
    let b = run_decoding_experiment(&cfg, 1.0).unwrap();
    out.push(CheckResult {
        name: "experiment_determinism",
        pass: a == b,
        detail: "two runs of the same config".into(),
    });

    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampling_is_deterministic_and_in_range() {
        let a = sample_realization(42, 1000);
        let b = sample_realization(42, 1000);
        assert_eq!(a, b);
        assert!(a.values().iter().all(|&v| v > 0.0 && v < 1.0));
        let c = sample_realization(43, 1000);
        assert_ne!(a, c);
    }

    #[test]
    fn sampling_passes_ks_against_uniform() {
        let n = 100_000;
        let x = sample_realization(7, n);
        let mut sorted = x.values().to_vec();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut d = 0.0f64;
        for (i, &v) in sorted.iter().enumerate() {
            let hi = (i as f64 + 1.0) / n as f64 - v;
            let lo = v - i as f64 / n as f64;
            d = d.max(hi).max(lo);
        }
        // 1% critical value of the one-sample KS statistic
        let critical = 1.63 / (n as f64).sqrt();
        assert!(d < critical, "KS statistic {d} exceeds {critical}");
    }

    #[test]
    fn trace_starts_first_value_at_origin() {
        let x = sample_realization(11, 40);
        let path = trace_entry(&x, 1).unwrap();
        assert_eq!(path.steps[0], (1, Cell::new(1, 1)));
        assert!(path.is_monotone());
    }

    #[test]
    fn trace_decreasing_word_walks_down_first_column() {
        let x = Realization::new(vec![0.9, 0.7, 0.5, 0.3]).unwrap();
        let path = trace_entry(&x, 1).unwrap();
        let cells: Vec<Cell> = path.steps.iter().map(|s| s.1).collect();
        assert_eq!(
            cells,
            vec![
                Cell::new(1, 1),
                Cell::new(2, 1),
                Cell::new(3, 1),
                Cell::new(4, 1)
            ]
        );
    }

    #[test]
    fn trace_paths_are_monotone() {
        for t in 0..20u64 {
            let x = sample_realization(trial_seed(5, t), 120);
            for m in [1, 2, 7, 60, 120] {
                assert!(trace_entry(&x, m).unwrap().is_monotone());
            }
        }
    }

    #[test]
    fn trace_agrees_with_direct_search() {
        // oracle: find the value's cell by scanning the P-tableau of
        // each prefix
        let x = sample_realization(99, 25);
        let m = 4;
        let path = trace_entry(&x, m).unwrap();
        for (k, cell) in &path.steps {
            let p = rsk::p_tableau(&x.prefix(*k));
            let v = x.values()[m - 1];
            let mut found = None;
            for (r, row) in p.rows().iter().enumerate() {
                if let Some(c) = row.iter().position(|&e| e == v) {
                    found = Some(Cell::new(r + 1, c + 1));
                }
            }
            assert_eq!(found, Some(*cell), "prefix {k}");
        }
    }

    #[test]
    fn trace_rejects_out_of_range_index() {
        let x = sample_realization(1, 5);
        assert_eq!(
            trace_entry(&x, 0).unwrap_err(),
            ExperimentError::IndexOutOfRange
        );
        assert_eq!(
            trace_entry(&x, 6).unwrap_err(),
            ExperimentError::IndexOutOfRange
        );
    }

    #[test]
    fn arrival_of_first_value_is_immediate() {
        let x = sample_realization(3, 50);
        assert_eq!(arrival_step(&x, 1).unwrap(), Some(1));
    }

    #[test]
    fn arrival_never_happens_for_last_of_increasing_word() {
        let x = Realization::new((1..=30).map(|k| k as f64 / 31.0).collect::<Vec<_>>()).unwrap();
        assert_eq!(arrival_step(&x, 30).unwrap(), None);
    }

    #[test]
    fn arrival_matches_trace() {
        let x = sample_realization(17, 300);
        for m in [2, 3, 5, 8] {
            let by_trace = trace_entry(&x, m)
                .unwrap()
                .steps
                .iter()
                .find(|(_, c)| c.col == 1)
                .map(|(k, _)| *k);
            assert_eq!(arrival_step(&x, m).unwrap(), by_trace, "m={m}");
        }
    }

    #[test]
    fn min_check_holds_on_random_and_monotone_words() {
        assert!(run_min_check(&sample_realization(23, 500)));
        assert!(run_min_check(
            &Realization::new(vec![0.9, 0.7, 0.5, 0.3]).unwrap()
        ));
        assert!(run_min_check(
            &Realization::new(vec![0.3, 0.5, 0.7, 0.9]).unwrap()
        ));
    }

    #[test]
    fn decoding_experiment_is_deterministic() {
        let cfg = ExperimentConfig::new(200, 10, 5);
        let a = run_decoding_experiment(&cfg, 1.0).unwrap();
        let b = run_decoding_experiment(&cfg, 1.0).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 10);
        assert!(a[0].get("conjugacy_ok").is_some());
    }

    #[test]
    fn decoding_experiment_rejects_bad_config() {
        assert!(run_decoding_experiment(&ExperimentConfig::new(1, 10, 5), 1.0).is_err());
        assert!(run_decoding_experiment(&ExperimentConfig::new(10, 0, 5), 1.0).is_err());
        assert!(run_decoding_experiment(&ExperimentConfig::new(10, 1, 5), 0.0).is_err());
    }

    #[test]
    fn weyl_error_shrinks_with_n() {
        let small = run_decoding_experiment(&ExperimentConfig::new(100, 60, 9), 1.0).unwrap();
        let large = run_decoding_experiment(&ExperimentConfig::new(10_000, 60, 9), 1.0).unwrap();
        let err = |recs: &[TrialRecord]| {
            let v: Vec<f64> = recs.iter().filter_map(|r| r.get("weyl_abs_error")).collect();
            stats::median(&v)
        };
        assert!(err(&large) < err(&small));
    }

    #[test]
    fn shape_experiment_reports_ratios() {
        let recs = run_shape_experiment(&ExperimentConfig::new(2500, 8, 31)).unwrap();
        for rec in &recs {
            let rr = rec.get("row_ratio").unwrap();
            let cr = rec.get("col_ratio").unwrap();
            assert!(rr > 1.0 && rr < 3.0, "row ratio {rr}");
            assert!(cr > 1.0 && cr < 3.0, "col ratio {cr}");
            assert!(rec.get("profile_distance").unwrap() < 0.5);
        }
    }

    #[test]
    fn arch_experiment_marks_inside_and_outside() {
        let grid = default_arch_grid(5, 5);
        assert_eq!(grid.len(), 25);
        let recs = run_arch_experiment(&ExperimentConfig::new(400, 4, 77), &grid).unwrap();
        assert_eq!(recs.len(), 100);
        for rec in &recs {
            match rec.get("outside") {
                Some(0.0) => {
                    assert!(rec.get("phi_abs_error").is_some());
                    assert!(rec.get("psi_abs_error").is_some());
                }
                Some(1.0) => assert!(rec.get("phi").is_none()),
                other => panic!("missing outside flag: {other:?}"),
            }
        }
    }

    #[test]
    fn arch_experiment_rejects_points_beyond_boundary() {
        let theta = std::f64::consts::FRAC_PI_4;
        let rt = limit_shape::r_theta(theta).unwrap();
        let bad = vec![PolarPoint::new(rt + 0.05, theta).unwrap()];
        assert!(matches!(
            run_arch_experiment(&ExperimentConfig::new(100, 1, 0), &bad),
            Err(ExperimentError::Config(_))
        ));
    }

    #[test]
    fn fluctuation_samples_are_nonnegative_and_deterministic() {
        let thetas = [0.4, std::f64::consts::FRAC_PI_4, 1.1];
        let cfg = ExperimentConfig::new(900, 6, 13);
        let a = run_fluctuation_sampling(&cfg, &thetas).unwrap();
        let b = run_fluctuation_sampling(&cfg, &thetas).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 18);
        let mut inside = 0;
        for rec in &a {
            if rec.get("outside") == Some(0.0) {
                inside += 1;
                assert!(rec.get("sample").unwrap() >= 0.0);
            }
        }
        // bookkeeping: samples + skips account for every (trial, ray)
        assert_eq!(
            inside + a.iter().filter(|r| r.get("outside") == Some(1.0)).count(),
            18
        );
    }

    #[test]
    fn arrival_experiment_records_every_job() {
        let cfg = ArrivalConfig {
            m_values: vec![2, 4],
            trials: 6,
            seed: 3,
            horizon_factor: 16.0,
        };
        let recs = run_arrival_experiment(&cfg).unwrap();
        assert_eq!(recs.len(), 12);
        for rec in &recs {
            let arrived = rec.get("arrived").unwrap();
            if arrived == 1.0 {
                let k = rec.get("arrival_step").unwrap();
                let m = rec.get("m").unwrap();
                assert!(k >= m);
            }
        }
    }

    #[test]
    fn csv_has_union_header_and_empty_cells() {
        let mut r1 = TrialRecord::new(1, 10);
        r1.set("alpha", 0.5);
        let mut r2 = TrialRecord::new(2, 10);
        r2.set("beta", 1.5);
        let csv = records_to_csv(&[r1, r2]);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "seed,n,alpha,beta");
        assert_eq!(lines[1], "1,10,0.5,");
        assert_eq!(lines[2], "2,10,,1.5");
    }

    #[test]
    fn invariant_suite_passes() {
        for check in run_invariant_suite(2024) {
            assert!(check.pass, "{}: {}", check.name, check.detail);
        }
    }

    #[test]
    fn stats_helpers() {
        assert_eq!(stats::median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(stats::median(&[4.0, 1.0, 2.0, 3.0]), 2.5);
        let x = [1.0, 2.0, 3.0, 4.0];
        let y = [2.0, 4.0, 6.0, 8.0];
        assert!((stats::slope_through_origin(&x, &y) - 2.0).abs() < 1e-12);
        assert!((stats::spearman(&x, &y) - 1.0).abs() < 1e-12);
        let down = [8.0, 6.0, 4.0, 2.0];
        assert!((stats::spearman(&x, &down) + 1.0).abs() < 1e-12);
        // y = x^2 on a log-log fit
        let ys: Vec<f64> = x.iter().map(|&v| v * v).collect();
        assert!((stats::loglog_slope(&x, &ys) - 2.0).abs() < 1e-12);
    }
}
