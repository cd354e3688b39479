//! Temporary calibration harness (deleted before release).

use rsk_codec::experiments::{self, stats, ArrivalConfig, ExperimentConfig};

#[test]
#[ignore]
fn calibrate_nerve() {
    for n in [1_000usize, 10_000] {
        let cfg = ExperimentConfig::new(n, 200, 424242);
        let recs = experiments::run_decoding_experiment(&cfg, 1.0).unwrap();
        let x1: Vec<f64> = recs.iter().map(|r| r.get("x1").unwrap()).collect();
        let a1: Vec<f64> = recs.iter().map(|r| r.get("nerve_a1").unwrap()).collect();
        let a2: Vec<f64> = recs.iter().map(|r| r.get("nerve_a2").unwrap()).collect();
        let raw: Vec<f64> = recs.iter().map(|r| r.get("nerve_raw").unwrap()).collect();
        let sp_row = stats::spearman(&x1, &a1);
        let sp_col = stats::spearman(&x1, &a2);
        let kappa = experiments::fit_kappa(&recs);
        let errs: Vec<f64> = x1
            .iter()
            .zip(&raw)
            .map(|(&x, &s)| ((kappa * s).clamp(0.0, 1.0) - x).abs())
            .collect();
        let med = stats::median(&errs);
        // residuals by x1 band
        let mut bands = vec![Vec::new(); 5];
        for (&x, &s) in x1.iter().zip(&raw) {
            let b = ((x * 5.0) as usize).min(4);
            bands[b].push(((kappa * s).clamp(0.0, 1.0) - x).abs());
        }
        let band_meds: Vec<f64> = bands.iter().map(|b| stats::median(b)).collect();
        // spread of raw given x1 in the middle band
        let mid: Vec<f64> = x1
            .iter()
            .zip(&raw)
            .filter(|(&x, _)| (0.45..0.55).contains(&x))
            .map(|(_, &s)| s)
            .collect();
        let mid_mean = stats::mean(&mid);
        let mid_sd = (mid.iter().map(|v| (v - mid_mean).powi(2)).sum::<f64>()
            / mid.len().max(1) as f64)
            .sqrt();
        println!("n={n}: spearman(x1,a1)={sp_row:.4} spearman(x1,a2)={sp_col:.4}");
        println!("  kappa={kappa:.4} median|err|={med:.4} band_medians={band_meds:?}");
        println!("  raw|x1~0.5: count={} mean={mid_mean:.4} sd={mid_sd:.4}", mid.len());
    }
}

#[test]
#[ignore]
fn calibrate_arrival() {
    let cfg = ArrivalConfig {
        m_values: vec![5, 10, 20, 40],
        trials: 200,
        seed: 987,
        horizon_factor: 800.0,
    };
    let recs = experiments::run_arrival_experiment(&cfg).unwrap();
    for &m in &cfg.m_values {
        // unconditional order statistics: unarrived count as +infinity
        let mut all: Vec<f64> = recs
            .iter()
            .filter(|r| r.get("m") == Some(m as f64))
            .map(|r| r.get("arrival_step").unwrap_or(f64::INFINITY))
            .collect();
        all.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let total = all.len();
        let arrived = all.iter().filter(|v| v.is_finite()).count();
        let q = |p: f64| all[((total as f64 - 1.0) * p).ceil() as usize];
        println!(
            "m={m}: arrived {arrived}/{total} median={} q90={} q95={} q95/m^2={:.2}",
            q(0.5),
            q(0.9),
            q(0.95),
            q(0.95) / (m * m) as f64,
        );
        for t in [1.0, 4.0, 16.0, 64.0, 256.0, 800.0] {
            let cnt = all.iter().filter(|&&v| v <= t * (m * m) as f64).count();
            print!("  P(T<={t}m^2)={:.3}", cnt as f64 / total as f64);
        }
        println!();
    }
    let med: Vec<f64> = cfg
        .m_values
        .iter()
        .map(|&m| {
            let arr: Vec<f64> = recs
                .iter()
                .filter(|r| r.get("m") == Some(m as f64) && r.get("arrived") == Some(1.0))
                .map(|r| r.get("arrival_step").unwrap())
                .collect();
            stats::median(&arr)
        })
        .collect();
    let ms: Vec<f64> = cfg.m_values.iter().map(|&m| m as f64).collect();
    println!("loglog slope of median arrival vs m: {:.3}", stats::loglog_slope(&ms, &med));
}

#[test]
#[ignore]
fn calibrate_sink() {
    let mut errs = Vec::new();
    let mut errs_sqrt = Vec::new();
    let mut ratios = Vec::new();
    let mut x1s = Vec::new();
    for t in 0..100u64 {
        let x = experiments::sample_realization(experiments::trial_seed(2718, t), 10_000);
        let x1 = x.values()[0];
        let path = experiments::trace_entry(&x, 1).unwrap();
        let p = rsk_codec::rsk::p_tableau(&x);
        let col_len = p.shape().row_count() as f64;
        let row = path.final_cell().row as f64;
        errs.push((row / col_len - x1).abs());
        errs_sqrt.push((row / col_len - x1.sqrt()).abs());
        ratios.push(row / col_len);
        x1s.push(x1);
    }
    println!("sink: median |row/colLen - x1|       = {:.4}", stats::median(&errs));
    println!("sink: median |row/colLen - sqrt(x1)| = {:.4}", stats::median(&errs_sqrt));
    println!("sink: spearman(ratio, x1) = {:.4}", stats::spearman(&ratios, &x1s));
}

#[test]
#[ignore]
fn calibrate_weyl_slope_and_arch() {
    let sizes = [100usize, 1_000, 10_000, 100_000];
    let mut meds = Vec::new();
    for &n in &sizes {
        let recs =
            experiments::run_decoding_experiment(&ExperimentConfig::new(n, 200, 5150), 1.0)
                .unwrap();
        let errs: Vec<f64> = recs.iter().map(|r| r.get("weyl_abs_error").unwrap()).collect();
        meds.push(stats::median(&errs));
    }
    let ns: Vec<f64> = sizes.iter().map(|&n| n as f64).collect();
    println!("weyl medians: {meds:?}");
    println!("weyl loglog slope: {:.4}", stats::loglog_slope(&ns, &meds));

    let grid = experiments::default_arch_grid(5, 5);
    let recs =
        experiments::run_arch_experiment(&ExperimentConfig::new(10_000, 50, 31337), &grid).unwrap();
    let phi: Vec<f64> = recs.iter().filter_map(|r| r.get("phi_abs_error")).collect();
    let psi: Vec<f64> = recs.iter().filter_map(|r| r.get("psi_abs_error")).collect();
    let outside = recs.iter().filter(|r| r.get("outside") == Some(1.0)).count();
    println!(
        "arch: mean|phi-A|={:.4} mean|psi-A|={:.4} outside={outside}/{}",
        stats::mean(&phi),
        stats::mean(&psi),
        recs.len()
    );

    let recs = experiments::run_shape_experiment(&ExperimentConfig::new(10_000, 50, 777)).unwrap();
    let dist: Vec<f64> = recs.iter().map(|r| r.get("profile_distance").unwrap()).collect();
    let rr: Vec<f64> = recs.iter().map(|r| r.get("row_ratio").unwrap()).collect();
    let cr: Vec<f64> = recs.iter().map(|r| r.get("col_ratio").unwrap()).collect();
    println!(
        "shape: median dist={:.4} mean row_ratio={:.4} mean col_ratio={:.4}",
        stats::median(&dist),
        stats::mean(&rr),
        stats::mean(&cr)
    );

    // sink rate: row of x1 divided by first-column length vs x1
    let mut errs = Vec::new();
    let mut errs_sqrt = Vec::new();
    let mut ratios = Vec::new();
    let mut x1s = Vec::new();
    for t in 0..100u64 {
        let x = experiments::sample_realization(experiments::trial_seed(2718, t), 10_000);
        let x1 = x.values()[0];
        let path = experiments::trace_entry(&x, 1).unwrap();
        let p = rsk_codec::rsk::p_tableau(&x);
        let col_len = p.shape().row_count() as f64;
        let row = path.final_cell().row as f64;
        errs.push((row / col_len - x1).abs());
        errs_sqrt.push((row / col_len - x1.sqrt()).abs());
        ratios.push(row / col_len);
        x1s.push(x1);
    }
    println!("sink rate: median |row/colLen - x1|      = {:.4}", stats::median(&errs));
    println!("sink rate: median |row/colLen - sqrt(x1)| = {:.4}", stats::median(&errs_sqrt));
    println!("sink rate: spearman(ratio, x1) = {:.4}", stats::spearman(&ratios, &x1s));
}
