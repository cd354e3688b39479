//! Command-line front end: encode words with either codec, inspect
//! nerves, sample the analytic limit objects, and run the seeded Monte
//! Carlo experiments.
//!
//! Exit codes: 0 on success, 1 on an invariant-suite violation, 2 on a
//! configuration error.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use rsk_codec::experiments::{self, ArrivalConfig, ExperimentConfig, TrialRecord};
use rsk_codec::limit_shape;
use rsk_codec::schuetzenberger;
use rsk_codec::tableau::{Realization, StandardTableau};
use rsk_codec::weyl;

#[derive(Parser)]
#[command(name = "rsk-codec", version, about = "Combinatorial codecs for sequences of reals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// RSK correspondence tools
    Rsk {
        #[command(subcommand)]
        command: RskCommand,
    },
    /// Rank codec on the triangular compactum
    Weyl {
        #[command(subcommand)]
        command: WeylCommand,
    },
    /// Nerve inspection
    Nerve {
        #[command(subcommand)]
        command: NerveCommand,
    },
    /// First-coordinate decoders
    Decode {
        #[command(subcommand)]
        command: DecodeCommand,
    },
    /// Analytic limit objects
    Shape {
        #[command(subcommand)]
        command: ShapeCommand,
    },
    /// Seeded Monte Carlo experiments
    Experiment(ExperimentArgs),
}

#[derive(Subcommand)]
enum RskCommand {
    /// Apply RSK to whitespace-separated reals and emit tableaux as JSON
    Encode {
        /// Input file, or `-` for stdin
        #[arg(long, default_value = "-")]
        input: String,
        /// Comma-separated tableaux to emit: p, q, or both
        #[arg(long, default_value = "p,q")]
        emit: String,
    },
}

#[derive(Subcommand)]
enum WeylCommand {
    /// Rank-encode whitespace-separated reals
    Encode {
        /// Input file, or `-` for stdin
        #[arg(long, default_value = "-")]
        input: String,
    },
    /// Sample sequences and decode the first coordinate from ranks
    Decode {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        trials: usize,
    },
}

#[derive(Subcommand)]
enum NerveCommand {
    /// Print the nerve of a standard tableau (canonical JSON file)
    Show {
        #[arg(long)]
        tableau: PathBuf,
    },
}

#[derive(Subcommand)]
enum DecodeCommand {
    /// Decode the first coordinate from the nerve endpoint over sampled
    /// sequences
    Nerve {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1.0)]
        kappa: f64,
    },
}

#[derive(Subcommand)]
enum ShapeCommand {
    /// Tabulate the limit curve as CSV `(s, omega)`
    Omega {
        /// Number of sample points across [-1, 1]
        #[arg(long, default_value_t = 201)]
        samples: usize,
    },
    /// Tabulate the arch as CSV `(r, theta, arch)` on an R x T grid
    Arch {
        /// Radial and angular step counts, e.g. 20,9
        #[arg(long, value_parser = parse_grid, default_value = "20,9")]
        grid: (usize, usize),
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ExperimentKind {
    /// First-coordinate decoding error of both codecs
    Decode,
    /// Limit-shape distance and row/column growth
    Shape,
    /// Deviation of the scaled tableau functions from the arch
    Arch,
    /// First-column arrival steps of tracked coordinates
    Arrival,
    /// Boundary fluctuation samples
    Fluct,
}

#[derive(Args)]
struct ExperimentArgs {
    kind: ExperimentKind,
    #[arg(long, default_value_t = 1000)]
    n: usize,
    #[arg(long, default_value_t = 50)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Write output here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
    /// Nerve calibration constant (decode experiment)
    #[arg(long, default_value_t = 1.0)]
    kappa: f64,
    /// Tracked indices (arrival experiment)
    #[arg(long, value_delimiter = ',', default_value = "5,10,20,40")]
    m_values: Vec<usize>,
    /// Rays in radians (fluct experiment)
    #[arg(long, value_delimiter = ',', default_value = "0.3926990816987241,0.7853981633974483,1.1780972450961724")]
    thetas: Vec<f64>,
    /// Arch grid as angular,radial counts
    #[arg(long, value_parser = parse_grid, default_value = "5,5")]
    grid: (usize, usize),
    /// Run the embedded invariant suite instead of the experiment
    #[arg(long)]
    check: bool,
}

fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err("expected two comma-separated counts".into());
    }
    let a = parts[0].trim().parse().map_err(|_| "bad count".to_string())?;
    let b = parts[1].trim().parse().map_err(|_| "bad count".to_string())?;
    if a == 0 || b == 0 {
        return Err("counts must be positive".into());
    }
    Ok((a, b))
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut buf = String::new();
        io::stdin()
            .read_to_string(&mut buf)
            .context("reading stdin")?;
        Ok(buf)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

fn parse_realization(text: &str) -> Result<Realization> {
    let mut values = Vec::new();
    for tok in text.split_whitespace() {
        values.push(
            tok.parse::<f64>()
                .with_context(|| format!("not a real number: {tok:?}"))?,
        );
    }
    if values.is_empty() {
        bail!("input contains no values");
    }
    Realization::new(values).context("invalid input sequence")
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, content).with_context(|| format!("writing {path:?}")),
        None => io::stdout()
            .write_all(content.as_bytes())
            .context("writing stdout"),
    }
}

fn run() -> Result<ExitCode> {
    let cli = Cli::parse();
    match cli.command {
        Command::Rsk { command } => match command {
            RskCommand::Encode { input, emit: which } => {
                let x = parse_realization(&read_input(&input)?)?;
                let pair = rsk_codec::rsk::rsk(&x);
                let mut parts = Vec::new();
                for name in which.split(',') {
                    match name.trim() {
                        "p" => parts.push(format!("\"p\":{}", pair.p.to_canonical_json())),
                        "q" => parts.push(format!("\"q\":{}", pair.q.to_canonical_json())),
                        other => bail!("unknown tableau {other:?}; expected p or q"),
                    }
                }
                println!("{{{}}}", parts.join(","));
            }
        },
        Command::Weyl { command } => match command {
            WeylCommand::Encode { input } => {
                let x = parse_realization(&read_input(&input)?)?;
                let z = weyl::encode_weyl(&x);
                let text: Vec<String> = z.values().iter().map(|v| v.to_string()).collect();
                println!("{}", text.join(" "));
            }
            WeylCommand::Decode { n, seed, trials } => {
                if n < 1 || trials < 1 {
                    bail!("n and trials must be positive");
                }
                let mut out = String::from("x1,estimate,abs_error\n");
                for t in 0..trials {
                    let x = experiments::sample_realization(
                        experiments::trial_seed(seed, t as u64),
                        n,
                    );
                    let x1 = x.values()[0];
                    let est = weyl::decode_first_weyl(&weyl::encode_weyl(&x));
                    out.push_str(&format!("{x1},{est},{}\n", (est - x1).abs()));
                }
                print!("{out}");
            }
        },
        Command::Nerve { command } => match command {
            NerveCommand::Show { tableau } => {
                let text = fs::read_to_string(&tableau)
                    .with_context(|| format!("reading {tableau:?}"))?;
                let q = StandardTableau::from_canonical_json(&text)
                    .context("parsing standard tableau")?;
                let nerve = schuetzenberger::nerve(&q).context("tracing nerve")?;
                println!("row,col,value");
                for (cell, value) in nerve.cells.iter().zip(&nerve.values) {
                    println!("{},{},{value}", cell.row, cell.col);
                }
            }
        },
        Command::Decode { command } => match command {
            DecodeCommand::Nerve {
                n,
                trials,
                seed,
                kappa,
            } => {
                if n < 1 || trials < 1 {
                    bail!("n and trials must be positive");
                }
                if !(kappa > 0.0) {
                    bail!("kappa must be positive");
                }
                println!("trial,x1,a1,a2,estimate");
                for t in 0..trials {
                    let x = experiments::sample_realization(
                        experiments::trial_seed(seed, t as u64),
                        n,
                    );
                    let x1 = x.values()[0];
                    let q = schuetzenberger::q_tableau(&x);
                    let (a1, a2) = schuetzenberger::nerve_endpoint(&q).expect("nonempty");
                    let est = schuetzenberger::decode_first_nerve(&q, kappa).expect("nonempty");
                    println!("{t},{x1},{a1},{a2},{est}");
                }
            }
        },
        Command::Shape { command } => match command {
            ShapeCommand::Omega { samples } => {
                if samples < 2 {
                    bail!("need at least two samples");
                }
                println!("s,omega");
                for k in 0..samples {
                    let s = (-1.0 + 2.0 * k as f64 / (samples - 1) as f64).clamp(-1.0, 1.0);
                    println!("{s},{}", limit_shape::omega(s).expect("|s| <= 1"));
                }
            }
            ShapeCommand::Arch { grid: (nr, nt) } => {
                println!("r,theta,arch");
                for i in 1..=nt {
                    let theta = std::f64::consts::FRAC_PI_2 * i as f64 / (nt as f64 + 1.0);
                    let rt = limit_shape::r_theta(theta).expect("interior angle");
                    for j in 0..=nr {
                        let r = rt * j as f64 / nr as f64;
                        let a = limit_shape::arch(
                            limit_shape::PolarPoint::new(r, theta).expect("valid"),
                        )
                        .expect("inside");
                        println!("{r},{theta},{a}");
                    }
                }
            }
        },
        Command::Experiment(args) => return run_experiment(args),
    }
    Ok(ExitCode::SUCCESS)
}

fn run_experiment(args: ExperimentArgs) -> Result<ExitCode> {
    if args.check {
        let mut ok = true;
        for check in experiments::run_invariant_suite(args.seed) {
            let status = if check.pass { "ok" } else { "FAIL" };
            println!("{status}  {}  ({})", check.name, check.detail);
            ok &= check.pass;
        }
        return Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) });
    }

    let cfg = ExperimentConfig::new(args.n, args.trials, args.seed);
    let records: Vec<TrialRecord> = match args.kind {
        ExperimentKind::Decode => experiments::run_decoding_experiment(&cfg, args.kappa)?,
        ExperimentKind::Shape => experiments::run_shape_experiment(&cfg)?,
        ExperimentKind::Arch => {
            let grid = experiments::default_arch_grid(args.grid.0, args.grid.1);
            experiments::run_arch_experiment(&cfg, &grid)?
        }
        ExperimentKind::Arrival => {
            let arrival = ArrivalConfig::new(args.m_values.clone(), args.trials, args.seed);
            experiments::run_arrival_experiment(&arrival)?
        }
        ExperimentKind::Fluct => experiments::run_fluctuation_sampling(&cfg, &args.thetas)?,
    };
    let content = match args.format {
        OutputFormat::Csv => experiments::records_to_csv(&records),
        OutputFormat::Json => experiments::records_to_json(&records),
    };
    emit(&args.out, &content)?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
