use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::Signed;

use rncdim::formula::regularity_index;
use rncdim::oracle::{
    consistency_sweep, grid_instances, OracleMode, OracleOptions, SweepOptions, Verdict,
    DEFAULT_CAP_CELLS,
};
use rncdim::parse::{parse_evaluators, parse_grid, parse_mults, parse_oracle_mode, GridSpec};
use rncdim::report::{render_dimension, render_special_effects, system_label, StructuredReport};
use rncdim::{evaluate_with, normalize, vdim, EvalOptions, Evaluator, LinearSystemSpec, Method};

#[derive(Parser, Debug)]
#[command(
    name = "rncdim",
    version,
    about = "Dimensions of linear systems through fat points on a rational normal curve"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Human)]
    format: Format,

    /// Oracle mode: exact, modular or modular:K.
    #[arg(long, global = true)]
    oracle: Option<String>,

    /// Seed for every random choice (oracle primes).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Largest conditions matrix (rows x cols) the oracle will build.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP_CELLS)]
    cap_cells: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Args, Debug)]
struct SystemArgs {
    /// Ambient dimension.
    #[arg(short = 'n')]
    n: u32,
    /// Degree.
    #[arg(short = 'd', allow_negative_numbers = true)]
    d: i64,
    /// Multiplicities, e.g. 7,6^2,5^7; may be repeated.
    #[arg(short = 'm', allow_hyphen_values = true)]
    mults: Vec<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimension of one system.
    Dim {
        #[command(flatten)]
        system: SystemArgs,
        /// auto, formula, ldim, planar, recursive or oracle.
        #[arg(long, default_value = "auto")]
        evaluators: String,
    },
    /// Special-effect join classes and their contributions.
    Report {
        #[command(flatten)]
        system: SystemArgs,
    },
    /// Compare evaluators on one system or on a grid.
    Verify {
        #[arg(short = 'n', requires = "d")]
        n: Option<u32>,
        #[arg(short = 'd', allow_negative_numbers = true)]
        d: Option<i64>,
        #[arg(short = 'm', allow_hyphen_values = true)]
        mults: Vec<String>,
        /// Evaluators to compare.
        #[arg(long, default_value = "all")]
        evaluators: String,
        /// Grid such as n=2..3,s=n+3..n+6,d=0..6,m=1..4.
        #[arg(long, conflicts_with_all = ["n", "d", "mults"])]
        grid: Option<String>,
    },
    /// Least degree from which the system is non-special.
    Regindex {
        #[arg(short = 'n')]
        n: u32,
        #[arg(short = 'm', allow_hyphen_values = true, required = true)]
        mults: Vec<String>,
        /// Also check degrees delta-1 ..= delta+W.
        #[arg(long)]
        window: Option<i64>,
    },
    /// One JSON record per grid instance.
    Sweep {
        #[arg(long)]
        grid: String,
        /// Skip instances equal to an earlier one after normalization.
        #[arg(long)]
        dedup: bool,
    },
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<rncdim::Error> for Failure {
    fn from(e: rncdim::Error) -> Self {
        let code = if e.is_domain() {
            3
        } else if matches!(e, rncdim::Error::PlanarInconsistency(_)) {
            1
        } else {
            2
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<rncdim::parse::ParseError> for Failure {
    fn from(e: rncdim::parse::ParseError) -> Self {
        Failure::input(e.to_string())
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn mults_of(raw: &[String]) -> Result<Vec<i64>, Failure> {
    Ok(parse_mults(&raw.join(","))?)
}

fn system(n: u32, d: i64, raw: &[String]) -> Result<LinearSystemSpec, Failure> {
    Ok(LinearSystemSpec::new(n, d, mults_of(raw)?)?)
}

fn options(cli: &Cli) -> Result<EvalOptions, Failure> {
    let mode = match &cli.oracle {
        Some(text) => parse_oracle_mode(text)?,
        None => OracleMode::Exact,
    };
    Ok(EvalOptions {
        oracle: OracleOptions {
            mode,
            cap_cells: cli.cap_cells,
            seed: cli.seed,
        },
        ..Default::default()
    })
}

/// `--oracle` only makes sense when the oracle runs.
fn check_oracle_flag(cli: &Cli, evaluators: &[Evaluator]) -> Result<(), Failure> {
    if cli.oracle.is_some() && !evaluators.contains(&Evaluator::Oracle) {
        return Err(Failure::input(
            "--oracle given but the oracle is not among the evaluators",
        ));
    }
    Ok(())
}

fn run(cli: &Cli) -> Outcome {
    let opts = options(cli)?;
    match &cli.command {
        Command::Dim {
            system: s,
            evaluators,
        } => {
            let chosen = parse_evaluators(evaluators)?;
            let [evaluator] = chosen[..] else {
                return Err(Failure::input(
                    "dim takes a single evaluator; use verify to compare",
                ));
            };
            check_oracle_flag(cli, &chosen)?;
            let spec = system(s.n, s.d, &s.mults)?;
            cmd_dim(cli.format, &spec, evaluator, &opts)
        }
        Command::Report { system: s } => {
            if cli.oracle.is_some() {
                return Err(Failure::input(
                    "--oracle given but report does not run the oracle",
                ));
            }
            let spec = system(s.n, s.d, &s.mults)?;
            cmd_report(cli.format, &spec, &opts)
        }
        Command::Verify {
            n,
            d,
            mults,
            evaluators,
            grid,
        } => {
            if let Some(grid) = grid {
                if evaluators != "all" {
                    return Err(Failure::input("--grid always runs every evaluator"));
                }
                return cmd_verify_grid(cli.format, &parse_grid(grid)?, &opts);
            }
            let (Some(n), Some(d)) = (n, d) else {
                return Err(Failure::input("verify needs -n, -d and -m, or --grid"));
            };
            let chosen = parse_evaluators(evaluators)?;
            check_oracle_flag(cli, &chosen)?;
            let spec = system(*n, *d, mults)?;
            cmd_verify(cli.format, &spec, &chosen, &opts)
        }
        Command::Regindex { n, mults, window } => {
            if cli.oracle.is_some() {
                return Err(Failure::input(
                    "--oracle given but regindex does not run the oracle",
                ));
            }
            if window.is_some_and(|w| w < 0) {
                return Err(Failure::input("--window must be non-negative"));
            }
            cmd_regindex(cli.format, *n, &mults_of(mults)?, *window, &opts)
        }
        Command::Sweep { grid, dedup } => {
            let grid = parse_grid(grid)?;
            let records = consistency_sweep(
                &grid_instances(&grid),
                &SweepOptions {
                    oracle: opts.oracle,
                    recursion: opts.recursion,
                    dedup_normalized: *dedup,
                },
            );
            for rec in &records {
                println!("{}", rec.to_json());
            }
            Ok(0)
        }
    }
}

fn cmd_dim(
    format: Format,
    spec: &LinearSystemSpec,
    evaluator: Evaluator,
    opts: &EvalOptions,
) -> Outcome {
    let report = evaluate_with(spec, evaluator, opts)?;
    match format {
        Format::Human => print!("{}", render_dimension(&report)),
        Format::Json => println!("{}", StructuredReport::new(&report, None).to_json()),
    }
    Ok(0)
}

fn cmd_report(format: Format, spec: &LinearSystemSpec, opts: &EvalOptions) -> Outcome {
    let report = evaluate_with(spec, Evaluator::Formula, opts)?;
    match format {
        Format::Human => print!("{}", render_special_effects(&report)),
        Format::Json => println!("{}", StructuredReport::new(&report, None).to_json()),
    }
    Ok(0)
}

/// Value of one evaluator, or why it was not run.
enum Cell {
    Value(BigInt, &'static str),
    Skipped(String),
}

fn cmd_verify(
    format: Format,
    spec: &LinearSystemSpec,
    chosen: &[Evaluator],
    opts: &EvalOptions,
) -> Outcome {
    let mut cells = Vec::new();
    let mut last_report = None;
    for &e in chosen {
        let cell = match evaluate_with(spec, e, opts) {
            Ok(report) => {
                let note = if report.has_flag(rncdim::ReportFlag::Probabilistic) {
                    "probabilistic"
                } else {
                    ""
                };
                let value = report.dimension.clone();
                last_report = Some(report);
                Cell::Value(value, note)
            }
            Err(err) if err.is_domain() => Cell::Skipped(err.to_string()),
            Err(err) => return Err(err.into()),
        };
        cells.push((e, cell));
    }
    let value_of = |e: Evaluator| {
        cells.iter().find_map(|(x, c)| match c {
            Cell::Value(v, _) if *x == e => Some(v.clone()),
            _ => None,
        })
    };
    let reference = value_of(Evaluator::Oracle).or_else(|| value_of(Evaluator::Recursive));
    let mut disagree = false;
    for (e, cell) in &cells {
        let Cell::Value(v, _) = cell else { continue };
        let Some(r) = &reference else { continue };
        // Closed formulas only claim h^0 on effective systems.
        let compared = match e {
            Evaluator::Formula | Evaluator::Ldim | Evaluator::Auto => r.is_positive(),
            _ => true,
        };
        if compared && v != r {
            disagree = true;
        }
    }
    let values: Vec<&BigInt> = cells
        .iter()
        .filter_map(|(_, c)| match c {
            Cell::Value(v, _) => Some(v),
            Cell::Skipped(_) => None,
        })
        .collect();
    if reference.is_none() && values.windows(2).any(|w| w[0] != w[1]) {
        disagree = true;
    }
    let verdict = if disagree {
        Verdict::Disagree
    } else if normalize(spec).is_unchanged() {
        Verdict::Agree
    } else {
        Verdict::AgreeNormalized
    };

    match format {
        Format::Human => {
            let mut out = String::new();
            let _ = writeln!(out, "{}", system_label(spec.n(), spec.d(), spec.mults()));
            let sys = normalize(spec);
            if !sys.is_unchanged() {
                let _ = writeln!(
                    out,
                    "compared after normalization to {}",
                    system_label(sys.n(), sys.d(), sys.mults())
                );
            }
            for (e, cell) in &cells {
                match cell {
                    Cell::Value(v, "") => {
                        let _ = writeln!(out, "{:<10} {v}", e.name());
                    }
                    Cell::Value(v, note) => {
                        let _ = writeln!(out, "{:<10} {v} ({note})", e.name());
                    }
                    Cell::Skipped(why) => {
                        let _ = writeln!(out, "{:<10} n/a ({why})", e.name());
                    }
                }
            }
            let _ = writeln!(out, "verdict    {}", verdict.name());
            print!("{out}");
        }
        Format::Json => {
            let mut fields = serde_json::Map::new();
            for (e, cell) in &cells {
                let v = match cell {
                    Cell::Value(v, _) => serde_json::Value::Number(
                        v.to_string().parse().expect("integer is a JSON number"),
                    ),
                    Cell::Skipped(_) => serde_json::Value::Null,
                };
                fields.insert(e.name().to_string(), v);
            }
            let mut structured = match last_report {
                Some(report) => serde_json::to_value(StructuredReport::new(&report, Some(verdict)))
                    .expect("report serializes"),
                None => serde_json::json!({ "verdict": verdict }),
            };
            structured["values"] = serde_json::Value::Object(fields);
            println!("{structured}");
        }
    }
    Ok(if disagree { 1 } else { 0 })
}

fn cmd_verify_grid(format: Format, grid: &GridSpec, opts: &EvalOptions) -> Outcome {
    let instances = grid_instances(grid);
    let records = consistency_sweep(
        &instances,
        &SweepOptions {
            oracle: opts.oracle,
            recursion: opts.recursion,
            dedup_normalized: true,
        },
    );
    let bad: Vec<_> = records
        .iter()
        .filter(|r| !r.verdict.is_agreement())
        .collect();
    let disagreements = bad
        .iter()
        .filter(|r| r.verdict == Verdict::Disagree)
        .count();
    let errors = bad.len() - disagreements;
    match format {
        Format::Human => {
            println!("grid {grid}");
            println!(
                "{} instances, {} after normalization, {disagreements} disagreements, {errors} errors",
                instances.len(),
                records.len()
            );
            for rec in &bad {
                println!("{}", rec.to_json());
            }
        }
        Format::Json => {
            let summary = serde_json::json!({
                "grid": grid.to_string(),
                "instances": instances.len(),
                "normalized": records.len(),
                "disagreements": disagreements,
                "errors": errors,
                "failures": bad,
            });
            println!("{summary}");
        }
    }
    Ok(if bad.is_empty() { 0 } else { 1 })
}

fn cmd_regindex(
    format: Format,
    n: u32,
    mults: &[i64],
    window: Option<i64>,
    opts: &EvalOptions,
) -> Outcome {
    let mut sorted = mults.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let delta = regularity_index(n, &sorted)?;
    let mut rows = Vec::new();
    let mut violated = false;
    if let Some(w) = window {
        for d in delta - 1..=delta + w {
            let spec = LinearSystemSpec::new(n, d, sorted.clone())?;
            let report = evaluate_with(&spec, Evaluator::Auto, opts)?;
            let v = vdim(n, d, &sorted);
            let checked = d >= delta
                && report.normalized.is_unchanged()
                && report.method != Method::Empty
                && report.dimension.is_positive();
            let special = report.dimension != v;
            if checked && special {
                violated = true;
            }
            rows.push((d, report.dimension, v, special));
        }
    }
    match format {
        Format::Human => {
            println!("regularity index {delta}");
            for (d, dim, v, special) in &rows {
                let status = if *special { "special" } else { "non-special" };
                println!("d={d:<4} dimension {dim:<8} vdim {v:<8} {status}");
            }
        }
        Format::Json => {
            let window: Vec<_> = rows
                .iter()
                .map(|(d, dim, v, special)| {
                    serde_json::json!({
                        "d": d,
                        "dimension": serde_json::Value::Number(dim.to_string().parse().expect("number")),
                        "vdim": serde_json::Value::Number(v.to_string().parse().expect("number")),
                        "special": special,
                    })
                })
                .collect();
            println!(
                "{}",
                serde_json::json!({ "n": n, "mults": sorted, "regularity_index": delta, "window": window })
            );
        }
    }
    Ok(if violated { 1 } else { 0 })
}
