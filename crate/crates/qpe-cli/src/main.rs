//! `qpe`: entropy retention measurements for quantum feature maps.
//!
//! Exit codes: 0 success, 1 a check suite failed, 2 usage or domain
//! error, 3 I/O or ingestion error, 4 numerical instability.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qpe_cli::experiments::{
    correlate_lanes, entropy_difference, entropy_sweep, prepare_cloud, ClassicalSeries,
    EncoderLane, InputPrep,
};
use qpe_cli::output::{write_correlation_json, write_diff_csv, write_sidecar, write_sweep_csv};
use qpe_cli::registry::{
    dataset_schema, gram_csv, run_experiment, ExperimentContext, EXPERIMENT_NAMES,
};
use qpe_core::checks::{run_all, run_suite, CheckSuite};
use qpe_core::entropy::TranslationKind;
use qpe_core::manifolds::{
    load_csv, preprocess, preset, preset_names, sample, CsvSchema, Endpoints, ExcludedBall,
    PointCloud, SamplerSpec,
};
use qpe_core::maps::{EncoderKind, EncoderSpec};
use qpe_core::{Error, Result};

#[derive(Parser)]
#[command(
    name = "qpe",
    version,
    about = "Entropy retention measurements for quantum feature maps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep a point source and record classical and pseudo-entropies.
    Sweep(SweepArgs),
    /// Correlate classical entropy against translated pseudo-entropy.
    Correlate(CorrelateArgs),
    /// Record the entropy difference (classical minus translated).
    Diff(DiffArgs),
    /// Write the pairwise fidelity Gram matrix of the encoded points.
    Gram(GramArgs),
    /// Run the numerical self-check suites and print their reports.
    Check(CheckArgs),
    /// Run a registered experiment end to end.
    Experiment(ExperimentArgs),
}

/// Where points come from: a sampled manifold or a CSV dataset.
#[derive(Args)]
struct SourceArgs {
    /// Sampled manifold: circle:N, sphere:NT:NP, square:A:B:N,
    /// interval:A:B:N[:closed|open|half-open]
    #[arg(long, conflicts_with = "data")]
    manifold: Option<String>,

    /// CSV file with a header row
    #[arg(long)]
    data: Option<PathBuf>,

    /// Preprocessing preset applied to --data rows
    #[arg(long, requires = "data")]
    preprocess: Option<String>,

    /// Comma-separated feature columns of --data. Default: every column
    /// except a class/label/target/y column.
    #[arg(long, value_delimiter = ',', requires = "data")]
    columns: Option<Vec<String>>,

    /// Exclude points within this radius of the origin of a square grid
    #[arg(long)]
    exclude_ball: Option<f64>,
}

impl SourceArgs {
    fn load(&self) -> Result<PointCloud> {
        match (&self.manifold, &self.data) {
            (Some(spec), None) => sample(&parse_manifold(spec, self.exclude_ball)?),
            (None, Some(path)) => {
                let schema = match &self.columns {
                    Some(cols) => CsvSchema {
                        feature_columns: cols.clone(),
                        target_column: None,
                    },
                    None => dataset_schema(path)?,
                };
                let raw = load_csv(path, &schema)?;
                match &self.preprocess {
                    Some(name) => {
                        let steps = preset(name).ok_or_else(|| {
                            Error::Domain(format!(
                                "unknown preset '{name}' (expected one of: {})",
                                preset_names().join(", ")
                            ))
                        })?;
                        preprocess(&raw, &steps)
                    }
                    None => Ok(raw),
                }
            }
            _ => Err(Error::Domain(
                "exactly one of --manifold or --data is required".into(),
            )),
        }
    }
}

/// Flags shared by the ad-hoc record-producing subcommands.
#[derive(Args)]
struct CommonArgs {
    /// Comma-separated encoder names
    #[arg(long, value_delimiter = ',', required = true)]
    encoder: Vec<String>,

    /// Input preparation: raw, simplex-padded, or circle-point
    #[arg(long, default_value = "raw")]
    prep: String,

    /// Classical entropy series: simplex or circle-distribution
    #[arg(long, default_value = "simplex")]
    classical: String,

    /// Normalize each encoding into the special unitary group
    #[arg(long)]
    su_normalize: bool,

    /// Output directory
    #[arg(long, default_value = "qpe-out")]
    out: PathBuf,

    /// Seed for the rank-randomized statistics and the run metadata
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

impl CommonArgs {
    fn prep(&self) -> Result<InputPrep> {
        match self.prep.as_str() {
            "raw" => Ok(InputPrep::Raw),
            "simplex-padded" => Ok(InputPrep::SimplexPadded),
            "circle-point" => Ok(InputPrep::CirclePoint),
            other => Err(Error::Domain(format!(
                "unknown prep '{other}' (expected raw, simplex-padded, or circle-point)"
            ))),
        }
    }

    fn classical(&self) -> Result<ClassicalSeries> {
        match self.classical.as_str() {
            "simplex" => Ok(ClassicalSeries::SimplexEntropy),
            "circle-distribution" => Ok(ClassicalSeries::CircleDistribution),
            other => Err(Error::Domain(format!(
                "unknown classical series '{other}' (expected simplex or circle-distribution)"
            ))),
        }
    }

    fn lanes(&self, sampled_dim: usize) -> Result<Vec<EncoderLane>> {
        let prep = self.prep()?;
        self.encoder
            .iter()
            .map(|name| EncoderLane::resolve(name.parse()?, prep, sampled_dim, self.su_normalize))
            .collect()
    }
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct CorrelateArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[command(flatten)]
    common: CommonArgs,

    /// Comma-separated translations of the complex pseudo-entropy
    #[arg(long, value_delimiter = ',', default_value = "real,modulus")]
    translation: Vec<String>,
}

#[derive(Args)]
struct DiffArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct GramArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct CheckArgs {
    /// Single suite to run: analytic, prop1, eq11, continuity, roundtrip.
    /// Default: all suites.
    #[arg(long)]
    suite: Option<String>,

    #[arg(long, default_value_t = 42)]
    seed: u64,
}

#[derive(Args)]
struct ExperimentArgs {
    /// Registered experiment name
    #[arg(value_parser = EXPERIMENT_NAMES)]
    name: String,

    /// Dataset file or directory for the table experiments
    #[arg(long)]
    data: Option<PathBuf>,

    /// Override the point count (per axis on grids)
    #[arg(long)]
    grid: Option<usize>,

    /// Radius excluded around the origin of the IQP square grid
    #[arg(long, default_value_t = 0.05)]
    exclude_ball: f64,

    /// Normalize each encoding into the special unitary group
    #[arg(long)]
    su_normalize: bool,

    /// Also write a gnuplot script next to the data files
    #[arg(long)]
    gnuplot: bool,

    #[arg(long, default_value = "qpe-out")]
    out: PathBuf,

    #[arg(long, default_value_t = 42)]
    seed: u64,
}

/// Parses the colon-separated manifold mini-language.
fn parse_manifold(spec: &str, exclude_ball: Option<f64>) -> Result<SamplerSpec> {
    let bad = |msg: &str| Error::Domain(format!("manifold '{spec}': {msg}"));
    let parts: Vec<&str> = spec.split(':').collect();
    let count = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| bad(&format!("'{s}' is not a point count")))
    };
    let coord = |s: &str| {
        s.parse::<f64>()
            .map_err(|_| bad(&format!("'{s}' is not a coordinate")))
    };
    match parts.as_slice() {
        ["circle", n] => Ok(SamplerSpec::CircleAngles { count: count(n)? }),
        ["sphere", nt, np] => Ok(SamplerSpec::SphereAngles {
            n_theta: count(nt)?,
            n_phi: count(np)?,
        }),
        ["square", a, b, n] => Ok(SamplerSpec::SquareGrid {
            start: coord(a)?,
            end: coord(b)?,
            per_axis: count(n)?,
            excluded_ball: exclude_ball.map(|radius| ExcludedBall {
                center: (0.0, 0.0),
                radius,
            }),
        }),
        ["interval", a, b, n, rest @ ..] => {
            let endpoints = match rest {
                [] | ["closed"] => Endpoints::Closed,
                ["open"] => Endpoints::Open,
                ["half-open"] => Endpoints::HalfOpenRight,
                [other] => return Err(bad(&format!("unknown endpoint mode '{other}'"))),
                _ => return Err(bad("too many fields")),
            };
            Ok(SamplerSpec::IntervalGrid {
                start: coord(a)?,
                end: coord(b)?,
                count: count(n)?,
                endpoints,
            })
        }
        _ => Err(bad(
            "expected circle:N, sphere:NT:NP, square:A:B:N, or interval:A:B:N[:mode]",
        )),
    }
}

fn parse_translations(names: &[String]) -> Result<Vec<TranslationKind>> {
    names.iter().map(|s| s.parse()).collect()
}

/// Prints a written path so scripts can collect artifacts from stdout.
fn announce(files: &[PathBuf]) {
    for f in files {
        println!("{}", f.display());
    }
}

fn run_sweep(args: &SweepArgs) -> Result<i32> {
    let cloud = args.source.load()?;
    let classical = args.common.classical()?;
    std::fs::create_dir_all(&args.common.out)?;
    let mut files = Vec::new();
    for lane in args.common.lanes(cloud.dim())? {
        let rows = entropy_sweep(&cloud, &lane, classical)?;
        let path = args.common.out.join(format!("sweep.{}.csv", lane.label));
        write_sweep_csv(&path, &rows)?;
        files.push(path);
    }
    write_sidecar(
        &args.common.out.join("sweep.meta.json"),
        "sweep",
        args.common.seed,
        &files,
    )?;
    announce(&files);
    Ok(0)
}

fn run_correlate(args: &CorrelateArgs) -> Result<i32> {
    let cloud = args.source.load()?;
    let lanes = args.common.lanes(cloud.dim())?;
    let translations = parse_translations(&args.translation)?;
    let rows = correlate_lanes(
        &cloud,
        &lanes,
        args.common.classical()?,
        &translations,
        args.common.seed,
    )?;
    std::fs::create_dir_all(&args.common.out)?;
    let path = args.common.out.join("correlate.json");
    write_correlation_json(&path, &rows)?;
    let files = vec![path];
    write_sidecar(
        &args.common.out.join("correlate.meta.json"),
        "correlate",
        args.common.seed,
        &files,
    )?;
    announce(&files);
    Ok(0)
}

fn run_diff(args: &DiffArgs) -> Result<i32> {
    let cloud = args.source.load()?;
    let classical = args.common.classical()?;
    std::fs::create_dir_all(&args.common.out)?;
    let mut files = Vec::new();
    for lane in args.common.lanes(cloud.dim())? {
        let rows = entropy_difference(&cloud, &lane, classical)?;
        let path = args.common.out.join(format!("diff.{}.csv", lane.label));
        write_diff_csv(&path, &rows)?;
        files.push(path);
    }
    write_sidecar(
        &args.common.out.join("diff.meta.json"),
        "diff",
        args.common.seed,
        &files,
    )?;
    announce(&files);
    Ok(0)
}

fn run_gram(args: &GramArgs) -> Result<i32> {
    let cloud = args.source.load()?;
    let prep = args.common.prep()?;
    let prepared = prepare_cloud(prep, &cloud)?;
    std::fs::create_dir_all(&args.common.out)?;
    let mut files = Vec::new();
    for name in &args.common.encoder {
        let kind: EncoderKind = name.parse()?;
        let spec = EncoderSpec::for_point_dim(kind, prepared.dim())?
            .with_su_normalize(args.common.su_normalize);
        let path = args.common.out.join(format!("gram.{}.csv", kind.name()));
        gram_csv(&path, &prepared, &spec)?;
        files.push(path);
    }
    write_sidecar(
        &args.common.out.join("gram.meta.json"),
        "gram",
        args.common.seed,
        &files,
    )?;
    announce(&files);
    Ok(0)
}

fn run_check(args: &CheckArgs) -> Result<i32> {
    let reports = match &args.suite {
        Some(name) => vec![run_suite(name.parse::<CheckSuite>()?, args.seed)],
        None => run_all(args.seed),
    };
    println!(
        "{}",
        serde_json::to_string_pretty(&reports)
            .map_err(|e| Error::Domain(format!("serializing reports: {e}")))?
    );
    Ok(if reports.iter().all(|r| r.passed) {
        0
    } else {
        1
    })
}

fn run_experiment_cmd(args: &ExperimentArgs) -> Result<i32> {
    let ctx = ExperimentContext {
        out_dir: args.out.clone(),
        seed: args.seed,
        grid: args.grid,
        exclude_ball: args.exclude_ball,
        su_normalize: args.su_normalize,
        gnuplot: args.gnuplot,
        data: args.data.clone(),
    };
    let files = run_experiment(&args.name, &ctx)?;
    announce(&files);
    Ok(0)
}

fn dispatch(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Sweep(args) => run_sweep(args),
        Command::Correlate(args) => run_correlate(args),
        Command::Diff(args) => run_diff(args),
        Command::Gram(args) => run_gram(args),
        Command::Check(args) => run_check(args),
        Command::Experiment(args) => run_experiment_cmd(args),
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Io(_) | Error::Ingest(_) => 3,
        Error::NumericalInstability(_) | Error::NotUnitary { .. } => 4,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
