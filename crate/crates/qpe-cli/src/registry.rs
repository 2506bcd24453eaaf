//! The named experiments: one command per artifact.
//!
//! Each experiment binds a sampler or dataset, encoder lanes, and a
//! classical series, then writes its artifact files plus a timestamped
//! metadata sidecar into the output directory.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use qpe_core::entropy::TranslationKind;
use qpe_core::manifolds::{
    load_csv, preprocess, preset, sample, CsvSchema, Endpoints, ExcludedBall, PointCloud,
    PreprocessStep, SamplerSpec, StepKind,
};
use qpe_core::maps::{fidelity_gram, EncoderKind, EncoderSpec};
use qpe_core::{Error, Result};

use crate::experiments::{
    classical_entropy, correlate, correlate_lanes, entropy_difference, entropy_sweep,
    prepare_cloud, prepared_dim, ClassicalSeries, CorrelationRow, EncoderLane, InputPrep,
};
use crate::output::{
    write_correlation_json, write_diff_csv, write_gnuplot, write_gram_csv, write_sidecar,
    write_sweep_csv,
};

/// Knobs shared by every registered experiment. `grid` overrides the
/// default point count (per axis for squares and spheres); `data` points
/// at the dataset file or directory for the table experiments.
#[derive(Debug, Clone)]
pub struct ExperimentContext {
    pub out_dir: PathBuf,
    pub seed: u64,
    pub grid: Option<usize>,
    pub exclude_ball: f64,
    pub su_normalize: bool,
    pub gnuplot: bool,
    pub data: Option<PathBuf>,
}

impl ExperimentContext {
    pub fn new(out_dir: PathBuf) -> Self {
        Self {
            out_dir,
            seed: 42,
            grid: None,
            exclude_ball: 0.05,
            su_normalize: false,
            gnuplot: false,
            data: None,
        }
    }

    fn line_count(&self) -> usize {
        self.grid.unwrap_or(1000)
    }

    fn axis_count(&self) -> usize {
        self.grid.unwrap_or(100)
    }
}

pub const EXPERIMENT_NAMES: [&str; 11] = [
    "fig3-circle",
    "fig4-square",
    "fig5-circle-phase",
    "fig6-square-iqp",
    "fig7-sphere",
    "diff-circle",
    "diff-sphere",
    "table1-expressivity",
    "table-symmetric",
    "table2-vf",
    "table3-datasets",
];

/// Runs a registered experiment and returns the files it wrote
/// (sidecar excluded).
pub fn run_experiment(name: &str, ctx: &ExperimentContext) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(&ctx.out_dir)?;
    let files = match name {
        "fig3-circle" => fig3_circle(ctx)?,
        "fig4-square" => fig4_square(ctx)?,
        "fig5-circle-phase" => fig5_circle_phase(ctx)?,
        "fig6-square-iqp" => fig6_square_iqp(ctx)?,
        "fig7-sphere" => fig7_sphere(ctx)?,
        "diff-circle" => diff_circle(ctx)?,
        "diff-sphere" => diff_sphere(ctx)?,
        "table1-expressivity" => table1_expressivity(ctx)?,
        "table-symmetric" => table_symmetric(ctx)?,
        "table2-vf" => table2_vf(ctx)?,
        "table3-datasets" => table3_datasets(ctx)?,
        other => {
            return Err(Error::Shape(format!(
                "unknown experiment '{other}' (expected one of: {})",
                EXPERIMENT_NAMES.join(", ")
            )))
        }
    };
    write_sidecar(
        &ctx.out_dir.join(format!("{name}.meta.json")),
        name,
        ctx.seed,
        &files,
    )?;
    Ok(files)
}

fn circle_sampler(ctx: &ExperimentContext) -> SamplerSpec {
    SamplerSpec::CircleAngles {
        count: ctx.line_count(),
    }
}

fn square_sampler(ctx: &ExperimentContext, ball: Option<ExcludedBall>) -> SamplerSpec {
    SamplerSpec::SquareGrid {
        start: 0.0,
        end: PI,
        per_axis: ctx.axis_count(),
        excluded_ball: ball,
    }
}

/// Shared body for the figure sweeps: one CSV per encoder lane, plus an
/// optional gnuplot companion.
fn sweep_experiment(
    ctx: &ExperimentContext,
    name: &str,
    cloud: &PointCloud,
    lanes: &[EncoderLane],
    classical: ClassicalSeries,
) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for lane in lanes {
        let rows = entropy_sweep(cloud, lane, classical)?;
        let path = ctx.out_dir.join(format!("{name}.{}.csv", lane.label));
        write_sweep_csv(&path, &rows)?;
        files.push(path);
    }
    if ctx.gnuplot {
        let dim = cloud.dim();
        // shannon sits after the coordinates; real/imag follow it.
        let (c0, c1, c2) = (dim + 1, dim + 2, dim + 3);
        write_gnuplot(
            &ctx.out_dir.join(format!("{name}.gp")),
            name,
            dim,
            &files,
            &[(c0, "shannon"), (c1, "pseudo_real"), (c2, "pseudo_imag")],
        )?;
    }
    Ok(files)
}

fn fig3_circle(ctx: &ExperimentContext) -> Result<Vec<PathBuf>> {
    let cloud = sample(&circle_sampler(ctx))?;
    let lanes = [
        EncoderLane::resolve(
            EncoderKind::CircleAmplitude,
            InputPrep::Raw,
            1,
            ctx.su_normalize,
        )?,
        EncoderLane::resolve(
            EncoderKind::CircleAngle,
            InputPrep::Raw,
            1,
            ctx.su_normalize,
        )?,
    ];
    sweep_experiment(
        ctx,
        "fig3-circle",
        &cloud,
        &lanes,
        ClassicalSeries::CircleDistribution,
    )
}

fn fig4_square(ctx: &ExperimentContext) -> Result<Vec<PathBuf>> {
    let cloud = sample(&square_sampler(ctx, None))?;
    let lanes = [
        EncoderLane::resolve(EncoderKind::Angle, InputPrep::Raw, 2, ctx.su_normalize)?,
        EncoderLane::resolve(
            EncoderKind::Amplitude,
            InputPrep::SimplexPadded,
            2,
            ctx.su_normalize,
        )?,
    ];
    sweep_experiment(
        ctx,
        "fig4-square",
        &cloud,
        &lanes,
        ClassicalSeries::SimplexEntropy,
    )
}

fn fig5_circle_phase(ctx: &ExperimentContext) -> Result<Vec<PathBuf>> {
    let cloud = sample(&circle_sampler(ctx))?;
    let lanes = [EncoderLane::resolve(
        EncoderKind::Phase,
        InputPrep::Raw,
        1,
        ctx.su_normalize,
    )?];
    sweep_experiment(
        ctx,
        "fig5-circle-phase",
        &cloud,
        &lanes,
        ClassicalSeries::SimplexEntropy,
    )
}

fn fig6_square_iqp(ctx: &ExperimentContext) -> Result<Vec<PathBuf>> {
    let ball = ExcludedBall {
        center: (0.0, 0.0),
        radius: ctx.exclude_ball,
    };
    let cloud = sample(&square_sampler(ctx, Some(ball)))?;
    let lanes = [EncoderLane::resolve(
        EncoderKind::Iqp,
        InputPrep::Raw,
        2,
        ctx.su_normalize,
    )?];
    sweep_experiment(
        ctx,
        "fig6-square-iqp",
        &cloud,
        &lanes,
        ClassicalSeries::SimplexEntropy,
    )
}

fn fig7_sphere(ctx: &ExperimentContext) -> Result<Vec<PathBuf>> {
    let n = ctx.axis_count();
    let cloud = sample(&SamplerSpec::SphereAngles {
        n_theta: n,
        n_phi: n,
    })?;
    let lanes = [EncoderLane::resolve(
        EncoderKind::Phase,
        InputPrep::Raw,
        2,
        ctx.su_normalize,
    )?];
    sweep_experiment(
        ctx,
        "fig7-sphere",
        &cloud,
        &lanes,
        ClassicalSeries::SimplexEntropy,
    )
}

fn diff_experiment(
    ctx: &ExperimentContext,
    name: &str,
    cloud: &PointCloud,
    lane: &EncoderLane,
) -> Result<Vec<PathBuf>> {
    let rows = entropy_difference(cloud, lane, ClassicalSeries::SimplexEntropy)?;
    let path = ctx.out_dir.join(format!("{name}.{}.csv", lane.label));
    write_diff_csv(&path, &rows)?;
    let files = vec![path];
    if ctx.gnuplot {
        let dim = cloud.dim();
        write_gnuplot(
            &ctx.out_dir.join(format!("{name}.gp")),
            name,
            dim,
            &files,
            &[(dim + 2, "diff_real"), (dim + 3, "diff_modulus")],
        )?;
    }
    Ok(files)
}

fn diff_circle(ctx: &ExperimentContext) -> Result<Vec<PathBuf>> {
    let cloud = sample(&circle_sampler(ctx))?;
    let lane = EncoderLane::resolve(EncoderKind::Phase, InputPrep::Raw, 1, ctx.su_normalize)?;
    diff_experiment(ctx, "diff-circle", &cloud, &lane)
}

fn diff_sphere(ctx: &ExperimentContext) -> Result<Vec<PathBuf>> {
    let n = ctx.axis_count();
    let cloud = sample(&SamplerSpec::SphereAngles {
        n_theta: n,
        n_phi: n,
    })?;
    let lane = EncoderLane::resolve(EncoderKind::Phase, InputPrep::Raw, 2, ctx.su_normalize)?;
    diff_experiment(ctx, "diff-sphere", &cloud, &lane)
}

fn table1_expressivity(ctx: &ExperimentContext) -> Result<Vec<PathBuf>> {
    let cloud = sample(&SamplerSpec::IntervalGrid {
        start: 0.0,
        end: 2.0 * PI,
        count: ctx.line_count(),
        endpoints: Endpoints::Open,
    })?;
    let lanes = [
        EncoderLane::resolve(
            EncoderKind::ExpressivityShallow,
            InputPrep::Raw,
            1,
            ctx.su_normalize,
        )?,
        EncoderLane::resolve(
            EncoderKind::ExpressivityDeep,
            InputPrep::Raw,
            1,
            ctx.su_normalize,
        )?,
    ];
    let rows = correlate_lanes(
        &cloud,
        &lanes,
        ClassicalSeries::SimplexEntropy,
        &TranslationKind::ALL,
        ctx.seed,
    )?;
    let path = ctx.out_dir.join("table1-expressivity.json");
    write_correlation_json(&path, &rows)?;
    Ok(vec![path])
}

fn table_symmetric(ctx: &ExperimentContext) -> Result<Vec<PathBuf>> {
    let cloud = sample(&circle_sampler(ctx))?;
    let lanes = [
        EncoderLane::resolve(
            EncoderKind::SymmetricRy,
            InputPrep::CirclePoint,
            1,
            ctx.su_normalize,
        )?,
        EncoderLane::resolve(
            EncoderKind::SymmetricRz,
            InputPrep::CirclePoint,
            1,
            ctx.su_normalize,
        )?,
    ];
    let rows = correlate_lanes(
        &cloud,
        &lanes,
        ClassicalSeries::SimplexEntropy,
        &TranslationKind::ALL,
        ctx.seed,
    )?;
    let path = ctx.out_dir.join("table-symmetric.json");
    write_correlation_json(&path, &rows)?;
    Ok(vec![path])
}

/// Resolves `--data` to a concrete file: either the path itself or
/// `<dir>/<file>` when a directory was given.
fn resolve_data_file(data: &Option<PathBuf>, file: &str, experiment: &str) -> Result<PathBuf> {
    let base = data.as_ref().ok_or_else(|| {
        Error::Domain(format!(
            "experiment {experiment} needs --data pointing at {file} or its directory"
        ))
    })?;
    let path = if base.is_dir() {
        base.join(file)
    } else {
        base.clone()
    };
    if !path.is_file() {
        return Err(Error::Io(std::io::Error::new(
            std::io::ErrorKind::NotFound,
            format!("{} not found", path.display()),
        )));
    }
    Ok(path)
}

const VF_COLUMNS: [&str; 4] = ["Freq.F", "Potencias", "N(%)", "F1(score)"];

fn table2_vf(ctx: &ExperimentContext) -> Result<Vec<PathBuf>> {
    let path = resolve_data_file(&ctx.data, "vf.csv", "table2-vf")?;
    let schema = CsvSchema {
        feature_columns: VF_COLUMNS.map(String::from).to_vec(),
        target_column: None,
    };
    let raw = load_csv(&path, &schema)?;
    let steps = preset("vf").expect("registered preset");
    let mapped = preprocess(&raw, &steps)?;

    let lanes = [
        EncoderLane::resolve(
            EncoderKind::Amplitude,
            InputPrep::SimplexPadded,
            mapped.dim(),
            ctx.su_normalize,
        )?,
        EncoderLane::resolve(
            EncoderKind::Angle,
            InputPrep::Raw,
            mapped.dim(),
            ctx.su_normalize,
        )?,
        EncoderLane::resolve(
            EncoderKind::Iqp,
            InputPrep::Raw,
            mapped.dim(),
            ctx.su_normalize,
        )?,
        EncoderLane::resolve(
            EncoderKind::IqpFl,
            InputPrep::Raw,
            mapped.dim(),
            ctx.su_normalize,
        )?,
        EncoderLane::resolve(
            EncoderKind::IqpSo,
            InputPrep::Raw,
            mapped.dim(),
            ctx.su_normalize,
        )?,
    ];
    let rows = correlate_lanes(
        &mapped,
        &lanes,
        ClassicalSeries::SimplexEntropy,
        &TranslationKind::ALL,
        ctx.seed,
    )?;
    let path = ctx.out_dir.join("table2-vf.json");
    write_correlation_json(&path, &rows)?;
    Ok(vec![path])
}

/// Schema for an unknown-column dataset: every column is a feature
/// except a case-insensitive class/label/target/y column, which becomes
/// the (unused) target.
pub fn dataset_schema(path: &Path) -> Result<CsvSchema> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_path(path)
        .map_err(|e| Error::Ingest(format!("{}: {e}", path.display())))?;
    let headers = reader
        .headers()
        .map_err(|e| Error::Ingest(format!("{}: {e}", path.display())))?;
    let target = headers
        .iter()
        .find(|h| {
            let h = h.to_ascii_lowercase();
            matches!(h.as_str(), "class" | "label" | "target" | "y")
        })
        .map(str::to_owned);
    Ok(CsvSchema {
        feature_columns: Vec::new(),
        target_column: target,
    })
}

/// Correlation table for one MaxAbs-scaled dataset: the classical series
/// comes from the simplex embedding of the scaled features, and every
/// encoder consumes its own documented transform of that embedding.
pub fn dataset_table(path: &Path, su_normalize: bool, seed: u64) -> Result<Vec<CorrelationRow>> {
    let raw = load_csv(path, &dataset_schema(path)?)?;
    let baseline = preprocess(&raw, &[PreprocessStep::all(StepKind::MaxAbs)])?;
    let xs = baseline
        .points()
        .iter()
        .map(|x| classical_entropy(ClassicalSeries::SimplexEntropy, x))
        .collect::<Result<Vec<f64>>>()?;

    let amp_inputs = prepare_cloud(InputPrep::SimplexPadded, &baseline)?;
    let angle_inputs = preprocess(&raw, &preset("maxabs-angle").expect("registered preset"))?;
    let iqp_inputs = preprocess(&raw, &preset("maxabs-iqp").expect("registered preset"))?;

    let amp_spec = EncoderSpec::for_point_dim(
        EncoderKind::Amplitude,
        prepared_dim(InputPrep::SimplexPadded, baseline.dim()),
    )?
    .with_su_normalize(su_normalize);
    let mut rows = correlate(
        &xs,
        EncoderKind::Amplitude.name(),
        &amp_spec,
        &amp_inputs,
        &TranslationKind::ALL,
        seed,
    )?;

    let angle_spec = EncoderSpec::for_point_dim(EncoderKind::Angle, angle_inputs.dim())?
        .with_su_normalize(su_normalize);
    rows.extend(correlate(
        &xs,
        EncoderKind::Angle.name(),
        &angle_spec,
        &angle_inputs,
        &TranslationKind::ALL,
        seed,
    )?);

    for kind in [EncoderKind::Iqp, EncoderKind::IqpFl, EncoderKind::IqpSo] {
        let spec =
            EncoderSpec::for_point_dim(kind, iqp_inputs.dim())?.with_su_normalize(su_normalize);
        rows.extend(correlate(
            &xs,
            kind.name(),
            &spec,
            &iqp_inputs,
            &TranslationKind::ALL,
            seed,
        )?);
    }
    Ok(rows)
}

fn table3_datasets(ctx: &ExperimentContext) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for file in ["sirtuin6.csv", "ionosphere.csv"] {
        let path = resolve_data_file(&ctx.data, file, "table3-datasets")?;
        let rows = dataset_table(&path, ctx.su_normalize, ctx.seed)?;
        let name = file.trim_end_matches(".csv");
        let out = ctx.out_dir.join(format!("table3-datasets.{name}.json"));
        write_correlation_json(&out, &rows)?;
        files.push(out);
    }
    Ok(files)
}

/// Gram-matrix artifact over an arbitrary prepared cloud.
pub fn gram_csv(out: &Path, cloud: &PointCloud, spec: &EncoderSpec) -> Result<()> {
    let gram = fidelity_gram(cloud.points(), spec)?;
    write_gram_csv(out, &gram)
}
