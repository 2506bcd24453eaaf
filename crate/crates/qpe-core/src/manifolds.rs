//! Point sources: deterministic grid samplers over intervals, squares,
//! circles and spheres, CSV ingestion, and feature preprocessing.

use std::f64::consts::PI;
use std::path::Path;

use crate::entropy::simplex_map;
use crate::error::{Error, Result};
use crate::maps::DataPoint;

/// An ordered collection of equal-dimension points plus bookkeeping:
/// optional feature names (CSV sources), optional row labels (a target
/// column), and a provenance log of the steps that produced it.
#[derive(Debug, Clone)]
pub struct PointCloud {
    points: Vec<DataPoint>,
    feature_names: Option<Vec<String>>,
    labels: Option<Vec<String>>,
    provenance: Vec<String>,
}

impl PointCloud {
    pub fn new(points: Vec<DataPoint>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Shape("point cloud cannot be empty".into()));
        }
        let dim = points[0].dim();
        if points.iter().any(|p| p.dim() != dim) {
            return Err(Error::Shape("point cloud has mixed dimensions".into()));
        }
        Ok(Self {
            points,
            feature_names: None,
            labels: None,
            provenance: Vec::new(),
        })
    }

    pub fn points(&self) -> &[DataPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.points[0].dim()
    }

    pub fn feature_names(&self) -> Option<&[String]> {
        self.feature_names.as_deref()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Human-readable log of how this cloud was produced, one entry per
    /// sampling or preprocessing step.
    pub fn provenance(&self) -> &[String] {
        &self.provenance
    }
}

/// Endpoint handling for 1-dimensional grids.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Endpoints {
    /// `a + k(b−a)/(n−1)`, both ends included.
    Closed,
    /// `a + k(b−a)/n`, left end included.
    HalfOpenRight,
    /// `a + (k+1)(b−a)/(n+1)`, neither end included.
    Open,
}

/// Circular exclusion region for square grids.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExcludedBall {
    pub center: (f64, f64),
    pub radius: f64,
}

/// Deterministic point sources. None of the variants draws randomness;
/// equal specs produce byte-identical clouds.
#[derive(Debug, Clone, PartialEq)]
pub enum SamplerSpec {
    /// 1-D grid on `[start, end]` with the chosen endpoint handling.
    IntervalGrid {
        start: f64,
        end: f64,
        count: usize,
        endpoints: Endpoints,
    },
    /// Product of two half-open `[start, end)` grids, row-major in the
    /// first coordinate, with an optional excluded ball.
    SquareGrid {
        start: f64,
        end: f64,
        per_axis: usize,
        excluded_ball: Option<ExcludedBall>,
    },
    /// Angles strictly inside `(−π, π)`: `θ_k = −π + (k+1)·2π/(n+1)`.
    CircleAngles { count: usize },
    /// Longitude/latitude grid: `θ` open in `(−π, π)` (n_theta points)
    /// by `φ` open in `(−π/2, π/2)` (n_phi points), θ-major.
    SphereAngles { n_theta: usize, n_phi: usize },
}

fn interval_points(start: f64, end: f64, count: usize, endpoints: Endpoints) -> Result<Vec<f64>> {
    // Negated so NaN bounds also land in the error arm.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(end > start) {
        return Err(Error::Domain(format!(
            "interval needs end > start, got [{start}, {end}]"
        )));
    }
    let span = end - start;
    match endpoints {
        Endpoints::Closed => {
            if count < 2 {
                return Err(Error::Domain("closed grid needs at least 2 points".into()));
            }
            Ok((0..count)
                .map(|k| start + span * k as f64 / (count - 1) as f64)
                .collect())
        }
        Endpoints::HalfOpenRight => {
            if count < 1 {
                return Err(Error::Domain("grid needs at least 1 point".into()));
            }
            Ok((0..count)
                .map(|k| start + span * k as f64 / count as f64)
                .collect())
        }
        Endpoints::Open => {
            if count < 1 {
                return Err(Error::Domain("grid needs at least 1 point".into()));
            }
            Ok((0..count)
                .map(|k| start + span * (k + 1) as f64 / (count + 1) as f64)
                .collect())
        }
    }
}

/// Materializes a sampler spec into a point cloud.
pub fn sample(spec: &SamplerSpec) -> Result<PointCloud> {
    let (points, desc) = match spec {
        SamplerSpec::IntervalGrid {
            start,
            end,
            count,
            endpoints,
        } => {
            let pts = interval_points(*start, *end, *count, *endpoints)?
                .into_iter()
                .map(|v| DataPoint::new(vec![v]))
                .collect::<Result<Vec<_>>>()?;
            (
                pts,
                format!("interval grid [{start}, {end}] n={count} ({endpoints:?})"),
            )
        }
        SamplerSpec::SquareGrid {
            start,
            end,
            per_axis,
            excluded_ball,
        } => {
            let axis = interval_points(*start, *end, *per_axis, Endpoints::HalfOpenRight)?;
            if let Some(ball) = excluded_ball {
                if ball.radius < 0.0 {
                    return Err(Error::Domain("exclusion radius must be nonnegative".into()));
                }
            }
            let mut pts = Vec::with_capacity(per_axis * per_axis);
            for &a in &axis {
                for &b in &axis {
                    let keep = excluded_ball.is_none_or(|ball| {
                        (a - ball.center.0).hypot(b - ball.center.1) >= ball.radius
                    });
                    if keep {
                        pts.push(DataPoint::new(vec![a, b])?);
                    }
                }
            }
            if pts.is_empty() {
                return Err(Error::Domain(
                    "excluded ball removed every grid point".into(),
                ));
            }
            (
                pts,
                format!(
                    "square grid [{start}, {end})^2 n={per_axis}/axis, exclusion={excluded_ball:?}"
                ),
            )
        }
        SamplerSpec::CircleAngles { count } => {
            let pts = interval_points(-PI, PI, *count, Endpoints::Open)?
                .into_iter()
                .map(|v| DataPoint::new(vec![v]))
                .collect::<Result<Vec<_>>>()?;
            (pts, format!("circle angles n={count}"))
        }
        SamplerSpec::SphereAngles { n_theta, n_phi } => {
            let thetas = interval_points(-PI, PI, *n_theta, Endpoints::Open)?;
            let phis = interval_points(-PI / 2.0, PI / 2.0, *n_phi, Endpoints::Open)?;
            let mut pts = Vec::with_capacity(n_theta * n_phi);
            for &t in &thetas {
                for &p in &phis {
                    pts.push(DataPoint::new(vec![t, p])?);
                }
            }
            (pts, format!("sphere angles {n_theta}x{n_phi}"))
        }
    };
    let mut cloud = PointCloud::new(points)?;
    cloud.provenance.push(desc);
    Ok(cloud)
}

/// Embeds a circle angle as Cartesian coordinates `(cos θ, sin θ)`.
pub fn circle_point(theta: f64) -> DataPoint {
    DataPoint::new(vec![theta.cos(), theta.sin()]).expect("finite embedding")
}

/// Embeds longitude/latitude as a point of the unit 2-sphere.
pub fn sphere_point(theta: f64, phi: f64) -> DataPoint {
    DataPoint::new(vec![
        phi.cos() * theta.cos(),
        phi.cos() * theta.sin(),
        phi.sin(),
    ])
    .expect("finite embedding")
}

/// Column selection for CSV ingestion. An empty `feature_columns` list
/// selects every column except the target.
#[derive(Debug, Clone, Default)]
pub struct CsvSchema {
    pub feature_columns: Vec<String>,
    pub target_column: Option<String>,
}

/// Loads a headed CSV into a point cloud. Rows with missing or
/// unparseable cells fail loudly with the 1-based data row and the
/// column name; an empty table is an error.
pub fn load_csv(path: &Path, schema: &CsvSchema) -> Result<PointCloud> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(csv_error)?;
    let headers: Vec<String> = reader
        .headers()
        .map_err(csv_error)?
        .iter()
        .map(str::to_owned)
        .collect();

    let target_idx = match &schema.target_column {
        Some(name) => Some(column_index(&headers, name)?),
        None => None,
    };
    let feature_idx: Vec<usize> = if schema.feature_columns.is_empty() {
        (0..headers.len())
            .filter(|i| Some(*i) != target_idx)
            .collect()
    } else {
        schema
            .feature_columns
            .iter()
            .map(|name| column_index(&headers, name))
            .collect::<Result<_>>()?
    };
    if feature_idx.is_empty() {
        return Err(Error::Ingest("no feature columns selected".into()));
    }

    let mut points = Vec::new();
    let mut labels = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let row = i + 1;
        let record = record.map_err(csv_error)?;
        let mut values = Vec::with_capacity(feature_idx.len());
        for &ci in &feature_idx {
            let cell = record.get(ci).unwrap_or("");
            if cell.is_empty() {
                return Err(Error::Ingest(format!(
                    "row {row}: missing value in column '{}'",
                    headers[ci]
                )));
            }
            let v: f64 = cell.parse().map_err(|_| {
                Error::Ingest(format!(
                    "row {row}: cannot parse '{cell}' in column '{}' as a number",
                    headers[ci]
                ))
            })?;
            if !v.is_finite() {
                return Err(Error::Ingest(format!(
                    "row {row}: non-finite value in column '{}'",
                    headers[ci]
                )));
            }
            values.push(v);
        }
        points.push(DataPoint::new(values)?);
        if let Some(ti) = target_idx {
            labels.push(record.get(ti).unwrap_or("").to_owned());
        }
    }
    if points.is_empty() {
        return Err(Error::Ingest(format!(
            "{} has no data rows",
            path.display()
        )));
    }

    let mut cloud = PointCloud::new(points)?;
    cloud.feature_names = Some(feature_idx.iter().map(|&i| headers[i].clone()).collect());
    cloud.labels = (target_idx.is_some()).then_some(labels);
    cloud.provenance.push(format!("csv {}", path.display()));
    Ok(cloud)
}

fn column_index(headers: &[String], name: &str) -> Result<usize> {
    headers
        .iter()
        .position(|h| h == name)
        .ok_or_else(|| Error::Ingest(format!("column '{name}' not found in header")))
}

fn csv_error(e: csv::Error) -> Error {
    if e.is_io_error() {
        match e.into_kind() {
            csv::ErrorKind::Io(io) => Error::Io(io),
            other => Error::Ingest(format!("{other:?}")),
        }
    } else {
        Error::Ingest(e.to_string())
    }
}

/// Feature transforms. `MaxAbs` is fitted on the cloud it is applied to;
/// everything else is stateless.
#[derive(Debug, Clone, PartialEq)]
pub enum StepKind {
    /// `v ↦ 2π·σ(v)` with the logistic sigmoid `σ`.
    SigmoidScale2Pi,
    /// `v ↦ v / c` for a fixed nonzero constant.
    DivideBy(f64),
    /// `v ↦ scale·v + offset`.
    Affine { scale: f64, offset: f64 },
    /// `v ↦ v / max|column|`; an all-zero column is left unchanged.
    MaxAbs,
    /// Replaces each whole point by its simplex embedding (dimension
    /// grows by one). Applies to all features only.
    SimplexE,
    /// `v ↦ lo + v·(hi − lo)`, the fixed affine map from `[0, 1]`.
    ScaleToRange { lo: f64, hi: f64 },
}

/// Which features a step touches.
#[derive(Debug, Clone, PartialEq)]
pub enum FeatureSelector {
    All,
    Indices(Vec<usize>),
    Names(Vec<String>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PreprocessStep {
    pub kind: StepKind,
    pub selector: FeatureSelector,
}

impl PreprocessStep {
    pub fn all(kind: StepKind) -> Self {
        Self {
            kind,
            selector: FeatureSelector::All,
        }
    }

    pub fn named(kind: StepKind, names: &[&str]) -> Self {
        Self {
            kind,
            selector: FeatureSelector::Names(names.iter().map(|s| s.to_string()).collect()),
        }
    }
}

fn resolve_selector(cloud: &PointCloud, selector: &FeatureSelector) -> Result<Vec<usize>> {
    match selector {
        FeatureSelector::All => Ok((0..cloud.dim()).collect()),
        FeatureSelector::Indices(idx) => {
            for &i in idx {
                if i >= cloud.dim() {
                    return Err(Error::Shape(format!(
                        "feature index {i} out of range for dimension {}",
                        cloud.dim()
                    )));
                }
            }
            Ok(idx.clone())
        }
        FeatureSelector::Names(names) => {
            let known = cloud
                .feature_names()
                .ok_or_else(|| Error::Shape("cloud has no feature names to select by".into()))?;
            names
                .iter()
                .map(|n| {
                    known
                        .iter()
                        .position(|k| k == n)
                        .ok_or_else(|| Error::Shape(format!("feature '{n}' not present in cloud")))
                })
                .collect()
        }
    }
}

fn sigmoid(v: f64) -> f64 {
    if v >= 0.0 {
        1.0 / (1.0 + (-v).exp())
    } else {
        let e = v.exp();
        e / (1.0 + e)
    }
}

/// Applies the steps in order and returns a new cloud; the input is not
/// modified. Every applied step is appended to the provenance log.
pub fn preprocess(cloud: &PointCloud, steps: &[PreprocessStep]) -> Result<PointCloud> {
    let mut out = cloud.clone();
    for step in steps {
        apply_step(&mut out, step)?;
        out.provenance
            .push(format!("{:?} on {:?}", step.kind, step.selector));
    }
    Ok(out)
}

fn apply_step(cloud: &mut PointCloud, step: &PreprocessStep) -> Result<()> {
    if matches!(step.kind, StepKind::SimplexE) {
        if !matches!(step.selector, FeatureSelector::All) {
            return Err(Error::Shape(
                "the simplex embedding applies to all features".into(),
            ));
        }
        let mut points = Vec::with_capacity(cloud.len());
        for p in &cloud.points {
            let v = simplex_map(p)?;
            points.push(DataPoint::new(v.probs().to_vec())?);
        }
        let dim = points[0].dim();
        cloud.points = points;
        cloud.feature_names = Some((1..=dim).map(|i| format!("p{i}")).collect());
        return Ok(());
    }

    let cols = resolve_selector(cloud, &step.selector)?;
    let transform: Box<dyn Fn(f64, usize) -> f64> = match &step.kind {
        StepKind::SigmoidScale2Pi => Box::new(|v, _| 2.0 * PI * sigmoid(v)),
        StepKind::DivideBy(c) => {
            if *c == 0.0 || !c.is_finite() {
                return Err(Error::Domain(format!("cannot divide features by {c}")));
            }
            let c = *c;
            Box::new(move |v, _| v / c)
        }
        StepKind::Affine { scale, offset } => {
            let (a, b) = (*scale, *offset);
            Box::new(move |v, _| a * v + b)
        }
        StepKind::MaxAbs => {
            let mut scales = vec![0.0f64; cols.len()];
            for p in &cloud.points {
                for (slot, &ci) in cols.iter().enumerate() {
                    scales[slot] = scales[slot].max(p.values()[ci].abs());
                }
            }
            for s in &mut scales {
                if *s == 0.0 {
                    *s = 1.0;
                }
            }
            Box::new(move |v, slot| v / scales[slot])
        }
        StepKind::ScaleToRange { lo, hi } => {
            // Negated so NaN bounds also land in the error arm.
            #[allow(clippy::neg_cmp_op_on_partial_ord)]
            if !(hi > lo) {
                return Err(Error::Domain(format!(
                    "scale range needs hi > lo, got [{lo}, {hi}]"
                )));
            }
            let (lo, hi) = (*lo, *hi);
            Box::new(move |v, _| lo + v * (hi - lo))
        }
        StepKind::SimplexE => unreachable!("handled above"),
    };

    let mut points = Vec::with_capacity(cloud.len());
    for p in &cloud.points {
        let mut values = p.values().to_vec();
        for (slot, &ci) in cols.iter().enumerate() {
            values[ci] = transform(values[ci], slot);
        }
        points.push(DataPoint::new(values)?);
    }
    cloud.points = points;
    Ok(())
}

/// Named preprocessing pipelines used by the bundled experiments.
pub fn preset(name: &str) -> Option<Vec<PreprocessStep>> {
    use StepKind::*;
    let two_pi = 2.0 * PI;
    match name {
        // Vibration-frequency table: each named column is squashed into
        // [0, 2π] by its own rule.
        "vf" => Some(vec![
            PreprocessStep::named(SigmoidScale2Pi, &["Freq.F"]),
            PreprocessStep::named(DivideBy(1e6), &["Potencias"]),
            PreprocessStep::named(SigmoidScale2Pi, &["Potencias"]),
            PreprocessStep::named(DivideBy(100.0), &["N(%)"]),
            PreprocessStep::named(
                Affine {
                    scale: two_pi,
                    offset: 0.0,
                },
                &["N(%)"],
            ),
            PreprocessStep::named(
                Affine {
                    scale: two_pi,
                    offset: 0.0,
                },
                &["F1(score)"],
            ),
        ]),
        "maxabs-amplitude" => Some(vec![
            PreprocessStep::all(MaxAbs),
            PreprocessStep::all(SimplexE),
        ]),
        "maxabs-angle" => Some(vec![
            PreprocessStep::all(MaxAbs),
            PreprocessStep::all(SimplexE),
            PreprocessStep::all(ScaleToRange { lo: -PI, hi: PI }),
        ]),
        "maxabs-iqp" => Some(vec![
            PreprocessStep::all(MaxAbs),
            PreprocessStep::all(SimplexE),
            PreprocessStep::all(ScaleToRange {
                lo: 0.0,
                hi: two_pi,
            }),
        ]),
        _ => None,
    }
}

pub fn preset_names() -> &'static [&'static str] {
    &["vf", "maxabs-amplitude", "maxabs-angle", "maxabs-iqp"]
}
