//! Experiment runners: point clouds in, entropy records and correlation
//! rows out.
//!
//! Runners are sequential on purpose. Every record depends only on its
//! own point, so output order is sampler order by construction, and a
//! (spec, seed) pair determines every emitted byte.

use serde::Serialize;

use qpe_core::entropy::{
    classical_circle_entropy, shannon_entropy, simplex_map, translate, EntropyValue,
    TranslationKind,
};
use qpe_core::manifolds::{circle_point, PointCloud};
use qpe_core::maps::{DataPoint, EncoderKind, EncoderSpec};
use qpe_core::stats::{correlation_report, PairedSeries};
use qpe_core::{Error, Result};

/// How the classical entropy column is produced from a sampled point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassicalSeries {
    /// Shannon entropy of the simplex-mapped point.
    SimplexEntropy,
    /// The point is a 1-d angle θ; entropy of the distribution
    /// (cos²θ, sin²θ).
    CircleDistribution,
}

pub fn classical_entropy(mode: ClassicalSeries, x: &DataPoint) -> Result<f64> {
    match mode {
        ClassicalSeries::SimplexEntropy => Ok(shannon_entropy(&simplex_map(x)?)),
        ClassicalSeries::CircleDistribution => {
            if x.dim() != 1 {
                return Err(Error::Shape(format!(
                    "circle distribution entropy needs 1-d angles, got dimension {}",
                    x.dim()
                )));
            }
            Ok(classical_circle_entropy(x.values()[0]))
        }
    }
}

/// How a sampled point becomes an encoder input.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputPrep {
    /// The point itself.
    Raw,
    /// Simplex-map the point, then zero-pad the distribution to the next
    /// power of two. Amplitude circuits need 2^m outcomes; padding with
    /// zero mass prepares the same state on the original outcomes.
    SimplexPadded,
    /// Embed a 1-d angle as its unit-circle coordinates (cos θ, sin θ).
    CirclePoint,
}

/// Zero-pads a distribution to the next power of two (at least 2).
pub fn pad_distribution(probs: &[f64]) -> Vec<f64> {
    let target = probs.len().next_power_of_two().max(2);
    let mut out = probs.to_vec();
    out.resize(target, 0.0);
    out
}

pub fn prepare_input(prep: InputPrep, x: &DataPoint) -> Result<DataPoint> {
    match prep {
        InputPrep::Raw => Ok(x.clone()),
        InputPrep::SimplexPadded => {
            let p = simplex_map(x)?;
            DataPoint::new(pad_distribution(p.probs()))
        }
        InputPrep::CirclePoint => {
            if x.dim() != 1 {
                return Err(Error::Shape(format!(
                    "circle embedding needs 1-d angles, got dimension {}",
                    x.dim()
                )));
            }
            Ok(circle_point(x.values()[0]))
        }
    }
}

/// Dimension of an encoder input after preparation of a `sampled_dim`
/// point.
pub fn prepared_dim(prep: InputPrep, sampled_dim: usize) -> usize {
    match prep {
        InputPrep::Raw => sampled_dim,
        InputPrep::SimplexPadded => (sampled_dim + 1).next_power_of_two().max(2),
        InputPrep::CirclePoint => 2,
    }
}

pub fn prepare_cloud(prep: InputPrep, cloud: &PointCloud) -> Result<PointCloud> {
    let points = cloud
        .points()
        .iter()
        .map(|x| prepare_input(prep, x))
        .collect::<Result<Vec<_>>>()?;
    PointCloud::new(points)
}

/// One encoder's lane through an experiment: the resolved spec plus the
/// preparation its inputs need.
#[derive(Debug, Clone)]
pub struct EncoderLane {
    pub label: String,
    pub spec: EncoderSpec,
    pub prep: InputPrep,
}

impl EncoderLane {
    pub fn resolve(
        kind: EncoderKind,
        prep: InputPrep,
        sampled_dim: usize,
        su_normalize: bool,
    ) -> Result<Self> {
        let spec = EncoderSpec::for_point_dim(kind, prepared_dim(prep, sampled_dim))?
            .with_su_normalize(su_normalize);
        Ok(Self {
            label: kind.name().to_string(),
            spec,
            prep,
        })
    }
}

/// One sweep record: the sampled coordinates with all entropy columns.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub coords: Vec<f64>,
    pub shannon: f64,
    pub pseudo_real: f64,
    pub pseudo_imag: f64,
    pub pseudo_modulus: f64,
    pub branch_flag: bool,
}

pub fn entropy_sweep(
    cloud: &PointCloud,
    lane: &EncoderLane,
    classical: ClassicalSeries,
) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::with_capacity(cloud.len());
    for x in cloud.points() {
        let shannon = classical_entropy(classical, x)?;
        let value = lane.spec.pseudo_entropy(&prepare_input(lane.prep, x)?)?;
        rows.push(SweepRow {
            coords: x.values().to_vec(),
            shannon,
            pseudo_real: value.real_part,
            pseudo_imag: value.imag_part,
            pseudo_modulus: value.modulus(),
            branch_flag: value.branch_flag,
        });
    }
    Ok(rows)
}

/// One difference record: Shannon minus the translated pseudo-entropy,
/// under both translations.
#[derive(Debug, Clone)]
pub struct DiffRow {
    pub coords: Vec<f64>,
    pub shannon: f64,
    pub diff_real: f64,
    pub diff_modulus: f64,
}

pub fn entropy_difference(
    cloud: &PointCloud,
    lane: &EncoderLane,
    classical: ClassicalSeries,
) -> Result<Vec<DiffRow>> {
    let mut rows = Vec::with_capacity(cloud.len());
    for x in cloud.points() {
        let shannon = classical_entropy(classical, x)?;
        let value = lane.spec.pseudo_entropy(&prepare_input(lane.prep, x)?)?;
        rows.push(DiffRow {
            coords: x.values().to_vec(),
            shannon,
            diff_real: shannon - translate(&value, TranslationKind::Real),
            diff_modulus: shannon - translate(&value, TranslationKind::Modulus),
        });
    }
    Ok(rows)
}

/// One correlation table row, flattened for JSON output.
#[derive(Debug, Clone, Serialize)]
pub struct CorrelationRow {
    pub encoder: String,
    pub translation: TranslationKind,
    pub n: usize,
    pub seed: u64,
    pub pearson: Option<f64>,
    pub spearman: Option<f64>,
    pub xicor: f64,
}

/// Correlates a fixed classical series against one encoder's translated
/// pseudo-entropies, one row per translation.
pub fn correlate(
    xs: &[f64],
    label: &str,
    spec: &EncoderSpec,
    inputs: &PointCloud,
    translations: &[TranslationKind],
    seed: u64,
) -> Result<Vec<CorrelationRow>> {
    let values = inputs
        .points()
        .iter()
        .map(|p| spec.pseudo_entropy(p))
        .collect::<Result<Vec<EntropyValue>>>()?;
    let mut rows = Vec::with_capacity(translations.len());
    for &t in translations {
        let ys: Vec<f64> = values.iter().map(|v| translate(v, t)).collect();
        let series = PairedSeries::new(xs.to_vec(), ys)?;
        let report = correlation_report(&series, seed);
        rows.push(CorrelationRow {
            encoder: label.to_string(),
            translation: t,
            n: report.n,
            seed: report.seed,
            pearson: report.pearson,
            spearman: report.spearman,
            xicor: report.xicor,
        });
    }
    Ok(rows)
}

/// [`correlate`] over several lanes sharing one sampled cloud. The
/// classical series comes from the raw cloud; each lane prepares its own
/// inputs.
pub fn correlate_lanes(
    cloud: &PointCloud,
    lanes: &[EncoderLane],
    classical: ClassicalSeries,
    translations: &[TranslationKind],
    seed: u64,
) -> Result<Vec<CorrelationRow>> {
    let xs = cloud
        .points()
        .iter()
        .map(|x| classical_entropy(classical, x))
        .collect::<Result<Vec<f64>>>()?;
    let mut rows = Vec::new();
    for lane in lanes {
        let inputs = prepare_cloud(lane.prep, cloud)?;
        rows.extend(correlate(
            &xs,
            &lane.label,
            &lane.spec,
            &inputs,
            translations,
            seed,
        )?);
    }
    Ok(rows)
}
