//! Feature maps: classical points in, encoding unitaries out.

mod amplitude;
mod encoders;
mod gates;

pub use amplitude::{
    amplitude_tree, encode_amplitude, gate_ry_amplitude, prepared_distribution, AmplitudeTree,
    MASS_TOL,
};
pub use encoders::{
    encode_angle, encode_circle, encode_expressivity, encode_iqp, encode_phase_product,
    encode_symmetric, CircleEncoding, ExpressivityDepth, IqpVariant, SymmetricAxis,
};
pub use gates::{
    embed_controlled, embed_multi_controlled, gate_hadamard, gate_phase, gate_rx, gate_ry, gate_rz,
    gate_s, gate_swap, gate_t, pauli_x, pauli_y, pauli_z,
};

use std::fmt;
use std::str::FromStr;

use encoders::{iqp_diagonal_phases, phase_product_phases, rotation_product_phases};

use crate::entropy::{pseudo_entropy_from_phases_with, wrap_phase, EntropyValue};
use crate::error::{Error, Result};
use crate::spectral::{EigOptions, UnitaryMatrix, C64};

/// A finite real feature vector with at least one coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct DataPoint {
    values: Vec<f64>,
}

impl DataPoint {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Shape("data point needs at least one feature".into()));
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::NonFinite(format!("data point coordinate {bad}")));
        }
        Ok(Self { values })
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Which encoding circuit a spec selects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EncoderKind {
    Angle,
    Phase,
    Iqp,
    IqpSo,
    IqpFl,
    Amplitude,
    CircleAmplitude,
    CircleAngle,
    ExpressivityShallow,
    ExpressivityDeep,
    SymmetricRy,
    SymmetricRz,
}

impl EncoderKind {
    pub const ALL: [EncoderKind; 12] = [
        EncoderKind::Angle,
        EncoderKind::Phase,
        EncoderKind::Iqp,
        EncoderKind::IqpSo,
        EncoderKind::IqpFl,
        EncoderKind::Amplitude,
        EncoderKind::CircleAmplitude,
        EncoderKind::CircleAngle,
        EncoderKind::ExpressivityShallow,
        EncoderKind::ExpressivityDeep,
        EncoderKind::SymmetricRy,
        EncoderKind::SymmetricRz,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EncoderKind::Angle => "angle",
            EncoderKind::Phase => "phase",
            EncoderKind::Iqp => "iqp",
            EncoderKind::IqpSo => "iqp-so",
            EncoderKind::IqpFl => "iqp-fl",
            EncoderKind::Amplitude => "amplitude",
            EncoderKind::CircleAmplitude => "circle-amplitude",
            EncoderKind::CircleAngle => "circle-angle",
            EncoderKind::ExpressivityShallow => "expressivity-shallow",
            EncoderKind::ExpressivityDeep => "expressivity-deep",
            EncoderKind::SymmetricRy => "symmetric-ry",
            EncoderKind::SymmetricRz => "symmetric-rz",
        }
    }

    /// Qubit count induced by a feature dimension, or an error when the
    /// kind constrains the dimension and `dim` does not fit.
    pub fn qubits_for_dim(self, dim: usize) -> Result<usize> {
        let fixed = |want_dim: usize, qubits: usize| {
            if dim == want_dim {
                Ok(qubits)
            } else {
                Err(Error::Shape(format!(
                    "{} expects {want_dim}-dimensional points, got {dim}",
                    self.name()
                )))
            }
        };
        match self {
            EncoderKind::Angle
            | EncoderKind::Phase
            | EncoderKind::Iqp
            | EncoderKind::IqpSo
            | EncoderKind::IqpFl => Ok(dim),
            EncoderKind::Amplitude => {
                if dim >= 2 && dim.is_power_of_two() {
                    Ok(dim.trailing_zeros() as usize)
                } else {
                    Err(Error::Shape(format!(
                        "amplitude expects a power-of-two number of probabilities (>= 2), got {dim}"
                    )))
                }
            }
            EncoderKind::CircleAmplitude => fixed(1, 1),
            EncoderKind::CircleAngle => fixed(1, 2),
            EncoderKind::ExpressivityShallow | EncoderKind::ExpressivityDeep => fixed(1, 1),
            EncoderKind::SymmetricRy | EncoderKind::SymmetricRz => fixed(2, 2),
        }
    }
}

impl fmt::Display for EncoderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EncoderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        EncoderKind::ALL
            .iter()
            .copied()
            .find(|k| k.name() == s)
            .ok_or_else(|| {
                Error::Shape(format!(
                    "unknown encoder '{s}' (expected one of: {})",
                    EncoderKind::ALL.map(|k| k.name()).join(", ")
                ))
            })
    }
}

/// A fully resolved encoder: kind, register width, and normalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EncoderSpec {
    pub kind: EncoderKind,
    pub qubit_count: usize,
    /// Divide the final operator by `det(U)^{1/dim}`, mapping it into the
    /// special unitary group. Shifts every eigenphase by the same amount.
    pub su_normalize: bool,
}

impl EncoderSpec {
    pub fn new(kind: EncoderKind, qubit_count: usize) -> Result<Self> {
        let dim = match kind {
            EncoderKind::Amplitude => 1usize
                .checked_shl(qubit_count as u32)
                .ok_or(Error::Shape(format!("qubit count {qubit_count} overflows")))?,
            EncoderKind::CircleAmplitude
            | EncoderKind::CircleAngle
            | EncoderKind::ExpressivityShallow
            | EncoderKind::ExpressivityDeep => 1,
            EncoderKind::SymmetricRy | EncoderKind::SymmetricRz => 2,
            _ => qubit_count,
        };
        let want = kind.qubits_for_dim(dim)?;
        if want != qubit_count {
            return Err(Error::Shape(format!(
                "{} with {qubit_count} qubits is inconsistent (expected {want})",
                kind.name()
            )));
        }
        if qubit_count == 0 || qubit_count > 14 {
            return Err(Error::Capacity {
                requested: 1usize.checked_shl(qubit_count as u32).unwrap_or(usize::MAX),
                cap: crate::spectral::DEFAULT_DIM_CAP,
            });
        }
        Ok(Self {
            kind,
            qubit_count,
            su_normalize: false,
        })
    }

    /// Derives the spec from a point dimension.
    pub fn for_point_dim(kind: EncoderKind, dim: usize) -> Result<Self> {
        Self::new(kind, kind.qubits_for_dim(dim)?)
    }

    pub fn with_su_normalize(mut self, on: bool) -> Self {
        self.su_normalize = on;
        self
    }

    /// Expected feature dimension of an input point.
    pub fn point_dim(&self) -> usize {
        match self.kind {
            EncoderKind::Amplitude => 1 << self.qubit_count,
            EncoderKind::CircleAmplitude
            | EncoderKind::CircleAngle
            | EncoderKind::ExpressivityShallow
            | EncoderKind::ExpressivityDeep => 1,
            EncoderKind::SymmetricRy | EncoderKind::SymmetricRz => 2,
            _ => self.qubit_count,
        }
    }

    /// Runs the selected circuit on one point.
    pub fn encode(&self, x: &DataPoint) -> Result<UnitaryMatrix> {
        if x.dim() != self.point_dim() {
            return Err(Error::Shape(format!(
                "{} expects {}-dimensional points, got {}",
                self.kind.name(),
                self.point_dim(),
                x.dim()
            )));
        }
        let v = x.values();
        let u = match self.kind {
            EncoderKind::Angle => encode_angle(x)?,
            EncoderKind::Phase => encode_phase_product(x)?,
            EncoderKind::Iqp => encode_iqp(x, IqpVariant::Standard)?,
            EncoderKind::IqpSo => encode_iqp(x, IqpVariant::SansOuter)?,
            EncoderKind::IqpFl => encode_iqp(x, IqpVariant::FullLayer)?,
            EncoderKind::Amplitude => encode_amplitude(v)?,
            EncoderKind::CircleAmplitude => encode_circle(v[0], CircleEncoding::Amplitude),
            EncoderKind::CircleAngle => encode_circle(v[0], CircleEncoding::Angle),
            EncoderKind::ExpressivityShallow => {
                encode_expressivity(v[0], ExpressivityDepth::Shallow)
            }
            EncoderKind::ExpressivityDeep => encode_expressivity(v[0], ExpressivityDepth::Deep),
            EncoderKind::SymmetricRy => encode_symmetric(v[0], v[1], SymmetricAxis::Y),
            EncoderKind::SymmetricRz => encode_symmetric(v[0], v[1], SymmetricAxis::Z),
        };
        if self.su_normalize {
            let det_phase = u.determinant().arg();
            Ok(u.scale_phase(-det_phase / u.dim() as f64))
        } else {
            Ok(u)
        }
    }

    /// Closed-form eigenphases for the kinds whose circuits are diagonal
    /// or tensor products of single-qubit rotations, wrapped onto
    /// `(−π, π]` in unspecified order. Returns `None` when only the dense
    /// eigensolver route applies. `su_normalize` shifts the phases exactly
    /// the way [`EncoderSpec::encode`] shifts the operator.
    pub fn analytic_phases(&self, x: &DataPoint) -> Result<Option<Vec<f64>>> {
        if x.dim() != self.point_dim() {
            return Err(Error::Shape(format!(
                "{} expects {}-dimensional points, got {}",
                self.kind.name(),
                self.point_dim(),
                x.dim()
            )));
        }
        let v = x.values();
        let raw = match self.kind {
            // Every single-qubit rotation contributes ±x/2 per factor,
            // independent of axis.
            EncoderKind::Angle | EncoderKind::SymmetricRy | EncoderKind::SymmetricRz => {
                rotation_product_phases(x)?
            }
            EncoderKind::Phase => phase_product_phases(x)?,
            // The standard variant is the diagonal block conjugated by
            // Hadamard layers, so both share the diagonal's spectrum.
            EncoderKind::Iqp | EncoderKind::IqpSo => iqp_diagonal_phases(x)?,
            EncoderKind::CircleAmplitude => vec![-v[0], v[0]],
            EncoderKind::CircleAngle => {
                let (c2, s2) = (v[0].cos().powi(2), v[0].sin().powi(2));
                vec![-c2 - s2, -c2 + s2, c2 - s2, c2 + s2]
            }
            _ => return Ok(None),
        };
        let mut phases: Vec<f64> = raw.into_iter().map(wrap_phase).collect();
        if self.su_normalize {
            let det_arg = wrap_phase(phases.iter().sum());
            let shift = -det_arg / phases.len() as f64;
            for p in &mut phases {
                *p = wrap_phase(*p + shift);
            }
        }
        Ok(Some(phases))
    }

    /// Pseudo-entropy of the encoded operator. Takes the closed-form
    /// spectrum where one exists, so it stays usable at register widths
    /// where a dense decomposition is not.
    pub fn pseudo_entropy(&self, x: &DataPoint) -> Result<EntropyValue> {
        self.pseudo_entropy_with(x, &EigOptions::default())
    }

    pub fn pseudo_entropy_with(&self, x: &DataPoint, opts: &EigOptions) -> Result<EntropyValue> {
        match self.analytic_phases(x)? {
            Some(phases) => pseudo_entropy_from_phases_with(&phases, opts),
            None => crate::entropy::pseudo_entropy_with(&self.encode(x)?, opts),
        }
    }
}

/// Pairwise state fidelities `|⟨0|U(x_i)† U(x_j)|0⟩|²`, computed from the
/// prepared states (first columns). Symmetric, unit diagonal, entries
/// clamped into `[0, 1]`.
pub fn fidelity_gram(points: &[DataPoint], spec: &EncoderSpec) -> Result<Vec<Vec<f64>>> {
    if points.is_empty() {
        return Err(Error::Shape(
            "fidelity gram needs at least one point".into(),
        ));
    }
    let states: Vec<Vec<C64>> = points
        .iter()
        .map(|p| spec.encode(p).map(|u| u.first_column()))
        .collect::<Result<_>>()?;
    let n = states.len();
    let mut g = vec![vec![0.0; n]; n];
    for i in 0..n {
        g[i][i] = 1.0;
        for j in (i + 1)..n {
            let ip: C64 = states[i]
                .iter()
                .zip(states[j].iter())
                .map(|(a, b)| a.conj() * b)
                .sum();
            let f = ip.norm_sqr().clamp(0.0, 1.0);
            g[i][j] = f;
            g[j][i] = f;
        }
    }
    Ok(g)
}
