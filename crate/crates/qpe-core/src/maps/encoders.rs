//! The encoding circuits: product encoders (angle, phase), the IQP family,
//! and the small one- and two-qubit analytic families.

use std::f64::consts::PI;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::maps::gates::{
    bit, gate_hadamard, gate_phase, gate_rx, gate_ry, gate_rz, gate_s, gate_t,
};
use crate::maps::DataPoint;
use crate::spectral::{kron, matmul, ComplexMatrix, UnitaryMatrix, C64, DEFAULT_DIM_CAP};

/// Angle encoding `⊗_l R_x(x_l)`, one qubit per feature. Features are
/// consumed as radians; the sweep pipelines keep them in `[−π, π)`.
pub fn encode_angle(x: &DataPoint) -> Result<UnitaryMatrix> {
    product_encoder(x, gate_rx)
}

/// Phase product encoding `⊗_l p(x_l)`. Intended domain per angle is
/// `(−π, π)` so that single-factor eigenphases stay off the branch cut.
pub fn encode_phase_product(x: &DataPoint) -> Result<UnitaryMatrix> {
    product_encoder(x, gate_phase)
}

fn product_encoder(x: &DataPoint, gate: impl Fn(f64) -> UnitaryMatrix) -> Result<UnitaryMatrix> {
    let vals = x.values();
    let mut u = gate(vals[0]);
    for &v in &vals[1..] {
        u = kron(&u, &gate(v))?;
    }
    Ok(u)
}

fn checked_register_dim(n: usize) -> Result<usize> {
    1usize
        .checked_shl(n as u32)
        .filter(|&d| d <= DEFAULT_DIM_CAP)
        .ok_or(Error::Capacity {
            requested: usize::MAX,
            cap: DEFAULT_DIM_CAP,
        })
}

/// Unwrapped eigenphase sums of `⊗_l R(x_l)` for any rotation axis: each
/// factor contributes `±x_l/2`.
pub(crate) fn rotation_product_phases(x: &DataPoint) -> Result<Vec<f64>> {
    let dim = checked_register_dim(x.dim())?;
    let mut phases = Vec::with_capacity(dim);
    phases.push(0.0);
    for &v in x.values() {
        let mut next = Vec::with_capacity(phases.len() * 2);
        for &p in &phases {
            next.push(p - v / 2.0);
            next.push(p + v / 2.0);
        }
        phases = next;
    }
    Ok(phases)
}

/// Unwrapped eigenphase sums of `⊗_l p(x_l)`: each factor contributes
/// `0` or `x_l`.
pub(crate) fn phase_product_phases(x: &DataPoint) -> Result<Vec<f64>> {
    let dim = checked_register_dim(x.dim())?;
    let mut phases = Vec::with_capacity(dim);
    phases.push(0.0);
    for &v in x.values() {
        let mut next = Vec::with_capacity(phases.len() * 2);
        for &p in &phases {
            next.push(p);
            next.push(p + v);
        }
        phases = next;
    }
    Ok(phases)
}

/// Per-basis-state phases of the IQP diagonal block. This is the exact
/// spectrum of the `SansOuter` variant and, by similarity through the
/// Hadamard layers, of `Standard` as well.
pub(crate) fn iqp_diagonal_phases(x: &DataPoint) -> Result<Vec<f64>> {
    let n = x.dim();
    let dim = checked_register_dim(n)?;
    let vals = x.values();
    let mut phases = Vec::with_capacity(dim);
    for b in 0..dim {
        let mut phase = 0.0;
        for k in 0..n {
            if bit(b, k, n) == 1 {
                phase += vals[k];
                for j in (k + 1)..n {
                    if bit(b, j, n) == 1 {
                        phase += (PI - vals[k]) * (PI - vals[j]);
                    }
                }
            }
        }
        phases.push(phase);
    }
    Ok(phases)
}

/// Layer structure of the IQP-style encoders.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IqpVariant {
    /// `H^{⊗n} · D(x) · H^{⊗n}` with `D` the diagonal phase block.
    Standard,
    /// The diagonal block alone (no outer Hadamard layers).
    SansOuter,
    /// `D(x) · H^{⊗n} · D(x) · H^{⊗n}`, the repeated full layer.
    FullLayer,
}

/// IQP encoding on one qubit per feature. The diagonal block accumulates,
/// per basis state, the single-qubit phases `x_k` and the pair phases
/// `(π − x_k)(π − x_j)` for every coupled pair of set bits; it is built
/// directly as a diagonal matrix rather than by multiplying gate
/// embeddings. Intended feature domain is `[0, 2π)`.
pub fn encode_iqp(x: &DataPoint, variant: IqpVariant) -> Result<UnitaryMatrix> {
    let n = x.dim();
    let phases = iqp_diagonal_phases(x)?;
    let dim = phases.len();

    let mut m = DMatrix::<C64>::zeros(dim, dim);
    for (b, &phase) in phases.iter().enumerate() {
        m[(b, b)] = C64::from_polar(1.0, phase);
    }
    let diag = UnitaryMatrix::from_certified(
        ComplexMatrix::from_inner(m),
        4.0 * f64::EPSILON * (dim as f64).sqrt(),
    )?;

    match variant {
        IqpVariant::SansOuter => Ok(diag),
        IqpVariant::Standard => {
            let hn = hadamard_layer(n)?;
            matmul(&hn, &matmul(&diag, &hn)?)
        }
        IqpVariant::FullLayer => {
            let hn = hadamard_layer(n)?;
            let inner = matmul(&diag, &hn)?;
            matmul(&inner, &inner)
        }
    }
}

fn hadamard_layer(n: usize) -> Result<UnitaryMatrix> {
    let h = gate_hadamard();
    let mut u = h.clone();
    for _ in 1..n {
        u = kron(&u, &h)?;
    }
    Ok(u)
}

/// One- and two-qubit encoders for points on the unit circle,
/// parameterized by the angle `θ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CircleEncoding {
    /// `α(θ) = R_X(2θ)`; the circle point enters through the rotation
    /// amplitude of a single qubit.
    Amplitude,
    /// `β(θ) = R_X(2cos²θ) ⊗ R_X(2sin²θ)`; each embedded coordinate gets
    /// its own qubit.
    Angle,
}

pub fn encode_circle(theta: f64, which: CircleEncoding) -> UnitaryMatrix {
    match which {
        CircleEncoding::Amplitude => gate_rx(2.0 * theta),
        CircleEncoding::Angle => {
            let (c, s) = (theta.cos(), theta.sin());
            kron(&gate_rx(2.0 * c * c), &gate_rx(2.0 * s * s)).expect("4x4 is below cap")
        }
    }
}

/// Circuit depth of the single-qubit expressivity family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpressivityDepth {
    /// `H · R_z(x) · H`.
    Shallow,
    /// `T R_y(x) T† · S R_x(x) S† · H R_z(x) H`.
    Deep,
}

pub fn encode_expressivity(x: f64, depth: ExpressivityDepth) -> UnitaryMatrix {
    let h = gate_hadamard();
    let shallow = matmul(&h, &matmul(&gate_rz(x), &h).expect("2x2")).expect("2x2");
    match depth {
        ExpressivityDepth::Shallow => shallow,
        ExpressivityDepth::Deep => {
            let (s, t) = (gate_s(), gate_t());
            let blk_y = matmul(&t, &matmul(&gate_ry(x), &t.dagger()).expect("2x2")).expect("2x2");
            let blk_x = matmul(&s, &matmul(&gate_rx(x), &s.dagger()).expect("2x2")).expect("2x2");
            matmul(&blk_y, &matmul(&blk_x, &shallow).expect("2x2")).expect("2x2")
        }
    }
}

/// Rotation axis of the permutation-symmetric two-qubit family
/// `G(x₁) ⊗ G(x₂)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymmetricAxis {
    Y,
    Z,
}

pub fn encode_symmetric(x1: f64, x2: f64, axis: SymmetricAxis) -> UnitaryMatrix {
    let g = match axis {
        SymmetricAxis::Y => gate_ry,
        SymmetricAxis::Z => gate_rz,
    };
    kron(&g(x1), &g(x2)).expect("4x4 is below cap")
}
