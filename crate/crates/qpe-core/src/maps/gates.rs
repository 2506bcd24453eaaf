//! Single-qubit gates and their embeddings into multi-qubit registers.
//!
//! Register convention: qubit 0 is the most significant bit of a basis
//! index, so `|q0 q1 … q(n−1)⟩` is the integer `q0·2^(n−1) + … + q(n−1)`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::spectral::{ComplexMatrix, UnitaryMatrix, C64, DEFAULT_DIM_CAP};

fn unit2(entries: [C64; 4]) -> UnitaryMatrix {
    let m = ComplexMatrix::from_row_slice(2, 2, &entries).expect("finite gate entries");
    UnitaryMatrix::new(m).expect("gate is unitary by construction")
}

fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// `R_x(θ) = exp(−iθX/2)`. Panics on non-finite `θ`.
pub fn gate_rx(theta: f64) -> UnitaryMatrix {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    unit2([re(c), C64::new(0.0, -s), C64::new(0.0, -s), re(c)])
}

/// `R_y(θ) = exp(−iθY/2)`.
pub fn gate_ry(theta: f64) -> UnitaryMatrix {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    unit2([re(c), re(-s), re(s), re(c)])
}

/// `R_z(θ) = exp(−iθZ/2)`.
pub fn gate_rz(theta: f64) -> UnitaryMatrix {
    unit2([
        C64::from_polar(1.0, -theta / 2.0),
        re(0.0),
        re(0.0),
        C64::from_polar(1.0, theta / 2.0),
    ])
}

/// Phase gate `p(θ) = diag(1, e^{iθ})`. Determinant `e^{iθ}`, deliberately
/// not normalized to SU(2); see `EncoderSpec::su_normalize` for the
/// det-normalized variant.
pub fn gate_phase(theta: f64) -> UnitaryMatrix {
    unit2([re(1.0), re(0.0), re(0.0), C64::from_polar(1.0, theta)])
}

pub fn gate_hadamard() -> UnitaryMatrix {
    let h = FRAC_1_SQRT_2;
    unit2([re(h), re(h), re(h), re(-h)])
}

/// `S = p(π/2)`.
pub fn gate_s() -> UnitaryMatrix {
    gate_phase(PI / 2.0)
}

/// `T = p(π/4)`.
pub fn gate_t() -> UnitaryMatrix {
    gate_phase(PI / 4.0)
}

pub fn pauli_x() -> UnitaryMatrix {
    unit2([re(0.0), re(1.0), re(1.0), re(0.0)])
}

pub fn pauli_y() -> UnitaryMatrix {
    unit2([re(0.0), C64::new(0.0, -1.0), C64::new(0.0, 1.0), re(0.0)])
}

pub fn pauli_z() -> UnitaryMatrix {
    unit2([re(1.0), re(0.0), re(0.0), re(-1.0)])
}

/// Two-qubit SWAP.
pub fn gate_swap() -> UnitaryMatrix {
    let mut m = DMatrix::<C64>::zeros(4, 4);
    m[(0, 0)] = re(1.0);
    m[(1, 2)] = re(1.0);
    m[(2, 1)] = re(1.0);
    m[(3, 3)] = re(1.0);
    UnitaryMatrix::new(ComplexMatrix::from_inner(m)).expect("swap is a permutation")
}

pub(crate) fn bit(index: usize, qubit: usize, n: usize) -> usize {
    (index >> (n - 1 - qubit)) & 1
}

/// Embeds a single-qubit gate on `target`, applied only when `control`
/// reads `control_value`, into an `n`-qubit operator.
pub fn embed_controlled(
    u: &UnitaryMatrix,
    control: usize,
    control_value: bool,
    target: usize,
    n: usize,
) -> Result<UnitaryMatrix> {
    embed_multi_controlled(u, &[(control, control_value)], target, n)
}

/// Embeds a single-qubit gate on `target`, applied only on basis states
/// where every `(qubit, value)` control matches. An empty control list
/// embeds the plain gate.
pub fn embed_multi_controlled(
    u: &UnitaryMatrix,
    controls: &[(usize, bool)],
    target: usize,
    n: usize,
) -> Result<UnitaryMatrix> {
    if u.dim() != 2 {
        return Err(Error::Shape(format!(
            "embedded gate must be 2x2, got {0}x{0}",
            u.dim()
        )));
    }
    if n == 0 {
        return Err(Error::Shape("register needs at least one qubit".into()));
    }
    let dim = 1usize
        .checked_shl(n as u32)
        .filter(|&d| d <= DEFAULT_DIM_CAP)
        .ok_or(Error::Capacity {
            requested: usize::MAX,
            cap: DEFAULT_DIM_CAP,
        })?;
    if target >= n {
        return Err(Error::Shape(format!(
            "target {target} outside register of {n}"
        )));
    }
    let mut seen = vec![false; n];
    seen[target] = true;
    for &(c, _) in controls {
        if c >= n {
            return Err(Error::Shape(format!("control {c} outside register of {n}")));
        }
        if seen[c] {
            return Err(Error::Shape(format!("qubit {c} used twice in embedding")));
        }
        seen[c] = true;
    }

    let tmask = 1usize << (n - 1 - target);
    let mut m = DMatrix::<C64>::zeros(dim, dim);
    for col in 0..dim {
        let active = controls
            .iter()
            .all(|&(c, v)| bit(col, c, n) == usize::from(v));
        if active {
            let t = bit(col, target, n);
            m[(col & !tmask, col)] = u.matrix().entry(0, t);
            m[(col | tmask, col)] = u.matrix().entry(1, t);
        } else {
            m[(col, col)] = re(1.0);
        }
    }
    // Block-diagonal embedding of a certified unitary: the residual of the
    // block is the residual of the whole.
    UnitaryMatrix::from_certified(ComplexMatrix::from_inner(m), u.unitarity_residual())
}
