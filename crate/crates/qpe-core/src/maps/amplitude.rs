//! Amplitude encoding: a probability vector becomes the squared
//! amplitudes of the state prepared from `|0…0⟩`.
//!
//! The circuit follows the binary mass tree of the distribution. Each
//! node splits its mass between children; the square root of the
//! left-child fraction sets a controlled `R̃_y` rotation on the qubit of
//! that depth, controlled on the path bits above it.

use crate::error::{Error, Result};
use crate::maps::gates::{embed_multi_controlled, gate_ry};
use crate::spectral::{UnitaryMatrix, DEFAULT_DIM_CAP};

/// Tolerance on `Σp − 1` for an input distribution.
pub const MASS_TOL: f64 = 1e-9;

/// Binary mass tree over a probability vector of power-of-two length.
/// `level(0)` is the root (total mass), `level(depth())` the leaves.
#[derive(Debug, Clone)]
pub struct AmplitudeTree {
    levels: Vec<Vec<f64>>,
}

impl AmplitudeTree {
    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, d: usize) -> &[f64] {
        &self.levels[d]
    }

    /// Fraction of node mass sitting in the left child; 0-mass nodes
    /// report 1 so the induced rotation angle is 0.
    pub fn left_fraction(&self, depth: usize, node: usize) -> f64 {
        let mass = self.levels[depth][node];
        if mass <= 0.0 {
            return 1.0;
        }
        (self.levels[depth + 1][2 * node] / mass).clamp(0.0, 1.0)
    }
}

/// Builds the mass tree. Requires a power-of-two length of at least 2,
/// entries nonnegative (tiny negative rounding noise is clamped), and
/// total mass within [`MASS_TOL`] of 1.
pub fn amplitude_tree(probs: &[f64]) -> Result<AmplitudeTree> {
    let len = probs.len();
    if len < 2 || !len.is_power_of_two() {
        return Err(Error::Shape(format!(
            "amplitude encoding needs a power-of-two number of probabilities (>= 2), got {len}"
        )));
    }
    if len > DEFAULT_DIM_CAP {
        return Err(Error::Capacity {
            requested: len,
            cap: DEFAULT_DIM_CAP,
        });
    }
    let mut leaves = Vec::with_capacity(len);
    for (i, &p) in probs.iter().enumerate() {
        if !p.is_finite() || p < -1e-12 {
            return Err(Error::Domain(format!(
                "probability {i} is {p}, expected a value in [0, 1]"
            )));
        }
        leaves.push(p.max(0.0));
    }
    let total: f64 = leaves.iter().sum();
    if (total - 1.0).abs() > MASS_TOL {
        return Err(Error::Domain(format!(
            "probabilities sum to {total}, expected 1 within {MASS_TOL:.1e}"
        )));
    }

    let mut levels = vec![leaves];
    while levels.last().unwrap().len() > 1 {
        let prev = levels.last().unwrap();
        let next: Vec<f64> = prev.chunks(2).map(|c| c[0] + c[1]).collect();
        levels.push(next);
    }
    levels.reverse();
    Ok(AmplitudeTree { levels })
}

/// `R̃_y(α) = R_y(2·arccos α)` for `α ∈ [0, 1]`.
pub fn gate_ry_amplitude(alpha: f64) -> UnitaryMatrix {
    gate_ry(2.0 * alpha.clamp(0.0, 1.0).acos())
}

/// Builds the state-preparation unitary for `probs`: walking the tree
/// top-down, depth `d` applies `R̃_y(√(left fraction))` on qubit `d`,
/// controlled on the path bits of qubits `0..d`. The first column of the
/// result carries amplitudes with `|amp[i]|² = probs[i]`.
pub fn encode_amplitude(probs: &[f64]) -> Result<UnitaryMatrix> {
    let tree = amplitude_tree(probs)?;
    let n = tree.depth();

    let mut u: Option<UnitaryMatrix> = None;
    for d in 0..n {
        for node in 0..(1usize << d) {
            let g = gate_ry_amplitude(tree.left_fraction(d, node).sqrt());
            let op = if d == 0 {
                embed_multi_controlled(&g, &[], 0, n)?
            } else {
                let controls: Vec<(usize, bool)> = (0..d)
                    .map(|q| (q, (node >> (d - 1 - q)) & 1 == 1))
                    .collect();
                embed_multi_controlled(&g, &controls, d, n)?
            };
            u = Some(match u {
                None => op,
                Some(acc) => crate::spectral::matmul(&op, &acc)?,
            });
        }
    }
    u.ok_or_else(|| Error::Shape("empty amplitude circuit".into()))
}

/// Squared moduli of the state prepared from `|0…0⟩`.
pub fn prepared_distribution(u: &UnitaryMatrix) -> Vec<f64> {
    u.first_column().iter().map(|c| c.norm_sqr()).collect()
}
