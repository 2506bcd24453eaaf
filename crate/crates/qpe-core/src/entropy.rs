//! Entropies on both sides of an encoding: Shannon entropy of
//! simplex-mapped data and pseudo-entropy of the encoding unitary.
//!
//! Pseudo-entropy extends von Neumann entropy `−Tr(ρ log ρ)` to a unitary
//! `U = VΛV†` by evaluating `−Tr(Λ log Λ)` on the unit-modulus spectrum.
//! With eigenphases `α_j` on the principal branch this expands to
//! `Σ_j α_j sin α_j − i·Σ_j α_j cos α_j`; the natural logarithm is used
//! throughout.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::maps::DataPoint;
use crate::spectral::{eig_unitary_with, EigOptions, UnitaryMatrix, C64};

/// Coordinates are clipped to `[−SIMPLEX_CLIP, SIMPLEX_CLIP]` before the
/// softmax so the exponentials cannot overflow.
pub const SIMPLEX_CLIP: f64 = 500.0;
/// Simplex coordinates below this floor make the inverse map undefined.
pub const SIMPLEX_FLOOR: f64 = 1e-300;

/// A point on the probability simplex: nonnegative coordinates summing
/// to 1 within 1e-9.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexPoint {
    probs: Vec<f64>,
}

impl SimplexPoint {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.len() < 2 {
            return Err(Error::Shape(
                "simplex point needs at least two coordinates".into(),
            ));
        }
        for (i, &p) in probs.iter().enumerate() {
            if !p.is_finite() || p < 0.0 {
                return Err(Error::Domain(format!(
                    "simplex coordinate {i} is {p}, expected a nonnegative finite value"
                )));
            }
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::Domain(format!(
                "simplex coordinates sum to {total}, expected 1 within 1e-9"
            )));
        }
        Ok(Self { probs })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn dim(&self) -> usize {
        self.probs.len()
    }
}

/// Maps `x ∈ R^d` onto the interior of the `d`-simplex:
/// `E(x) = softmax(x_1, …, x_d, 0)`, with inputs clipped to the safe
/// range first. The appended zero logit makes the map injective.
pub fn simplex_map(x: &DataPoint) -> Result<SimplexPoint> {
    let mut logits: Vec<f64> = x
        .values()
        .iter()
        .map(|v| v.clamp(-SIMPLEX_CLIP, SIMPLEX_CLIP))
        .collect();
    logits.push(0.0);
    let peak = logits.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = logits.iter().map(|l| (l - peak).exp()).collect();
    let total: f64 = exps.iter().sum();
    SimplexPoint::new(exps.iter().map(|e| e / total).collect())
}

/// Inverse of [`simplex_map`] on the interior: `x_i = ln(p_i / p_{d+1})`.
/// Points at (or numerically on) the boundary have no preimage and fail
/// with a domain error.
pub fn simplex_inverse(p: &SimplexPoint) -> Result<DataPoint> {
    if let Some((i, &bad)) = p.probs.iter().enumerate().find(|(_, &v)| v < SIMPLEX_FLOOR) {
        return Err(Error::Domain(format!(
            "simplex coordinate {i} is {bad:e}, below the invertibility floor {SIMPLEX_FLOOR:e}"
        )));
    }
    let last = p.probs[p.dim() - 1];
    DataPoint::new(
        p.probs[..p.dim() - 1]
            .iter()
            .map(|&q| (q / last).ln())
            .collect(),
    )
}

/// Shannon entropy `−Σ p ln p` in nats, with `0·ln 0 = 0`.
pub fn shannon_entropy(p: &SimplexPoint) -> f64 {
    -p.probs
        .iter()
        .map(|&q| if q > 0.0 { q * q.ln() } else { 0.0 })
        .sum::<f64>()
}

/// Entropy of the two-outcome distribution `(cos²θ, sin²θ)` attached to a
/// point on the unit circle. Zero at multiples of `π/2`, `ln 2` at `π/4`.
pub fn classical_circle_entropy(theta: f64) -> f64 {
    let (c2, s2) = (theta.cos().powi(2), theta.sin().powi(2));
    let term = |q: f64| if q > 0.0 { q * q.ln() } else { 0.0 };
    -(term(c2) + term(s2))
}

/// Pseudo-entropy of a unitary, split into real and imaginary parts so
/// that `real_part + i·imag_part` reconstructs the complex value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntropyValue {
    /// `Σ_j α_j sin α_j`.
    pub real_part: f64,
    /// `−Σ_j α_j cos α_j`.
    pub imag_part: f64,
    /// True when any eigenphase sits within the branch tolerance of `π`,
    /// where the principal branch makes the value discontinuous.
    pub branch_flag: bool,
}

impl EntropyValue {
    pub fn complex(&self) -> C64 {
        C64::new(self.real_part, self.imag_part)
    }

    pub fn modulus(&self) -> f64 {
        self.real_part.hypot(self.imag_part)
    }
}

/// Pseudo-entropy with default eigendecomposition options.
pub fn pseudo_entropy(u: &UnitaryMatrix) -> Result<EntropyValue> {
    pseudo_entropy_with(u, &EigOptions::default())
}

/// Pseudo-entropy `−Tr(Λ ln Λ)` over the eigenphases of `u`.
pub fn pseudo_entropy_with(u: &UnitaryMatrix, opts: &EigOptions) -> Result<EntropyValue> {
    let dec = eig_unitary_with(u, opts)?;
    let mut real_part = 0.0;
    let mut imag_part = 0.0;
    for &a in dec.phases() {
        real_part += a * a.sin();
        imag_part -= a * a.cos();
    }
    Ok(EntropyValue {
        real_part,
        imag_part,
        branch_flag: dec.has_branch_warning(),
    })
}

/// Pseudo-entropy from an explicitly known eigenphase multiset.
///
/// Diagonal encoders and tensor products of single-qubit rotations carry
/// their spectra in closed form; summing over those phases skips the
/// dense eigensolve entirely while agreeing with [`pseudo_entropy`] to
/// rounding error. Inputs may be unwrapped phase sums; each is reduced to
/// the principal branch first, with `−π` mapping to `+π`.
pub fn pseudo_entropy_from_phases(phases: &[f64]) -> Result<EntropyValue> {
    pseudo_entropy_from_phases_with(phases, &EigOptions::default())
}

pub fn pseudo_entropy_from_phases_with(phases: &[f64], opts: &EigOptions) -> Result<EntropyValue> {
    if phases.is_empty() {
        return Err(Error::Shape("eigenphase list is empty".into()));
    }
    let mut real_part = 0.0;
    let mut imag_part = 0.0;
    let mut branch_flag = false;
    for &raw in phases {
        if !raw.is_finite() {
            return Err(Error::NonFinite(format!("eigenphase {raw}")));
        }
        let a = wrap_phase(raw);
        if PI - a.abs() < opts.branch_tolerance {
            branch_flag = true;
        }
        real_part += a * a.sin();
        imag_part -= a * a.cos();
    }
    Ok(EntropyValue {
        real_part,
        imag_part,
        branch_flag,
    })
}

/// Reduces an angle to `(−π, π]`; exact `−π` lands on `+π`.
pub fn wrap_phase(raw: f64) -> f64 {
    let a = raw.rem_euclid(2.0 * PI);
    if a > PI {
        a - 2.0 * PI
    } else {
        a
    }
}

/// How a complex pseudo-entropy is projected onto the real line before it
/// is correlated with a classical entropy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TranslationKind {
    /// Real part only.
    Real,
    /// Complex modulus.
    Modulus,
}

impl TranslationKind {
    pub const ALL: [TranslationKind; 2] = [TranslationKind::Real, TranslationKind::Modulus];

    pub fn name(self) -> &'static str {
        match self {
            TranslationKind::Real => "real",
            TranslationKind::Modulus => "modulus",
        }
    }
}

impl std::fmt::Display for TranslationKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for TranslationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "real" => Ok(TranslationKind::Real),
            "modulus" => Ok(TranslationKind::Modulus),
            other => Err(Error::Shape(format!(
                "unknown translation '{other}' (expected 'real' or 'modulus')"
            ))),
        }
    }
}

pub fn translate(value: &EntropyValue, kind: TranslationKind) -> f64 {
    match kind {
        TranslationKind::Real => value.real_part,
        TranslationKind::Modulus => value.modulus(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::{
        encode_angle, encode_circle, encode_phase_product, gate_phase, pauli_x, CircleEncoding,
    };
    use crate::spectral::{kron, matmul, random_su2, ComplexMatrix, UnitaryMatrix};
    use std::f64::consts::PI;

    fn point(vals: &[f64]) -> DataPoint {
        DataPoint::new(vals.to_vec()).unwrap()
    }

    #[test]
    fn simplex_of_ln2_is_two_thirds() {
        let p = simplex_map(&point(&[2.0f64.ln()])).unwrap();
        assert!((p.probs()[0] - 2.0 / 3.0).abs() < 1e-15);
        assert!((p.probs()[1] - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn simplex_of_origin_is_uniform() {
        let p = simplex_map(&point(&[0.0, 0.0])).unwrap();
        for &q in p.probs() {
            assert!((q - 1.0 / 3.0).abs() < 1e-15);
        }
        assert!((shannon_entropy(&p) - 3.0f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn simplex_roundtrips_inside_clip_range() {
        let xs = [
            vec![0.3],
            vec![-4.0, 2.5],
            vec![1.0, -1.0, 6.0],
            vec![250.0, -250.0],
        ];
        for vals in xs {
            let x = point(&vals);
            let back = simplex_inverse(&simplex_map(&x).unwrap()).unwrap();
            for (a, b) in x.values().iter().zip(back.values()) {
                assert!((a - b).abs() < 1e-9, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn simplex_clips_extreme_coordinates() {
        let back = simplex_inverse(&simplex_map(&point(&[600.0])).unwrap()).unwrap();
        assert!((back.values()[0] - SIMPLEX_CLIP).abs() < 1e-6);
    }

    #[test]
    fn simplex_inverse_rejects_boundary() {
        let p = SimplexPoint::new(vec![1.0, 1e-310]).unwrap();
        assert!(matches!(simplex_inverse(&p), Err(Error::Domain(_))));
    }

    #[test]
    fn circle_entropy_landmarks() {
        assert!(classical_circle_entropy(0.0).abs() < 1e-15);
        assert!(classical_circle_entropy(PI / 2.0).abs() < 1e-15);
        assert!((classical_circle_entropy(PI / 4.0) - 2.0f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn identity_has_zero_pseudo_entropy() {
        let u = UnitaryMatrix::new(ComplexMatrix::identity(8)).unwrap();
        let s = pseudo_entropy(&u).unwrap();
        assert_eq!(s.real_part, 0.0);
        assert_eq!(s.imag_part, 0.0);
        assert!(!s.branch_flag);
    }

    #[test]
    fn phase_gate_closed_form() {
        let theta = 1.234;
        let s = pseudo_entropy(&gate_phase(theta)).unwrap();
        assert!((s.real_part - theta * theta.sin()).abs() < 1e-12);
        assert!((s.imag_part + theta * theta.cos()).abs() < 1e-12);
    }

    #[test]
    fn phase_product_on_one_feature() {
        let theta = PI / 2.0;
        let s = pseudo_entropy(&encode_phase_product(&point(&[theta])).unwrap()).unwrap();
        assert!((s.real_part - PI / 2.0).abs() < 1e-12);
        assert!(s.imag_part.abs() < 1e-12);
    }

    #[test]
    fn pauli_x_entropy_is_i_pi_with_branch_flag() {
        let s = pseudo_entropy(&pauli_x()).unwrap();
        assert!(s.real_part.abs() < 1e-12);
        assert!((s.imag_part - PI).abs() < 1e-12);
        assert!(s.branch_flag);
    }

    #[test]
    fn angle_pair_at_right_angles() {
        // Phases {−π/2, 0, 0, π/2} sum to S = π exactly.
        let s = pseudo_entropy(&encode_angle(&point(&[PI / 2.0, PI / 2.0])).unwrap()).unwrap();
        assert!((s.real_part - PI).abs() < 1e-12);
        assert!(s.imag_part.abs() < 1e-12);
    }

    #[test]
    fn circle_amplitude_closed_form() {
        for &theta in &[0.1, 0.4, 1.0, 1.5] {
            let s = pseudo_entropy(&encode_circle(theta, CircleEncoding::Amplitude)).unwrap();
            assert!((s.real_part - 2.0 * theta * theta.sin()).abs() < 1e-10);
            assert!(s.imag_part.abs() < 1e-10);
        }
    }

    #[test]
    fn circle_angle_closed_form() {
        for &theta in &[0.1, PI / 4.0, 0.9, 1.4] {
            let s = pseudo_entropy(&encode_circle(theta, CircleEncoding::Angle)).unwrap();
            let c2 = (2.0 * theta).cos();
            let want = 2.0 * c2 * c2.sin() + 2.0 * 1.0f64.sin();
            assert!((s.real_part - want).abs() < 1e-10, "theta {theta}");
            assert!(s.imag_part.abs() < 1e-10);
        }
    }

    #[test]
    fn entropy_is_similarity_invariant() {
        let u = kron(&random_su2(7), &random_su2(8)).unwrap();
        let v = kron(&random_su2(9), &random_su2(10)).unwrap();
        let conj = matmul(&v, &matmul(&u, &v.dagger()).unwrap()).unwrap();
        let a = pseudo_entropy(&u).unwrap();
        let b = pseudo_entropy(&conj).unwrap();
        assert!((a.real_part - b.real_part).abs() < 1e-9);
        assert!((a.imag_part - b.imag_part).abs() < 1e-9);
    }

    #[test]
    fn translation_projections() {
        let v = EntropyValue {
            real_part: 3.0,
            imag_part: 4.0,
            branch_flag: false,
        };
        assert_eq!(translate(&v, TranslationKind::Real), 3.0);
        assert_eq!(translate(&v, TranslationKind::Modulus), 5.0);
        assert_eq!(v.complex(), C64::new(3.0, 4.0));
    }

    #[test]
    fn translation_names_round_trip() {
        for t in TranslationKind::ALL {
            assert_eq!(t.name().parse::<TranslationKind>().unwrap(), t);
        }
        assert!("abs".parse::<TranslationKind>().is_err());
    }
}
