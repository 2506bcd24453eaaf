//! Entropy retention analysis for quantum feature maps.
//!
//! The crate measures how much classical information a quantum encoding
//! keeps: data points are mapped to the probability simplex (Shannon
//! entropy) and to encoding unitaries (pseudo-entropy, an analytic
//! extension of von Neumann entropy to unitary operators), and the two
//! entropy series are compared with rank correlation statistics.
//!
//! Modules, bottom to top:
//! - [`spectral`]: complex matrices, certified unitaries, eigenphases.
//! - [`maps`]: gates and the encoding circuits (angle, phase product,
//!   IQP variants, amplitude trees, and the small analytic families).
//! - [`entropy`]: simplex map, Shannon entropy, pseudo-entropy,
//!   translations to the real line.
//! - [`stats`]: Pearson, Spearman, and the Chatterjee rank correlation.
//! - [`manifolds`]: grid/circle/sphere samplers, CSV ingestion,
//!   preprocessing pipelines.
//! - [`checks`]: self-check suites for the analytic identities.

pub mod checks;
pub mod entropy;
pub mod error;
pub mod manifolds;
pub mod maps;
pub mod spectral;
pub mod stats;

pub use error::{Error, Result};
