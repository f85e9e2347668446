//! Exponential-family (logistic) PCA for assessment response data.
//!
//! The crate fits an affine rank-k projection of saturated natural parameters
//! by majorization-minimization of the scaled deviance, reads the result as a
//! multidimensional 2PL item response model and as points-and-hyperplanes,
//! and renders score-space maps as SVG.

pub mod data;
pub mod error;
pub mod expfam;
pub mod fit;
pub mod ingest;
pub mod irt;
pub mod linalg;
pub mod model_io;
pub mod synth;
pub mod viz;

pub use data::ResponseMatrix;
pub use error::{LpcaError, Result};
pub use expfam::Family;
pub use fit::{fit, FitConfig, FitResult, Init, ModelParams};
