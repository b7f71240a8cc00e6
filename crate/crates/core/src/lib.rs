//! Spectra of tridiagonal Toeplitz matrices with a perturbed boundary row,
//! as they arise in nearest-neighbor platoons with one leader, plus
//! stability verdicts and simulation for the associated consensus flocks.

pub mod charpoly;
pub mod error;
mod fit;
pub mod model;
pub mod oracle;
pub mod perturb;
pub mod simulate;
pub mod spectrum;
pub mod stability;

pub use error::{Error, Result};
pub use model::{make_params, MatrixKind, SystemParams};
