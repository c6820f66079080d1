//! Numerical analysis of discretised Gaussian derivative operators.
//!
//! The library builds the classical 1-D discrete smoothing kernels (sampled,
//! normalised sampled, integrated, and the Bessel-function discrete analogue
//! of the Gaussian), combines them with central difference operators into
//! five derivative-approximation schemes, and quantifies how closely each
//! scheme tracks continuous scale-space behaviour: spatial spread measures
//! of the equivalent kernels, and the consistency of automatically selected
//! scales for blob, edge and ridge detectors on matched model signals.

pub mod diffops;
pub mod grid2d;
pub mod kernels1d;
pub mod measures;
pub mod scalesel;
pub mod signals;
pub mod specfun;

mod error;

pub use error::{Error, Result};
