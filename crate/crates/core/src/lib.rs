//! Period series for anharmonic oscillators from a variationally optimised
//! expansion about a harmonic reference, with quadrature and elliptic-integral
//! oracles to check them against.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod analysis;
pub mod constants;
pub mod error;
pub mod oracle;
pub mod oscillators;
pub mod precession;
pub mod series;
pub mod trig;

pub use error::{Error, Result};
pub use oscillators::{exact_period, period_series, turning_points, OscillatorModel, TurningPoints};
pub use series::{expand, term, IntegrandSpec, SeriesExpansion, MAX_ORDER};
pub use trig::TrigPolynomial;
