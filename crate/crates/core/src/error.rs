use thiserror::Error;

/// Errors raised by the expansion engine, the oscillator families and the
/// numerical oracles.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("expansion order {order} exceeds the supported maximum {max}")]
    OrderTooHigh { order: usize, max: usize },

    #[error("degenerate interval: x_minus ({x_minus}) must be strictly below x_plus ({x_plus})")]
    DegenerateInterval { x_minus: f64, x_plus: f64 },

    #[error("reference frequency must be positive and finite, got {0}")]
    InvalidOmega(f64),

    #[error("mean of the factor function is not positive ({0}); the turning points do not bound a well")]
    NonPositiveMean(f64),

    #[error("no sign change on [{lo}, {hi}]: g(lo) = {f_lo}, g(hi) = {f_hi}")]
    NoSignChange { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("root finder did not converge after {0} iterations")]
    NoConvergence(usize),

    #[error("PMS stationarity via I_N = 0 needs an odd order, got {0}")]
    EvenPmsOrder(usize),

    #[error("no periodic motion: {0}")]
    NoPeriodicMotion(String),

    #[error("energy {energy} reaches the barrier height {barrier}")]
    BarrierCrossed { energy: f64, barrier: f64 },

    #[error("{0}")]
    Domain(String),

    #[error("orbit is beyond the critical configuration: 6GM = {six_gm} >= L = {semilatus}")]
    BeyondCritical { six_gm: f64, semilatus: f64 },

    #[error("third root of the cubic lies inside the integration interval (a = {a} <= a_c = {critical})")]
    ThirdRootInsideInterval { a: f64, critical: f64 },

    #[error("quadrature tolerance {requested:e} not met after {evaluations} evaluations (estimate {estimate:e})")]
    ToleranceNotMet { requested: f64, estimate: f64, evaluations: usize },

    #[error("integrand is not finite at x = {0}")]
    NonFiniteIntegrand(f64),

    #[error("log-linear fit is degenerate: {0}")]
    DegenerateFit(String),
}

pub type Result<T> = std::result::Result<T, Error>;
