//! Parity-invariant oscillators `V = x²/2 + μx^{2K}/(2K)`.
//!
//! With `x = A cos θ` the factor is `R = 1/2 + ρ/(2K) Σ_{j<K} cos^{2j} θ`
//! and the reference frequency is written `ω² = (1 + κρ)/2`. At strong
//! coupling `√ρ T` tends to `c₀`, computed from
//! `R_∞ = (1/2K) Σ_{j<K} cos^{2j} θ` and `ω_∞² = κ/2`.

use std::f64::consts::SQRT_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{expand, kappa_balance, IntegrandSpec};
use crate::trig::TrigPolynomial;

use super::exact_from_factor;

fn check_k(k: u32) -> Result<()> {
    if k >= 2 {
        Ok(())
    } else {
        Err(Error::Domain(format!("even power exponent K must be at least 2, got {k}")))
    }
}

/// `Σ_{j<K} cos^{2j} θ`.
fn power_sum(k: u32) -> TrigPolynomial {
    let mut c = vec![0.0; 2 * k as usize - 1];
    for j in 0..k as usize {
        c[2 * j] = 1.0;
    }
    TrigPolynomial::new(c)
}

/// `R(θ) = 1/2 + ρ/(2K) Σ_{j<K} cos^{2j} θ`.
pub fn even_power_factor(k: u32, rho: f64) -> TrigPolynomial {
    &power_sum(k).scale(rho / (2 * k) as f64) + &TrigPolynomial::constant(0.5)
}

/// Strong-coupling factor `R_∞ = (1/2K) Σ_{j<K} cos^{2j} θ`.
pub fn even_power_strong_factor(k: u32) -> TrigPolynomial {
    power_sum(k).scale(1.0 / (2 * k) as f64)
}

/// `κ` from first-order PMS: `(1/K) Σ_{j<K} C(2j, j)/4ʲ`.
pub fn even_power_kappa_first_order(k: u32) -> f64 {
    power_sum(k).mean() / k as f64
}

/// Balancing `κ_b` for the strong-coupling deviation, located numerically.
pub fn even_power_kappa_balanced(k: u32) -> Result<f64> {
    check_k(k)?;
    let r = even_power_strong_factor(k);
    let family = |kappa: f64| &r.scale(2.0 / kappa) - &TrigPolynomial::constant(1.0);
    Ok(kappa_balance(family, (0.1, 2.0))?.kappa)
}

/// A period (or `c₀`) estimate with the size of the expansion variable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeriodEstimate {
    pub value: f64,
    pub max_abs_delta: f64,
    /// `max|Δ| ≥ 1`: the partial sums are not guaranteed to converge.
    pub divergent: bool,
}

fn estimate(factor: TrigPolynomial, omega: f64, order: usize) -> Result<PeriodEstimate> {
    let spec = IntegrandSpec::canonical(factor, omega)?;
    let max_abs_delta = crate::series::delta_of(&spec).max_abs();
    Ok(PeriodEstimate { value: SQRT_2 * expand(&spec, order)?.sum(), max_abs_delta, divergent: max_abs_delta >= 1.0 })
}

/// `√2 S_N` at `ω² = (1 + κρ)/2`.
pub fn even_power_series(k: u32, rho: f64, kappa: f64, order: usize) -> Result<PeriodEstimate> {
    check_k(k)?;
    if !(rho > -1.0) {
        return Err(Error::NoPeriodicMotion(format!("rho must exceed -1, got {rho}")));
    }
    let w2 = 0.5 * (1.0 + kappa * rho);
    if !(w2 > 0.0) {
        return Err(Error::InvalidOmega(w2));
    }
    estimate(even_power_factor(k, rho), w2.sqrt(), order)
}

/// Partial sum for `c₀ = lim √ρ T` at `ω_∞² = κ/2`.
pub fn even_power_c0_series(k: u32, kappa: f64, order: usize) -> Result<PeriodEstimate> {
    check_k(k)?;
    if !(kappa > 0.0) {
        return Err(Error::InvalidOmega(kappa));
    }
    estimate(even_power_strong_factor(k), (0.5 * kappa).sqrt(), order)
}

/// Quadrature of the exact period.
pub fn even_power_exact_period(k: u32, rho: f64) -> Result<f64> {
    check_k(k)?;
    if !(rho > -1.0) {
        return Err(Error::NoPeriodicMotion(format!("rho must exceed -1, got {rho}")));
    }
    exact_from_factor(&even_power_factor(k, rho))
}

/// Quadrature of `c₀ = √2 ∫₀^π dθ / √R_∞`.
pub fn even_power_c0_exact(k: u32) -> Result<f64> {
    check_k(k)?;
    exact_from_factor(&even_power_strong_factor(k))
}
