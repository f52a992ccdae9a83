//! Duffing oscillator `V = x²/2 + μx⁴/4`; the period depends on `ρ = μA²`
//! only.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::oracle::{default_abs_tol, elliptic_k, integrate};
use crate::series::{check_order, half_binomial, KahanSum};
use crate::trig::cos_moment;

fn check_rho(rho: f64) -> Result<()> {
    if rho > -1.0 && rho.is_finite() {
        Ok(())
    } else {
        Err(Error::NoPeriodicMotion(format!("rho must exceed -1, got {rho}")))
    }
}

/// First-order PMS frequency `√((4 + 3ρ)/8)`.
pub fn duffing_omega_pms(rho: f64) -> f64 {
    ((4.0 + 3.0 * rho) / 8.0).sqrt()
}

/// Coefficient `(−1)ⁿ C(−1/2, n) C(−1/2, 2n)` shared by every series whose
/// Δ is a single cosine harmonic.
pub(crate) fn single_harmonic_coefficient(n: usize) -> f64 {
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    sign * half_binomial(n) * half_binomial(2 * n)
}

/// Terms `n = 0..=N` of `T = 4π/√(4+3ρ) Σ (−1)ⁿ C(−1/2,n) C(−1/2,2n) ξ^{2n}`,
/// `ξ = ρ/(4+3ρ)`.
pub fn duffing_period_terms(rho: f64, order: usize) -> Result<Vec<f64>> {
    check_rho(rho)?;
    check_order(order)?;
    Ok(duffing_terms_unchecked(rho, order))
}

pub(crate) fn duffing_terms_unchecked(rho: f64, order: usize) -> Vec<f64> {
    let xi = rho / (4.0 + 3.0 * rho);
    let prefactor = 4.0 * PI / (4.0 + 3.0 * rho).sqrt();
    let xi2 = xi * xi;
    let mut power = 1.0;
    (0..=order)
        .map(|n| {
            let t = prefactor * single_harmonic_coefficient(n) * power;
            power *= xi2;
            t
        })
        .collect()
}

/// Partial sum through `n = N` of the PMS period series.
pub fn duffing_period_series(rho: f64, order: usize) -> Result<f64> {
    Ok(duffing_period_terms(rho, order)?.into_iter().collect::<KahanSum>().value())
}

/// `T = 4 K(κ)/√(1+ρ)` with `κ = ρ/(2(1+ρ))`.
pub fn duffing_exact_period(rho: f64) -> Result<f64> {
    check_rho(rho)?;
    Ok(4.0 / (1.0 + rho).sqrt() * elliptic_k(rho / (2.0 * (1.0 + rho)))?)
}

/// Terms of the expansion about `ω² = 1 + ρ`:
/// `2π/√(1+ρ) · C(−1/2, n)² κⁿ`.
pub fn duffing_nayfeh_terms(rho: f64, order: usize) -> Result<Vec<f64>> {
    check_rho(rho)?;
    check_order(order)?;
    let kappa = rho / (2.0 * (1.0 + rho));
    let prefactor = 2.0 * PI / (1.0 + rho).sqrt();
    Ok((0..=order).map(|n| prefactor * half_binomial(n).powi(2) * kappa.powi(n as i32)).collect())
}

/// Partial sum of the expansion about `ω² = 1 + ρ`; diverges for
/// `−1 < ρ < −2/3` where `|κ| > 1`.
pub fn duffing_nayfeh_series(rho: f64, order: usize) -> Result<f64> {
    Ok(duffing_nayfeh_terms(rho, order)?.into_iter().collect::<KahanSum>().value())
}

/// Strong-coupling frequency coefficient through order `N`:
/// `b₀⁽ᴺ⁾ = √3 / (2 Σ_{j≤N} (−1/9)ʲ C(−1/2,j) C(−1/2,2j))`.
pub fn duffing_b0(order: usize) -> Result<f64> {
    check_order(order)?;
    let sum: KahanSum =
        (0..=order).map(|j| (-1.0f64 / 9.0).powi(j as i32) * half_binomial(j) * half_binomial(2 * j)).collect();
    Ok(3f64.sqrt() / (2.0 * sum.value()))
}

/// `b₀ = lim 2π/(√μ T)` at unit amplitude, from quadrature of the pure
/// quartic period `√μ T = 2√2 ∫₀^π dθ/√(1 + cos²θ)`.
pub fn duffing_b0_exact() -> Result<f64> {
    let q = integrate(|t: f64| 1.0 / (1.0 + t.cos().powi(2)).sqrt(), 0.0, PI, default_abs_tol())?;
    Ok(2.0 * PI / (2.0 * 2f64.sqrt() * q.value))
}

/// Frequency making `x₀ = A cos(ωt + φ)` satisfy the virial relation
/// `⟨ẋ²⟩ = ⟨x²⟩ + μ⟨x⁴⟩`, and its ratio to the first-order PMS frequency.
///
/// Time averages over one period equal θ-averages of powers of `cos θ`.
pub fn virial_omega_check(rho: f64) -> Result<(f64, f64)> {
    check_rho(rho)?;
    let mean_cos2 = cos_moment(2) / PI;
    let mean_cos4 = cos_moment(4) / PI;
    let mean_sin2 = 1.0 - mean_cos2;
    // Unit amplitude, μ = ρ: ω²⟨sin²⟩ = ⟨cos²⟩ + ρ⟨cos⁴⟩
    let omega = ((mean_cos2 + rho * mean_cos4) / mean_sin2).sqrt();
    Ok((omega, omega / duffing_omega_pms(rho)))
}
