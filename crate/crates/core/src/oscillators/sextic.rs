//! Quadratic-sextic oscillator `V = x²/2 + μx⁶/6`, `ρ = μA⁴`.
//!
//! At the first-order PMS frequency `ω = √(5ρ+8)/4` the deviation is
//! `Δ = ε (8 cos 2θ + cos 4θ)` with `ε = ρ/(3(5ρ+8))`, and the same `ω` is
//! used at every order.

use std::f64::consts::{PI, SQRT_2};

use crate::error::{Error, Result};
use crate::oracle::{default_abs_tol, integrate};
use crate::series::{check_order, half_binomial, KahanSum};

/// Constant term of the fourth-order period numerator that satisfies the
/// harmonic limit `T⁽⁴⁾(0) = 2π`.
pub const SEXTIC_T4_CONSTANT: f64 = 37_748_736.0;

/// Constant term as it is usually quoted, one digit short; kept for
/// comparison only.
pub const SEXTIC_T4_PRINTED_CONSTANT: f64 = 3_774_873.0;

fn check_rho(rho: f64) -> Result<()> {
    if rho > -1.0 && rho.is_finite() {
        Ok(())
    } else {
        Err(Error::NoPeriodicMotion(format!("rho must exceed -1, got {rho}")))
    }
}

pub fn sextic_omega_pms(rho: f64) -> f64 {
    (5.0 * rho + 8.0).sqrt() / 4.0
}

/// Linearized harmonic-balance period
/// `24π / √(80 + 50ρ + √(4096 + 5120ρ + 925ρ²))`, a comparator.
pub fn sextic_wl_period(rho: f64) -> Result<f64> {
    check_rho(rho)?;
    Ok(24.0 * PI / (80.0 + 50.0 * rho + (4096.0 + 5120.0 * rho + 925.0 * rho * rho).sqrt()).sqrt())
}

/// `lim √ρ T^{WL} = 24π/√(50 + √925)`.
pub fn sextic_wl_strong_coupling() -> f64 {
    24.0 * PI / (50.0 + 925f64.sqrt()).sqrt()
}

fn t4_with_constant(rho: f64, constant: f64) -> f64 {
    let numerator = (((6_097_185.0 * rho + 37_821_440.0) * rho + 89_272_320.0) * rho + 94_371_840.0) * rho + constant;
    SQRT_2 * PI * numerator / (2304.0 * (5.0 * rho + 8.0).powf(4.5))
}

/// Closed-form fourth-order PMS period.
pub fn sextic_t4(rho: f64) -> Result<f64> {
    if !(rho > -1.6) {
        return Err(Error::Domain(format!("rho must exceed -8/5, got {rho}")));
    }
    Ok(t4_with_constant(rho, SEXTIC_T4_CONSTANT))
}

/// The fourth-order formula with the short constant term; it misses the
/// harmonic limit and is only kept to document the discrepancy.
pub fn sextic_t4_as_printed(rho: f64) -> f64 {
    t4_with_constant(rho, SEXTIC_T4_PRINTED_CONSTANT)
}

/// `lim √ρ T⁽⁴⁾ = √2π · 6097185 / (2304 · 5^{9/2})`.
pub fn sextic_t4_strong_coupling() -> f64 {
    SQRT_2 * PI * 6_097_185.0 / (2304.0 * 5f64.powf(4.5))
}

fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (1..=k).fold(1.0, |acc, j| acc * (n - k + j) as f64 / j as f64)
}

/// `𝒥ₙ = Σ_{k₁=0}^{n} Σ_{k₂=0}^{k₁} Σ_{k₃=0}^{n−k₁} 2^{3k₁−n} C(n,k₁) C(k₁,k₂) C(n−k₁,k₃) δ_{k₁, 2n−2k₂−4k₃}`,
/// the average of `(8 cos 2θ + cos 4θ)ⁿ` over `[0, π]`.
pub fn sextic_j(n: usize) -> f64 {
    let mut acc = KahanSum::new();
    for k1 in 0..=n {
        for k2 in 0..=k1 {
            for k3 in 0..=(n - k1) {
                // δ_{k1, 2n − 2k2 − 4k3}
                if (k1 + 2 * k2 + 4 * k3) as i64 != 2 * n as i64 {
                    continue;
                }
                let weight = 2f64.powi(3 * k1 as i32 - n as i32);
                acc.add(weight * binomial(n, k1) * binomial(k1, k2) * binomial(n - k1, k3));
            }
        }
    }
    acc.value()
}

/// Terms `4√2π/√(5ρ+8) · C(−1/2,n) εⁿ 𝒥ₙ` with the first-order PMS
/// frequency at all orders.
fn sextic_terms(prefactor: f64, epsilon: f64, order: usize) -> Vec<f64> {
    (0..=order).map(|n| prefactor * half_binomial(n) * epsilon.powi(n as i32) * sextic_j(n)).collect()
}

/// All-order PMS series through order `N`.
pub fn sextic_series(rho: f64, order: usize) -> Result<f64> {
    check_rho(rho)?;
    check_order(order)?;
    let prefactor = 4.0 * SQRT_2 * PI / (5.0 * rho + 8.0).sqrt();
    let epsilon = rho / (3.0 * (5.0 * rho + 8.0));
    Ok(sextic_terms(prefactor, epsilon, order).into_iter().collect::<KahanSum>().value())
}

/// `c₀⁽ᴺ⁾ = lim √ρ T⁽ᴺ⁾ = 4√2π/√5 · Σ C(−1/2,n) (1/15)ⁿ 𝒥ₙ`.
pub fn sextic_c0_series(order: usize) -> Result<f64> {
    check_order(order)?;
    let prefactor = 4.0 * SQRT_2 * PI / 5f64.sqrt();
    Ok(sextic_terms(prefactor, 1.0 / 15.0, order).into_iter().collect::<KahanSum>().value())
}

/// `T = 2√3/√(ρ+3) ∫₀^π dθ / √(1 + ρ/(ρ+3) (cos²θ + cos⁴θ))`.
pub fn sextic_exact_period(rho: f64) -> Result<f64> {
    check_rho(rho)?;
    let g = rho / (rho + 3.0);
    let q = integrate(
        |t: f64| {
            let c2 = t.cos().powi(2);
            1.0 / (1.0 + g * (c2 + c2 * c2)).sqrt()
        },
        0.0,
        PI,
        default_abs_tol(),
    )?;
    Ok(2.0 * 3f64.sqrt() / (rho + 3.0).sqrt() * q.value)
}

/// `c₀ = lim √ρ T = 2√3 ∫₀^π dθ / √(1 + cos²θ + cos⁴θ)`.
pub fn sextic_c0_exact() -> Result<f64> {
    let q = integrate(
        |t: f64| {
            let c2 = t.cos().powi(2);
            1.0 / (1.0 + c2 + c2 * c2).sqrt()
        },
        0.0,
        PI,
        default_abs_tol(),
    )?;
    Ok(2.0 * 3f64.sqrt() * q.value)
}
