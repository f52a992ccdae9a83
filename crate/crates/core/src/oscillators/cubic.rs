//! Quadratic-cubic oscillator `V = x²/2 + μx³/3` and the four-term
//! potential `V = a₂x² + a₃x³ + a₄x⁴`.
//!
//! For the cubic, `E − V = (x − x₋)(x₊ − x)(b₀ + b₁x)` and at the first-order
//! PMS frequency `Δ = ξ cos θ`, so the period series has the Duffing
//! coefficients with `ξ` in place of the Duffing ratio.

use std::f64::consts::{PI, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::{default_abs_tol, find_root, integrate};
use crate::series::{check_order, expand, pms_first_order, IntegrandSpec, KahanSum};
use crate::trig::TrigPolynomial;

use super::duffing::single_harmonic_coefficient;

/// Everything implied by a pair of cubic turning points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CubicParameters {
    pub x_minus: f64,
    pub x_plus: f64,
    pub mu: f64,
    pub energy: f64,
    /// Height `1/(6μ²)` of the local maximum; infinite for `μ = 0`.
    pub barrier: f64,
    pub b0: f64,
    pub b1: f64,
    pub omega: f64,
    pub xi: f64,
}

impl CubicParameters {
    pub fn check_below_barrier(&self) -> Result<()> {
        if self.energy < self.barrier {
            Ok(())
        } else {
            Err(Error::BarrierCrossed { energy: self.energy, barrier: self.barrier })
        }
    }

    /// `R(θ) = b₀ + b₁ x(θ)`.
    pub fn factor(&self) -> TrigPolynomial {
        let center = 0.5 * (self.x_plus + self.x_minus);
        let half = 0.5 * (self.x_plus - self.x_minus);
        TrigPolynomial::from_polynomial_in_x(&[self.b0, self.b1], center, half)
    }
}

/// `μ`, `E`, `b₀`, `b₁`, `ω` and `ξ` from the turning points; no barrier
/// check is made here.
pub fn cubic_parameters(x_minus: f64, x_plus: f64) -> Result<CubicParameters> {
    if !(x_minus < 0.0 && x_plus > 0.0 && x_minus.is_finite() && x_plus.is_finite()) {
        return Err(Error::Domain(format!(
            "cubic turning points must satisfy x_minus < 0 < x_plus, got ({x_minus}, {x_plus})"
        )));
    }
    let (m, p) = (x_minus, x_plus);
    let s = p * p + p * m + m * m;
    let mu = -1.5 * (m + p) / s;
    let energy = 0.5 * p * p + mu * p.powi(3) / 3.0;
    let w2 = -(p * p + 4.0 * p * m + m * m) / (4.0 * s);
    if !(w2 > 0.0) {
        return Err(Error::NoPeriodicMotion(format!("turning points ({m}, {p}) give a non-positive mean factor {w2}")));
    }
    Ok(CubicParameters {
        x_minus,
        x_plus,
        mu,
        energy,
        barrier: if mu == 0.0 { f64::INFINITY } else { 1.0 / (6.0 * mu * mu) },
        b0: -p * m / (2.0 * s),
        b1: mu / 3.0,
        omega: w2.sqrt(),
        xi: (p * p - m * m) / (p * p + 4.0 * p * m + m * m),
    })
}

/// `√2π/ω Σ_{j ≤ N/2} (−1)ʲ C(−1/2,j) C(−1/2,2j) ξ^{2j}`; `N` counts powers of
/// Δ so odd orders repeat the preceding even one.
pub fn cubic_series(x_minus: f64, x_plus: f64, order: usize) -> Result<f64> {
    check_order(order)?;
    let p = cubic_parameters(x_minus, x_plus)?;
    p.check_below_barrier()?;
    let xi2 = p.xi * p.xi;
    let sum: KahanSum = (0..=order / 2).map(|j| single_harmonic_coefficient(j) * xi2.powi(j as i32)).collect();
    Ok(SQRT_2 * PI / p.omega * sum.value())
}

/// `T = (√2/ω) ∫₀^π dθ / √(1 + ξ cos θ)` by quadrature.
pub fn cubic_exact_period(x_minus: f64, x_plus: f64) -> Result<f64> {
    let p = cubic_parameters(x_minus, x_plus)?;
    p.check_below_barrier()?;
    let xi = p.xi;
    let q = integrate(|t: f64| 1.0 / (1.0 + xi * t.cos()).sqrt(), 0.0, PI, default_abs_tol())?;
    Ok(SQRT_2 / p.omega * q.value)
}

const MARCH_STEPS: usize = 4096;

fn quartic(a2: f64, a3: f64, a4: f64, x: f64) -> f64 {
    x * x * (a2 + x * (a3 + x * a4))
}

/// Walks away from the origin until `V` reaches `E`; a local maximum below
/// `E` on the way means the particle escapes.
fn march(a2: f64, a3: f64, a4: f64, energy: f64, dir: f64) -> Result<f64> {
    let v = |x: f64| quartic(a2, a3, a4, x);
    let mut step = dir * (energy / a2).sqrt() / 64.0;
    let mut prev = 0.0;
    let mut v_prev = 0.0;
    for i in 0..MARCH_STEPS {
        let x = prev + step;
        let vx = v(x);
        if vx >= energy {
            return find_root(|y| v(y) - energy, prev.min(x), prev.max(x), 0.0);
        }
        if vx <= v_prev {
            return Err(Error::NoPeriodicMotion(format!("energy {energy} exceeds the barrier near x = {prev}")));
        }
        prev = x;
        v_prev = vx;
        if i % 64 == 63 {
            step *= 2.0;
        }
    }
    Err(Error::NoPeriodicMotion(format!("no turning point found for energy {energy}")))
}

/// Turning points of `a₂x² + a₃x³ + a₄x⁴ = E` around the well at the origin.
pub fn quartic_cubic_turning_points(a2: f64, a3: f64, a4: f64, energy: f64) -> Result<(f64, f64)> {
    if !(a2 > 0.0) {
        return Err(Error::Domain(format!("a2 must be positive for a well at the origin, got {a2}")));
    }
    if !(energy > 0.0 && energy.is_finite()) {
        return Err(Error::Domain(format!("energy must be positive, got {energy}")));
    }
    Ok((march(a2, a3, a4, energy, -1.0)?, march(a2, a3, a4, energy, 1.0)?))
}

/// `(b₀, b₁, b₂)` with `E − V = (x − x₋)(x₊ − x)(b₀ + b₁x + b₂x²)`.
fn quartic_cubic_b(a2: f64, a3: f64, a4: f64, x_minus: f64, x_plus: f64) -> (f64, f64, f64) {
    let s = x_minus + x_plus;
    let sq = x_plus * x_plus + x_plus * x_minus + x_minus * x_minus;
    (a2 + a3 * s + a4 * sq, a3 + a4 * s, a4)
}

pub(crate) fn quartic_cubic_factor(a2: f64, a3: f64, a4: f64, x_minus: f64, x_plus: f64) -> TrigPolynomial {
    let (b0, b1, b2) = quartic_cubic_b(a2, a3, a4, x_minus, x_plus);
    TrigPolynomial::from_polynomial_in_x(&[b0, b1, b2], 0.5 * (x_plus + x_minus), 0.5 * (x_plus - x_minus))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuarticCubicPms {
    pub omega: f64,
    /// `√2π/ω`.
    pub t0: f64,
    /// `√2 (I₀ + I₂)`.
    pub t2: f64,
}

/// First-order PMS frequency and the zeroth and second order periods.
pub fn quartic_cubic_pms(a2: f64, a3: f64, a4: f64, x_minus: f64, x_plus: f64) -> Result<QuarticCubicPms> {
    if !(x_minus < x_plus) {
        return Err(Error::DegenerateInterval { x_minus, x_plus });
    }
    let (b0, b1, b2) = quartic_cubic_b(a2, a3, a4, x_minus, x_plus);
    // the linear coefficient of the factorization vanishes only when the
    // pair are actually roots of E − V for one E
    let s = x_minus + x_plus;
    let p = x_minus * x_plus;
    let mismatch = b0 * s - b1 * p;
    if mismatch.abs() > 1e-9 * (b0 * s).abs().max((b1 * p).abs()).max(1e-300) {
        return Err(Error::NoPeriodicMotion(format!(
            "({x_minus}, {x_plus}) are not turning points of one energy level"
        )));
    }
    let w2 = b0 + 0.5 * b1 * s + b2 * (3.0 * x_minus * x_minus + 2.0 * x_plus * x_minus + 3.0 * x_plus * x_plus) / 8.0;
    if !(w2 > 0.0) {
        return Err(Error::NoPeriodicMotion(format!("mean factor {w2} is not positive")));
    }
    let factor = quartic_cubic_factor(a2, a3, a4, x_minus, x_plus);
    if !factor.is_positive_on_grid() {
        return Err(Error::NoPeriodicMotion("factor function changes sign on [0, pi]".into()));
    }
    let omega = w2.sqrt();
    let spec = IntegrandSpec::new(x_minus, x_plus, factor, omega)?;
    let t2 = SQRT_2 * expand(&spec, 2)?.sum();
    debug_assert!((pms_first_order(spec.factor())? - omega).abs() <= 1e-12 * omega);
    Ok(QuarticCubicPms { omega, t0: SQRT_2 * PI / omega, t2 })
}
