//! Concrete potentials: turning points, factor functions and periods.
//!
//! All models use unit mass, so the period is
//!
//! ```text
//! T = √2 ∫_{x₋}^{x₊} dx / √(E − V(x)) = √2 · I
//! ```
//!
//! and every family reduces to an [`IntegrandSpec`] for the series engine.

mod cubic;
mod duffing;
mod even;
mod pendulum;
mod sextic;

pub use cubic::{
    cubic_exact_period, cubic_parameters, cubic_series, quartic_cubic_pms, quartic_cubic_turning_points,
    CubicParameters, QuarticCubicPms,
};
pub(crate) use duffing::single_harmonic_coefficient;
pub use duffing::{
    duffing_b0, duffing_b0_exact, duffing_exact_period, duffing_nayfeh_series, duffing_nayfeh_terms, duffing_omega_pms,
    duffing_period_series, duffing_period_terms, virial_omega_check,
};
pub use even::{
    even_power_c0_exact, even_power_c0_series, even_power_exact_period, even_power_factor, even_power_kappa_balanced,
    even_power_kappa_first_order, even_power_series, even_power_strong_factor, PeriodEstimate,
};
pub use pendulum::{
    pendulum_approx, pendulum_exact, pendulum_quartic_leading, pendulum_sextic_leading, pendulum_sextic_omega,
    pendulum_sextic_omega_as_printed, pendulum_sextic_second, pendulum_sextic_second_as_printed,
};
pub use sextic::{
    sextic_c0_exact, sextic_c0_series, sextic_exact_period, sextic_j, sextic_omega_pms, sextic_series, sextic_t4,
    sextic_t4_as_printed, sextic_t4_strong_coupling, sextic_wl_period, sextic_wl_strong_coupling, SEXTIC_T4_CONSTANT,
    SEXTIC_T4_PRINTED_CONSTANT,
};

use std::f64::consts::{PI, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::{default_abs_tol, integrate};
use crate::series::{expand, pms_first_order, IntegrandSpec};
use crate::trig::TrigPolynomial;

/// A one-dimensional potential and its excitation (amplitude or energy).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum OscillatorModel {
    /// `V = x²/2 + μx⁴/4`.
    Duffing { mu: f64, amplitude: f64 },
    /// `V = x²/2 + μx⁶/6`.
    Sextic { mu: f64, amplitude: f64 },
    /// `V = x²/2 + μx^{2K}/(2K)`.
    EvenPower { k: u32, mu: f64, amplitude: f64 },
    /// `V = x²/2 + μx³/3`, given by its turning points.
    Cubic { x_minus: f64, x_plus: f64 },
    /// `V = a₂x² + a₃x³ + a₄x⁴` at energy `E`.
    QuarticCubic { a2: f64, a3: f64, a4: f64, energy: f64 },
    /// `1 − cos φ` truncated at `φ^order`, released from rest at `amplitude`.
    PendulumTaylor { order: u32, amplitude: f64 },
}

impl OscillatorModel {
    /// Unit-amplitude Duffing oscillator at anharmonicity `ρ`.
    pub fn duffing(rho: f64) -> Self {
        Self::Duffing { mu: rho, amplitude: 1.0 }
    }

    pub fn sextic(rho: f64) -> Self {
        Self::Sextic { mu: rho, amplitude: 1.0 }
    }

    pub fn even_power(k: u32, rho: f64) -> Self {
        Self::EvenPower { k, mu: rho, amplitude: 1.0 }
    }

    /// Exponent `K` and `(μ, A)` for the even two-term families.
    fn even_parts(&self) -> Option<(u32, f64, f64)> {
        match *self {
            Self::Duffing { mu, amplitude } => Some((2, mu, amplitude)),
            Self::Sextic { mu, amplitude } => Some((3, mu, amplitude)),
            Self::EvenPower { k, mu, amplitude } => Some((k, mu, amplitude)),
            _ => None,
        }
    }

    /// `ρ = μA^{2K−2}` for the even two-term families.
    pub fn rho(&self) -> Option<f64> {
        self.even_parts().map(|(k, mu, a)| mu * a.powi(2 * k as i32 - 2))
    }

    /// Polynomial coefficients of `V(x)` in powers of `x`.
    pub fn potential(&self) -> Result<Vec<f64>> {
        if let Some((k, mu, _)) = self.even_parts() {
            let mut v = vec![0.0; 2 * k as usize + 1];
            v[2] = 0.5;
            v[2 * k as usize] += mu / (2 * k) as f64;
            return Ok(v);
        }
        match *self {
            Self::Cubic { x_minus, x_plus } => {
                let p = cubic_parameters(x_minus, x_plus)?;
                Ok(vec![0.0, 0.0, 0.5, p.mu / 3.0])
            }
            Self::QuarticCubic { a2, a3, a4, .. } => Ok(vec![0.0, 0.0, a2, a3, a4]),
            Self::PendulumTaylor { order, .. } => pendulum_taylor_coeffs(order),
            _ => unreachable!("even families handled above"),
        }
    }
}

pub(crate) fn pendulum_taylor_coeffs(order: u32) -> Result<Vec<f64>> {
    let full = [0.0, 0.0, 0.5, 0.0, -1.0 / 24.0, 0.0, 1.0 / 720.0];
    match order {
        2 | 4 | 6 => Ok(full[..=order as usize].to_vec()),
        _ => Err(Error::Domain(format!("pendulum Taylor order must be 2, 4 or 6, got {order}"))),
    }
}

/// Evaluates `Σ v_k x^k`.
pub fn potential_value(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// Turning points and factor function `R(θ)` after the cosine substitution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TurningPoints {
    pub x_minus: f64,
    pub x_plus: f64,
    pub energy: f64,
    pub factor: TrigPolynomial,
    /// `μA^{2K−2}` where the family has one.
    pub rho: Option<f64>,
}

impl TurningPoints {
    /// Integrand at the first-order PMS frequency.
    pub fn pms_spec(&self) -> Result<IntegrandSpec> {
        let omega = pms_first_order(&self.factor)?;
        IntegrandSpec::new(self.x_minus, self.x_plus, self.factor.clone(), omega)
    }
}

/// Factor of an even polynomial potential `V = Σ v_{2k} x^{2k}` at
/// `x = A cos θ`: `R = Σ_k v_{2k} A^{2k−2} Σ_{j<k} cos^{2j} θ`.
pub(crate) fn even_polynomial_factor(coeffs: &[f64], amplitude: f64) -> TrigPolynomial {
    let degree = coeffs.len() - 1;
    let mut r = vec![0.0; degree.saturating_sub(1)];
    for k in 1..=degree / 2 {
        let v = coeffs[2 * k];
        if v == 0.0 {
            continue;
        }
        let scale = v * amplitude.powi(2 * k as i32 - 2);
        for j in 0..k {
            r[2 * j] += scale;
        }
    }
    TrigPolynomial::new(r)
}

/// Turning points and factor function for any model.
pub fn turning_points(model: &OscillatorModel) -> Result<TurningPoints> {
    if let Some((k, _, amplitude)) = model.even_parts() {
        if k < 2 {
            return Err(Error::Domain(format!("even power exponent K must be at least 2, got {k}")));
        }
        if !(amplitude > 0.0) {
            return Err(Error::Domain(format!("amplitude must be positive, got {amplitude}")));
        }
        let rho = model.rho().expect("even family");
        if !(rho > -1.0) {
            return Err(Error::NoPeriodicMotion(format!("rho must exceed -1, got {rho}")));
        }
        let v = model.potential()?;
        return Ok(TurningPoints {
            x_minus: -amplitude,
            x_plus: amplitude,
            energy: potential_value(&v, amplitude),
            factor: even_power_factor(k, rho),
            rho: Some(rho),
        });
    }
    match *model {
        OscillatorModel::Cubic { x_minus, x_plus } => {
            let p = cubic_parameters(x_minus, x_plus)?;
            p.check_below_barrier()?;
            Ok(TurningPoints { x_minus, x_plus, energy: p.energy, factor: p.factor(), rho: None })
        }
        OscillatorModel::QuarticCubic { a2, a3, a4, energy } => {
            let (x_minus, x_plus) = quartic_cubic_turning_points(a2, a3, a4, energy)?;
            Ok(TurningPoints {
                x_minus,
                x_plus,
                energy,
                factor: cubic::quartic_cubic_factor(a2, a3, a4, x_minus, x_plus),
                rho: None,
            })
        }
        OscillatorModel::PendulumTaylor { order, amplitude } => {
            if !(amplitude > 0.0 && amplitude < PI) {
                return Err(Error::Domain(format!("pendulum amplitude must lie in (0, pi), got {amplitude}")));
            }
            let v = pendulum_taylor_coeffs(order)?;
            let factor = even_polynomial_factor(&v, amplitude);
            if !factor.is_positive_on_grid() {
                return Err(Error::NoPeriodicMotion(format!(
                    "the order-{order} Taylor potential has no well reaching amplitude {amplitude}"
                )));
            }
            Ok(TurningPoints {
                x_minus: -amplitude,
                x_plus: amplitude,
                energy: potential_value(&v, amplitude),
                factor,
                rho: (order == 4).then(|| -amplitude * amplitude / 6.0),
            })
        }
        _ => unreachable!("even families handled above"),
    }
}

/// `√2 · S_N` at the first-order PMS frequency (`N` is the Δ-order).
pub fn period_series(model: &OscillatorModel, order: usize) -> Result<f64> {
    let tp = turning_points(model)?;
    Ok(SQRT_2 * expand(&tp.pms_spec()?, order)?.sum())
}

/// `T = √2 ∫₀^π dθ / √R(θ)` by adaptive quadrature.
pub fn exact_period(model: &OscillatorModel) -> Result<f64> {
    let tp = turning_points(model)?;
    exact_from_factor(&tp.factor)
}

pub(crate) fn exact_from_factor(factor: &TrigPolynomial) -> Result<f64> {
    let q = integrate(|t| 1.0 / factor.eval(t).sqrt(), 0.0, PI, default_abs_tol())?;
    Ok(SQRT_2 * q.value)
}
