//! Perihelion precession in the Schwarzschild field as a cubic oscillator.
//!
//! With `z = 1/r` the advance per orbit is
//! `Δφ = 2 ∫₀^π dθ / √R(θ) − 2π`, `R(θ) = 1 − 2GM(z(θ) + z₋ + z₊)`,
//! after the cosine substitution between `z₋ = 1/r₊` and `z₊ = 1/r₋`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::{default_abs_tol, find_root, integrate};
use crate::oscillators::single_harmonic_coefficient;
use crate::series::{check_order, KahanSum};
use crate::trig::TrigPolynomial;

pub use crate::constants::ARCSEC_PER_RADIAN;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrbitParams {
    /// `(G/c²)·M`, a length.
    pub gm: f64,
    /// Semimajor axis.
    pub a: f64,
    pub epsilon: f64,
}

impl OrbitParams {
    pub fn new(gm: f64, a: f64, epsilon: f64) -> Result<Self> {
        if !(gm >= 0.0 && gm.is_finite()) {
            return Err(Error::Domain(format!("GM must be non-negative, got {gm}")));
        }
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::Domain(format!("semimajor axis must be positive, got {a}")));
        }
        if !(0.0..1.0).contains(&epsilon) {
            return Err(Error::Domain(format!("eccentricity must lie in [0, 1), got {epsilon}")));
        }
        Ok(Self { gm, a, epsilon })
    }

    /// `1/r₊`.
    pub fn z_minus(&self) -> f64 {
        1.0 / (self.a * (1.0 + self.epsilon))
    }

    /// `1/r₋`.
    pub fn z_plus(&self) -> f64 {
        1.0 / (self.a * (1.0 - self.epsilon))
    }

    /// Semilatus rectum, `2/(z₊ + z₋) = a(1 − ε²)`.
    pub fn semilatus(&self) -> f64 {
        self.a * (1.0 - self.epsilon * self.epsilon)
    }

    pub fn factor(&self) -> TrigPolynomial {
        let (zm, zp) = (self.z_minus(), self.z_plus());
        let c = 0.5 * (zp + zm);
        let h = 0.5 * (zp - zm);
        TrigPolynomial::new(vec![1.0 - 6.0 * self.gm * c, -2.0 * self.gm * h])
    }

    /// `ω = √(1 − 6GM/L)`.
    pub fn omega(&self) -> Result<f64> {
        let l = self.semilatus();
        let w2 = 1.0 - 6.0 * self.gm / l;
        if w2 > 0.0 {
            Ok(w2.sqrt())
        } else {
            Err(Error::BeyondCritical { six_gm: 6.0 * self.gm, semilatus: l })
        }
    }

    /// `ξ = GM(z₊ − z₋)/(3GM(z₊ + z₋) − 1)`.
    pub fn xi(&self) -> f64 {
        let (zm, zp) = (self.z_minus(), self.z_plus());
        self.gm * (zp - zm) / (3.0 * self.gm * (zp + zm) - 1.0)
    }
}

/// `2π[(1/ω) Σ_{j ≤ N/2} (−1)ʲ C(−1/2,j) C(−1/2,2j) ξ^{2j} − 1]`, `N` being the
/// Δ-order.
pub fn precession_series(orbit: &OrbitParams, order: usize) -> Result<f64> {
    check_order(order)?;
    let omega = orbit.omega()?;
    let xi2 = orbit.xi().powi(2);
    // j ≥ 1 part kept apart from the leading 1/ω − 1 to avoid cancellation
    let tail: KahanSum = (1..=order / 2).map(|j| single_harmonic_coefficient(j) * xi2.powi(j as i32)).collect();
    let leading = (1.0 - omega * omega) / (omega * (1.0 + omega));
    Ok(2.0 * PI * (leading + tail.value() / omega))
}

/// Quadrature of `2 ∫₀^π (1/√R − 1) dθ`.
pub fn precession_exact(orbit: &OrbitParams) -> Result<f64> {
    let (zm, zp) = (orbit.z_minus(), orbit.z_plus());
    let gm = orbit.gm;
    if !(1.0 - 2.0 * gm * (2.0 * zp + zm) > 0.0) {
        return Err(Error::ThirdRootInsideInterval {
            a: orbit.a,
            critical: critical_semimajor_axis(gm, orbit.epsilon)?,
        });
    }
    let c = 0.5 * (zp + zm);
    let h = 0.5 * (zp - zm);
    let q = integrate(
        |t: f64| {
            let one_minus_r = 2.0 * gm * (3.0 * c + h * t.cos());
            let r = 1.0 - one_minus_r;
            let s = r.sqrt();
            one_minus_r / (s * (1.0 + s))
        },
        0.0,
        PI,
        default_abs_tol(),
    )?;
    Ok(2.0 * q.value)
}

/// `a_c = 2GM[2/(1 − ε) + 1/(1 + ε)]`, where the third root reaches `z₊`.
pub fn critical_semimajor_axis_closed_form(gm: f64, epsilon: f64) -> f64 {
    2.0 * gm * (2.0 / (1.0 - epsilon) + 1.0 / (1.0 + epsilon))
}

/// Smallest `a` keeping the third root `1/(2GM) − z₋ − z₊` above `z₊`,
/// located by bracketing.
pub fn critical_semimajor_axis(gm: f64, epsilon: f64) -> Result<f64> {
    if !(gm > 0.0 && gm.is_finite()) {
        return Err(Error::Domain(format!("GM must be positive, got {gm}")));
    }
    if !(0.0..1.0).contains(&epsilon) {
        return Err(Error::Domain(format!("eccentricity must lie in [0, 1), got {epsilon}")));
    }
    let g = |a: f64| {
        let zm = 1.0 / (a * (1.0 + epsilon));
        let zp = 1.0 / (a * (1.0 - epsilon));
        1.0 / (2.0 * gm) - zm - zp - zp
    };
    let mut lo = gm;
    let mut hi = 2.0 * gm;
    while g(hi) <= 0.0 {
        lo = hi;
        hi *= 2.0;
        if !hi.is_finite() {
            return Err(Error::NoConvergence(0));
        }
    }
    find_root(g, lo, hi, 1e-12 * hi)
}

pub fn to_arcsec(radians: f64) -> f64 {
    radians * ARCSEC_PER_RADIAN
}
