//! The delta-expansion of `I = ∫ dx/√Q(x)` about a harmonic reference.
//!
//! With `Q(x) = R(x)(x − x₋)(x₊ − x)` and `Q₀(x) = ω²(x − x₋)(x₊ − x)`,
//! the substitution `x = (x₊ + x₋)/2 + (x₊ − x₋)/2 · cos θ` turns the
//! integral into
//!
//! ```text
//! I = (1/ω) ∫₀^π dθ / √(1 + Δ(θ)),      Δ = (R − ω²)/ω²
//! ```
//!
//! and the binomial series in `Δ` has terms
//!
//! ```text
//! I_n = (1/ω) · C(−1/2, n) · ∫₀^π Δⁿ dθ
//! ```
//!
//! Every `∫ Δⁿ` is evaluated exactly (no quadrature). The reference
//! frequency `ω` is free; the principle of minimal sensitivity picks it so
//! that `∂S_N/∂ω = −(2N + 1) I_N / ω` vanishes.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::find_root;
use crate::trig::{CosineSeries, TrigPolynomial};

/// Highest expansion order accepted anywhere in the crate.
pub const MAX_ORDER: usize = 64;

pub(crate) fn check_order(order: usize) -> Result<()> {
    if order > MAX_ORDER {
        Err(Error::OrderTooHigh { order, max: MAX_ORDER })
    } else {
        Ok(())
    }
}

/// Generalized binomial coefficient `C(−1/2, n) = (−1)ⁿ C(2n, n)/4ⁿ`.
pub fn half_binomial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, j| acc * (-0.5 - j as f64 + 1.0) / j as f64)
}

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    compensation: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl FromIterator<f64> for KahanSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Self::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// Turning points, factor function `R(θ)` and reference frequency `ω`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntegrandSpec {
    x_minus: f64,
    x_plus: f64,
    factor: TrigPolynomial,
    omega: f64,
}

impl IntegrandSpec {
    pub fn new(x_minus: f64, x_plus: f64, factor: TrigPolynomial, omega: f64) -> Result<Self> {
        if !(x_minus < x_plus) {
            return Err(Error::DegenerateInterval { x_minus, x_plus });
        }
        if !(omega > 0.0 && omega.is_finite()) {
            return Err(Error::InvalidOmega(omega));
        }
        Ok(Self { x_minus, x_plus, factor, omega })
    }

    /// Spec on the canonical interval `[−1, 1]`, for when only `R(θ)`
    /// matters.
    pub fn canonical(factor: TrigPolynomial, omega: f64) -> Result<Self> {
        Self::new(-1.0, 1.0, factor, omega)
    }

    pub fn with_omega(&self, omega: f64) -> Result<Self> {
        Self::new(self.x_minus, self.x_plus, self.factor.clone(), omega)
    }

    pub fn x_minus(&self) -> f64 {
        self.x_minus
    }

    pub fn x_plus(&self) -> f64 {
        self.x_plus
    }

    pub fn factor(&self) -> &TrigPolynomial {
        &self.factor
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// True when `R > 0` on the dense θ-grid.
    pub fn is_regular(&self) -> bool {
        self.factor.is_positive_on_grid()
    }

    /// `x(θ)` for the cosine substitution.
    pub fn x_of(&self, theta: f64) -> f64 {
        0.5 * (self.x_plus + self.x_minus) + 0.5 * (self.x_plus - self.x_minus) * theta.cos()
    }
}

/// Terms `I_0..I_N` and their compensated partial sums at a fixed `ω`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesExpansion {
    pub omega: f64,
    pub terms: Vec<f64>,
    pub partial_sums: Vec<f64>,
}

impl SeriesExpansion {
    pub fn order(&self) -> usize {
        self.terms.len() - 1
    }

    /// `S_N`, the highest partial sum.
    pub fn sum(&self) -> f64 {
        *self.partial_sums.last().expect("at least one term")
    }
}

/// `Δ = (R − ω²)/ω²`.
pub fn delta_of(spec: &IntegrandSpec) -> TrigPolynomial {
    let w2 = spec.omega * spec.omega;
    &spec.factor.scale(1.0 / w2) - &TrigPolynomial::constant(1.0)
}

/// Successive powers `Δ⁰, Δ¹, …` in the harmonic basis, yielding
/// `∫₀^π Δⁿ dθ`.
fn delta_power_integrals(delta: &TrigPolynomial, order: usize) -> Vec<f64> {
    let delta = delta.to_harmonics();
    let mut power = CosineSeries::one();
    let mut out = Vec::with_capacity(order + 1);
    out.push(power.integral());
    for _ in 0..order {
        power = power.multiply(&delta);
        out.push(power.integral());
    }
    out
}

/// `I_n = C(−1/2, n)/ω · ∫₀^π Δⁿ dθ`, evaluated exactly.
pub fn term(spec: &IntegrandSpec, n: usize) -> Result<f64> {
    check_order(n)?;
    if n == 0 {
        return Ok(PI / spec.omega);
    }
    let moments = delta_power_integrals(&delta_of(spec), n);
    Ok(half_binomial(n) / spec.omega * moments[n])
}

/// All terms through order `N` with compensated partial sums.
pub fn expand(spec: &IntegrandSpec, order: usize) -> Result<SeriesExpansion> {
    check_order(order)?;
    let moments = delta_power_integrals(&delta_of(spec), order);
    let mut terms = Vec::with_capacity(order + 1);
    let mut partial_sums = Vec::with_capacity(order + 1);
    let mut acc = KahanSum::new();
    for (n, m) in moments.into_iter().enumerate() {
        let t = if n == 0 { PI / spec.omega } else { half_binomial(n) / spec.omega * m };
        acc.add(t);
        terms.push(t);
        partial_sums.push(acc.value());
    }
    Ok(SeriesExpansion { omega: spec.omega, terms, partial_sums })
}

/// Analytic `∂S_N/∂ω = −(2N + 1) I_N / ω`.
pub fn pms_derivative_check(spec: &IntegrandSpec, order: usize) -> Result<f64> {
    Ok(-((2 * order + 1) as f64) * term(spec, order)? / spec.omega)
}

/// First-order PMS frequency: `I₁ = 0` gives `ω²` equal to the θ-average
/// of `R`.
pub fn pms_first_order(factor: &TrigPolynomial) -> Result<f64> {
    let mean = factor.mean();
    if !(mean > 0.0) {
        return Err(Error::NonPositiveMean(mean));
    }
    Ok(mean.sqrt())
}

/// Solves `I_N(ω) = 0` for odd `N` on a bracket.
///
/// `family` maps a trial `ω` to the integrand. The root is refined to
/// adjacent floats, which puts `|I_N|` far below `1e−12·π/ω` for the
/// simple roots met in practice.
pub fn pms_solve<F>(family: F, order: usize, bracket: (f64, f64)) -> Result<f64>
where
    F: Fn(f64) -> Result<IntegrandSpec>,
{
    check_order(order)?;
    if order.is_multiple_of(2) {
        return Err(Error::EvenPmsOrder(order));
    }
    // Scaled by ω/π so the residual is dimensionless.
    let residual = |omega: f64| -> f64 {
        family(omega).and_then(|spec| term(&spec, order)).map(|t| t * omega / PI).unwrap_or(f64::NAN)
    };
    find_root(residual, bracket.0, bracket.1, 0.0)
}

/// Outcome of [`kappa_balance`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BalancedKappa {
    pub kappa: f64,
    pub min_delta: f64,
    pub max_delta: f64,
    /// Every κ in the bracket already balances (e.g. `Δ ∝ cos 2θ`).
    pub degenerate: bool,
}

impl BalancedKappa {
    pub fn max_abs_delta(&self) -> f64 {
        self.min_delta.abs().max(self.max_delta.abs())
    }
}

/// Finds `κ_b` with `max_θ Δ = −min_θ Δ`.
pub fn kappa_balance<F>(family: F, bracket: (f64, f64)) -> Result<BalancedKappa>
where
    F: Fn(f64) -> TrigPolynomial,
{
    const DEGENERATE_TOL: f64 = 1e-12;

    let imbalance = |kappa: f64| {
        let (lo, hi) = family(kappa).extrema();
        (lo + hi, lo.abs().max(hi.abs()))
    };
    let report = |kappa: f64, degenerate: bool| {
        let (min_delta, max_delta) = family(kappa).extrema();
        BalancedKappa { kappa, min_delta, max_delta, degenerate }
    };

    let (lo, hi) = bracket;
    let probes = [lo, 0.5 * (lo + hi), hi];
    if probes.iter().all(|&k| {
        let (g, scale) = imbalance(k);
        g.abs() <= DEGENERATE_TOL * scale.max(f64::MIN_POSITIVE)
    }) {
        return Ok(report(lo, true));
    }
    let kappa = find_root(|k| imbalance(k).0, lo, hi, 1e-14)?;
    Ok(report(kappa, false))
}
