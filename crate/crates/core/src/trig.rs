//! Even trigonometric polynomials on `θ ∈ [0, π]`.
//!
//! After the substitution `x = (x₊ + x₋)/2 + (x₊ − x₋)/2 · cos θ` every
//! polynomial factor `R(x)` becomes a polynomial in `cos θ`. Two bases are
//! kept side by side:
//!
//! * [`TrigPolynomial`]: powers `Σ c_k cos^k θ`, the natural output of the
//!   substitution and the public currency of the crate;
//! * [`CosineSeries`]: harmonics `Σ a_k cos(kθ)`, used for long products
//!   because the power basis cancels catastrophically at high degree
//!   (`cos 2θ = 2cos²θ − 1` already has coefficient sum 3).
//!
//! Both bases integrate exactly over `[0, π]`.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

/// Number of grid points used to bracket extrema on `[0, π]`.
pub const EXTREMA_GRID: usize = 2048;

/// Golden-section tolerance (in θ) used to polish extrema.
pub const EXTREMA_POLISH_TOL: f64 = 1e-12;

/// `∫₀^π cos^k θ dθ`: zero for odd `k`, `π·C(k, k/2)/2^k` for even `k`.
pub fn cos_moment(k: usize) -> f64 {
    if k % 2 == 1 {
        return 0.0;
    }
    // π · Π_{j=1}^{k/2} (2j − 1)/(2j), no large intermediates.
    (1..=k / 2).fold(PI, |acc, j| acc * (2 * j - 1) as f64 / (2 * j) as f64)
}

/// Polynomial in `cos θ` with coefficients `c_0..c_d` of `cos^k θ`.
///
/// The trailing coefficient is nonzero unless the polynomial is the explicit
/// zero polynomial `[0.0]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrigPolynomial {
    coeffs: Vec<f64>,
}

impl TrigPolynomial {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.len() > 1 && coeffs[coeffs.len() - 1] == 0.0 {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![0.0] }
    }

    pub fn constant(value: f64) -> Self {
        Self::new(vec![value])
    }

    /// `cos θ` itself.
    pub fn cos() -> Self {
        Self::new(vec![0.0, 1.0])
    }

    /// Substitutes `x = center + half_width · cos θ` into `Σ p_k x^k`.
    pub fn from_polynomial_in_x(poly: &[f64], center: f64, half_width: f64) -> Self {
        let affine = Self::new(vec![center, half_width]);
        // Horner in x.
        let mut acc = Self::zero();
        for &p in poly.iter().rev() {
            acc = &(&acc * &affine) + &Self::constant(p);
        }
        acc
    }

    /// Converts `Σ a_k cos(kθ)` into the power basis.
    pub fn from_harmonics(harmonics: &[f64]) -> Self {
        CosineSeries::new(harmonics.to_vec()).to_power_basis()
    }

    pub fn to_harmonics(&self) -> CosineSeries {
        CosineSeries::from_power_basis(self)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0.0)
    }

    /// Evaluates at `c = cos θ` (Horner).
    pub fn eval_cos(&self, c: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &k| acc * c + k)
    }

    pub fn eval(&self, theta: f64) -> f64 {
        self.eval_cos(theta.cos())
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * factor).collect())
    }

    /// Exact `∫₀^π p(θ) dθ` from the power moments.
    pub fn integral(&self) -> f64 {
        self.coeffs.iter().enumerate().map(|(k, &c)| c * cos_moment(k)).sum()
    }

    /// Average over `θ ∈ [0, π]`.
    pub fn mean(&self) -> f64 {
        self.integral() / PI
    }

    pub fn powi(&self, n: usize) -> Self {
        let mut acc = Self::constant(1.0);
        for _ in 0..n {
            acc = trig_multiply(&acc, self);
        }
        acc
    }

    /// Minimum and maximum over `θ ∈ [0, π]`.
    pub fn extrema(&self) -> (f64, f64) {
        extrema_on_grid(|t| self.eval(t))
    }

    /// `max_θ |p(θ)|`.
    pub fn max_abs(&self) -> f64 {
        let (lo, hi) = self.extrema();
        lo.abs().max(hi.abs())
    }

    /// True when the polynomial is strictly positive on a dense θ-grid.
    pub fn is_positive_on_grid(&self) -> bool {
        (0..=EXTREMA_GRID).all(|i| self.eval(PI * i as f64 / EXTREMA_GRID as f64) > 0.0) && self.extrema().0 > 0.0
    }
}

/// Coefficient convolution; `degree(out) = degree(p) + degree(q)`.
pub fn trig_multiply(p: &TrigPolynomial, q: &TrigPolynomial) -> TrigPolynomial {
    let mut out = vec![0.0; p.coeffs.len() + q.coeffs.len() - 1];
    for (i, &a) in p.coeffs.iter().enumerate() {
        for (j, &b) in q.coeffs.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    TrigPolynomial::new(out)
}

impl Mul for &TrigPolynomial {
    type Output = TrigPolynomial;

    fn mul(self, rhs: Self) -> TrigPolynomial {
        trig_multiply(self, rhs)
    }
}

impl Add for &TrigPolynomial {
    type Output = TrigPolynomial;

    fn add(self, rhs: Self) -> TrigPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let get = |v: &[f64], i: usize| v.get(i).copied().unwrap_or(0.0);
        TrigPolynomial::new((0..n).map(|i| get(&self.coeffs, i) + get(&rhs.coeffs, i)).collect())
    }
}

impl Sub for &TrigPolynomial {
    type Output = TrigPolynomial;

    fn sub(self, rhs: Self) -> TrigPolynomial {
        self + &rhs.scale(-1.0)
    }
}

/// Cosine series `Σ a_k cos(kθ)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CosineSeries {
    coeffs: Vec<f64>,
}

impl CosineSeries {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.len() > 1 && coeffs[coeffs.len() - 1] == 0.0 {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        Self { coeffs }
    }

    pub fn one() -> Self {
        Self { coeffs: vec![1.0] }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Horner in `cos θ`, with multiplication by `cos θ` done in the
    /// harmonic basis: `cos θ · cos kθ = (cos(k+1)θ + cos(k−1)θ)/2`.
    pub fn from_power_basis(p: &TrigPolynomial) -> Self {
        let mut acc: Vec<f64> = vec![0.0];
        for &c in p.coeffs.iter().rev() {
            let mut next = vec![0.0; acc.len() + 1];
            for (k, &a) in acc.iter().enumerate() {
                if k == 0 {
                    next[1] += a;
                } else {
                    next[k + 1] += 0.5 * a;
                    next[k - 1] += 0.5 * a;
                }
            }
            next[0] += c;
            acc = next;
        }
        Self::new(acc)
    }

    /// Chebyshev recurrence `T_{k+1} = 2c·T_k − T_{k−1}`.
    pub fn to_power_basis(&self) -> TrigPolynomial {
        let n = self.coeffs.len();
        let mut out = vec![0.0; n];
        let mut prev = vec![1.0];
        let mut cur = vec![0.0, 1.0];
        for (k, &a) in self.coeffs.iter().enumerate() {
            let t = match k {
                0 => &prev,
                _ => &cur,
            };
            for (i, &ti) in t.iter().enumerate() {
                out[i] += a * ti;
            }
            if k >= 1 {
                let mut next = vec![0.0; cur.len() + 1];
                for (i, &ci) in cur.iter().enumerate() {
                    next[i + 1] += 2.0 * ci;
                }
                for (i, &pi) in prev.iter().enumerate() {
                    next[i] -= pi;
                }
                prev = std::mem::replace(&mut cur, next);
            }
        }
        TrigPolynomial::new(out)
    }

    pub fn eval(&self, theta: f64) -> f64 {
        self.coeffs.iter().enumerate().map(|(k, &a)| a * (k as f64 * theta).cos()).sum()
    }

    /// `∫₀^π`: only the constant harmonic survives.
    pub fn integral(&self) -> f64 {
        PI * self.coeffs[0]
    }

    pub fn multiply(&self, other: &Self) -> Self {
        let mut out = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (j, &a) in self.coeffs.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for (k, &b) in other.coeffs.iter().enumerate() {
                let half = 0.5 * a * b;
                out[j + k] += half;
                out[j.abs_diff(k)] += half;
            }
        }
        Self::new(out)
    }
}

/// Min and max of `f` over `[0, π]`: dense grid, then golden-section
/// polishing of every interior grid extremum.
pub(crate) fn extrema_on_grid<F: Fn(f64) -> f64>(f: F) -> (f64, f64) {
    let h = PI / EXTREMA_GRID as f64;
    let values: Vec<f64> = (0..=EXTREMA_GRID).map(|i| f(i as f64 * h)).collect();
    let mut lo = values[0].min(values[EXTREMA_GRID]);
    let mut hi = values[0].max(values[EXTREMA_GRID]);
    for i in 1..EXTREMA_GRID {
        let (l, m, r) = (values[i - 1], values[i], values[i + 1]);
        let a = (i - 1) as f64 * h;
        let b = (i + 1) as f64 * h;
        if m >= l && m >= r {
            hi = hi.max(-golden_min(|t| -f(t), a, b));
        }
        if m <= l && m <= r {
            lo = lo.min(golden_min(&f, a, b));
        }
        hi = hi.max(m);
        lo = lo.min(m);
    }
    (lo, hi)
}

fn golden_min<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > EXTREMA_POLISH_TOL {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    fc.min(fd).min(f(0.5 * (a + b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn moments_of_low_powers() {
        assert_eq!(cos_moment(0), PI);
        assert_eq!(cos_moment(1), 0.0);
        assert_relative_eq!(cos_moment(2), PI / 2.0, epsilon = 1e-15);
        assert_relative_eq!(cos_moment(4), 3.0 * PI / 8.0, epsilon = 1e-15);
        assert_eq!(cos_moment(17), 0.0);
    }

    #[test]
    fn multiply_examples() {
        let one = TrigPolynomial::constant(1.0);
        let c = TrigPolynomial::cos();
        assert_eq!(trig_multiply(&one, &c), c);
        assert_eq!(trig_multiply(&c, &c), TrigPolynomial::new(vec![0.0, 0.0, 1.0]));
        let p = TrigPolynomial::new(vec![1.0, 1.0]);
        assert_eq!(trig_multiply(&p, &p).coeffs(), &[1.0, 2.0, 1.0]);
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        let p = TrigPolynomial::new(vec![1.0, 2.0, 0.0, 0.0]);
        assert_eq!(p.degree(), 1);
        assert!(TrigPolynomial::new(vec![]).is_zero());
        assert_eq!(TrigPolynomial::new(vec![0.0, 0.0]).degree(), 0);
    }

    #[test]
    fn harmonic_conversion_round_trip() {
        // cos 2θ = 2c² − 1, cos 4θ = 8c⁴ − 8c² + 1
        let p = TrigPolynomial::from_harmonics(&[0.0, 0.0, 8.0, 0.0, 1.0]);
        assert_eq!(p.coeffs(), &[-7.0, 0.0, 8.0, 0.0, 8.0]);
        let back = p.to_harmonics();
        for (a, b) in back.coeffs().iter().zip([0.0, 0.0, 8.0, 0.0, 1.0]) {
            assert_relative_eq!(*a, b, epsilon = 1e-14);
        }
    }

    #[test]
    fn cosine_series_product_integral() {
        // (8cos2θ + cos4θ)² averages to (64 + 1)/2
        let s = CosineSeries::new(vec![0.0, 0.0, 8.0, 0.0, 1.0]);
        assert_relative_eq!(s.multiply(&s).integral() / PI, 32.5, epsilon = 1e-14);
    }

    #[test]
    fn affine_substitution() {
        // x² with x = 1 + 2c  ->  1 + 4c + 4c²
        let p = TrigPolynomial::from_polynomial_in_x(&[0.0, 0.0, 1.0], 1.0, 2.0);
        assert_eq!(p.coeffs(), &[1.0, 4.0, 4.0]);
    }

    #[test]
    fn extrema_of_cos_two_theta() {
        let p = TrigPolynomial::from_harmonics(&[0.0, 0.0, 0.25]);
        let (lo, hi) = p.extrema();
        assert_relative_eq!(lo, -0.25, epsilon = 1e-14);
        assert_relative_eq!(hi, 0.25, epsilon = 1e-14);
    }

    #[test]
    fn interior_extremum_is_polished() {
        // 1 − (c − 0.3)² has its maximum 1 at c = 0.3, between grid nodes.
        let p = TrigPolynomial::new(vec![1.0 - 0.09, 0.6, -1.0]);
        assert_relative_eq!(p.extrema().1, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn evaluation_is_even_in_theta() {
        let p = TrigPolynomial::new(vec![0.3, -1.2, 0.7, 2.0]);
        for t in [0.1, 0.9, 2.5] {
            assert_eq!(p.eval(t), p.eval(-t));
        }
    }
}
