//! Independent ground-truth numerics.
//!
//! Nothing in here knows about the delta-expansion: the quadrature and the
//! elliptic integral are the reference every series is checked against.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Total integrand evaluations allowed per call to [`integrate`].
pub const EVALUATION_BUDGET: usize = 1_000_000;

/// Default absolute tolerance used by the high-level period oracles.
pub const DEFAULT_ABS_TOL: f64 = 1e-13;

static ABS_TOL_BITS: AtomicU64 = AtomicU64::new(0);

/// Tolerance used by the period oracles: [`DEFAULT_ABS_TOL`] unless
/// overridden with [`set_default_abs_tol`].
pub fn default_abs_tol() -> f64 {
    match ABS_TOL_BITS.load(AtomicOrdering::Relaxed) {
        0 => DEFAULT_ABS_TOL,
        bits => f64::from_bits(bits),
    }
}

/// Process-wide override of the oracle tolerance.
pub fn set_default_abs_tol(tol: f64) -> Result<()> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::Domain(format!("absolute tolerance must be positive and finite, got {tol}")));
    }
    ABS_TOL_BITS.store(tol.to_bits(), AtomicOrdering::Relaxed);
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

// Kronrod 15-point nodes (nonnegative half) and weights, Gauss 7-point
// weights on the shared odd-indexed nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    // Largest error first; ties broken by position so the heap order is
    // fully deterministic.
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error).then_with(|| other.a.total_cmp(&self.a))
    }
}

fn gauss_kronrod_15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<Panel> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let eval = |x: f64| -> Result<f64> {
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::NonFiniteIntegrand(x))
        }
    };

    let f_center = eval(center)?;
    let mut kronrod = WGK[7] * f_center;
    let mut gauss = WG[3] * f_center;
    let mut abs_sum = kronrod.abs();
    let mut f_plus = [0.0; 7];
    let mut f_minus = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let (fl, fr) = (eval(center - dx)?, eval(center + dx)?);
        f_minus[j] = fl;
        f_plus[j] = fr;
        kronrod += WGK[j] * (fl + fr);
        abs_sum += WGK[j] * (fl.abs() + fr.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (fl + fr);
        }
    }
    let mean = 0.5 * kronrod;
    let mut asc = WGK[7] * (f_center - mean).abs();
    for j in 0..7 {
        asc += WGK[j] * ((f_minus[j] - mean).abs() + (f_plus[j] - mean).abs());
    }

    let value = kronrod * half;
    let res_abs = abs_sum * half.abs();
    let res_asc = asc * half.abs();
    let mut error = ((kronrod - gauss) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    error = error.max(f64::EPSILON * res_abs);
    Ok(Panel { a, b, value, error })
}

/// Adaptive Gauss–Kronrod (7/15) quadrature of `f` over `[a, b]`.
///
/// The panel with the largest error estimate is bisected until the summed
/// estimate drops below `abs_tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64) -> Result<QuadratureResult> {
    if !(a < b) {
        return Err(Error::Domain(format!("integration bounds must satisfy a < b, got [{a}, {b}]")));
    }
    let mut heap = BinaryHeap::new();
    let first = gauss_kronrod_15(&f, a, b)?;
    let mut evaluations = 15;
    let mut total_error = first.error;
    heap.push(first);

    while total_error > abs_tol {
        if evaluations + 30 > EVALUATION_BUDGET {
            return Err(Error::ToleranceNotMet { requested: abs_tol, estimate: total_error, evaluations });
        }
        let worst = heap.pop().expect("heap never empties");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Panel can no longer be split in floating point.
            heap.push(worst);
            return Err(Error::ToleranceNotMet { requested: abs_tol, estimate: total_error, evaluations });
        }
        let left = gauss_kronrod_15(&f, worst.a, mid)?;
        let right = gauss_kronrod_15(&f, mid, worst.b)?;
        evaluations += 30;
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        if total_error <= abs_tol || evaluations % 1920 == 0 {
            // Resum to shed drift from the running update.
            total_error = heap.iter().map(|p| p.error).sum();
        }
    }

    // Sum in position order for a reproducible result.
    let mut panels = heap.into_vec();
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    let value = panels.iter().map(|p| p.value).sum();
    Ok(QuadratureResult { value, error_estimate: total_error, evaluations })
}

/// Complete elliptic integral of the first kind in the *parameter*
/// convention:
///
/// ```text
/// K(m) = ∫₀^{π/2} dα / √(1 − m sin²α)
/// ```
///
/// `m` multiplies `sin²α` directly (it is the square of the modulus `k`).
/// Computed by the arithmetic-geometric mean `K(m) = π / (2·AGM(1, √(1−m)))`,
/// which is valid for every `m < 1`, negative parameters included.
pub fn elliptic_k(m: f64) -> Result<f64> {
    if !(m < 1.0) || m.is_nan() {
        return Err(Error::Domain(format!("elliptic parameter must be below 1, got {m}")));
    }
    let mut a = 1.0_f64;
    let mut b = (1.0 - m).sqrt();
    for _ in 0..64 {
        if (a - b).abs() <= 2.0 * f64::EPSILON * a {
            break;
        }
        let next = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = next;
    }
    Ok(PI / (a + b))
}

/// Brent's method on a sign-changing bracket.
///
/// `tol` is the bracket-width target; `tol = 0` runs to adjacent floats.
pub fn find_root<F: Fn(f64) -> f64>(g: F, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    const MAX_ITER: usize = 500;

    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (g(a), g(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() || fa.is_nan() || fb.is_nan() {
        return Err(Error::NoSignChange { lo, hi, f_lo: fa, f_hi: fb });
    }

    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..MAX_ITER {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol + f64::MIN_POSITIVE;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = g(b);
    }
    Err(Error::NoConvergence(MAX_ITER))
}

/// Result of an exponential-decay fit `err ≈ exp(−α − β n)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogLinearFit {
    pub alpha: f64,
    pub beta: f64,
    /// RMS residual of the fit in `ln(err)` space.
    pub residual: f64,
}

/// Ordinary least squares of `ln(err)` against `n`.
pub fn fit_log_linear(points: &[(usize, f64)]) -> Result<LogLinearFit> {
    if points.len() < 2 {
        return Err(Error::DegenerateFit(format!("need at least 2 points, got {}", points.len())));
    }
    if let Some(&(n, e)) = points.iter().find(|(_, e)| !(*e > 0.0) || !e.is_finite()) {
        return Err(Error::DegenerateFit(format!("error at n = {n} is not positive: {e}")));
    }
    let count = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|&(n, _)| n as f64).collect();
    let ys: Vec<f64> = points.iter().map(|&(_, e)| e.ln()).collect();
    let x_mean = xs.iter().sum::<f64>() / count;
    let y_mean = ys.iter().sum::<f64>() / count;
    let sxx: f64 = xs.iter().map(|x| (x - x_mean).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::DegenerateFit("all orders are equal".into()));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - x_mean) * (y - y_mean)).sum();
    let slope = sxy / sxx;
    let intercept = y_mean - slope * x_mean;
    let rss: f64 = xs.iter().zip(&ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    Ok(LogLinearFit { alpha: -intercept, beta: -slope, residual: (rss / count).sqrt() })
}
