//! Convergence studies: partial sums against oracle references, with
//! log-linear fits of the relative error.

use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::{fit_log_linear, LogLinearFit};
use crate::oscillators::{
    duffing_b0, duffing_b0_exact, duffing_exact_period, duffing_period_series, even_power_exact_period,
    even_power_kappa_first_order, even_power_series, sextic_c0_exact, sextic_c0_series,
};
use crate::precession::{precession_exact, precession_series, OrbitParams};

/// Lowest order entering a fit unless a window is given.
pub const DEFAULT_FIT_MIN_ORDER: usize = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyPoint {
    pub order: usize,
    /// Grid parameter (ρ or a) for sweeps; absent for order studies.
    pub parameter: Option<f64>,
    pub value: f64,
    pub reference: f64,
    pub rel_error: f64,
}

impl StudyPoint {
    pub fn new(order: usize, parameter: Option<f64>, value: f64, reference: f64) -> Self {
        Self { order, parameter, value, reference, rel_error: ((value - reference) / reference).abs() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceStudy {
    pub label: String,
    /// Column name of the parameter when the points carry one.
    pub parameter_name: Option<String>,
    pub points: Vec<StudyPoint>,
    pub fit: Option<LogLinearFit>,
}

/// Orders that enter a fit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FitWindow {
    pub min_order: usize,
    pub max_order: usize,
    /// `Some(0)` for even orders, `Some(1)` for odd.
    pub parity: Option<usize>,
}

impl FitWindow {
    pub fn from(min_order: usize) -> Self {
        Self { min_order, max_order: usize::MAX, parity: None }
    }

    pub fn parity(mut self, parity: usize) -> Self {
        self.parity = Some(parity % 2);
        self
    }

    fn contains(&self, n: usize) -> bool {
        n >= self.min_order && n <= self.max_order && self.parity.is_none_or(|p| n % 2 == p)
    }
}

impl ConvergenceStudy {
    fn new(label: impl Into<String>, points: Vec<StudyPoint>) -> Self {
        Self { label: label.into(), parameter_name: None, points, fit: None }
    }

    /// Fits `ln(rel_error)` against the order over the window.
    pub fn fit_window(&self, window: FitWindow) -> Result<LogLinearFit> {
        let pts: Vec<(usize, f64)> =
            self.points.iter().filter(|p| window.contains(p.order)).map(|p| (p.order, p.rel_error)).collect();
        fit_log_linear(&pts)
    }

    pub fn errors(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.rel_error).collect()
    }

    /// `n,value,reference,rel_error`, with the parameter column after `n`
    /// when there is one.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        match &self.parameter_name {
            Some(name) => writeln!(out, "n,{name},value,reference,rel_error"),
            None => writeln!(out, "n,value,reference,rel_error"),
        }
        .unwrap();
        for p in &self.points {
            write!(out, "{}", p.order).unwrap();
            if self.parameter_name.is_some() {
                write!(out, ",{}", fmt_f64(p.parameter.unwrap_or(f64::NAN))).unwrap();
            }
            writeln!(out, ",{},{},{}", fmt_f64(p.value), fmt_f64(p.reference), fmt_f64(p.rel_error)).unwrap();
        }
        out
    }

    /// One row per parameter value, one error column per order.
    pub fn to_wide_csv(&self) -> String {
        let mut orders: Vec<usize> = self.points.iter().map(|p| p.order).collect();
        orders.sort_unstable();
        orders.dedup();
        let name = self.parameter_name.as_deref().unwrap_or("parameter");
        let mut out = format!("{name},reference");
        for n in &orders {
            write!(out, ",err_n{n}").unwrap();
        }
        out.push('\n');
        let mut rows: Vec<(f64, f64, Vec<f64>)> = Vec::new();
        for p in &self.points {
            let x = p.parameter.unwrap_or(f64::NAN);
            let col = orders.binary_search(&p.order).unwrap();
            match rows.iter_mut().find(|r| r.0.to_bits() == x.to_bits()) {
                Some(r) => r.2[col] = p.rel_error,
                None => {
                    let mut errs = vec![f64::NAN; orders.len()];
                    errs[col] = p.rel_error;
                    rows.push((x, p.reference, errs));
                }
            }
        }
        for (x, reference, errs) in rows {
            write!(out, "{},{}", fmt_f64(x), fmt_f64(reference)).unwrap();
            for e in errs {
                write!(out, ",{}", fmt_f64(e)).unwrap();
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("study serializes")
    }
}

/// 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// `b₀⁽ᴺ⁾` for `N = 0..=max_order` against the quadrature value of `b₀`.
pub fn duffing_b0_study(max_order: usize) -> Result<ConvergenceStudy> {
    if max_order < 3 {
        return Err(Error::Domain(format!("max_order must be at least 3, got {max_order}")));
    }
    let reference = duffing_b0_exact()?;
    let points =
        (0..=max_order).map(|n| Ok(StudyPoint::new(n, None, duffing_b0(n)?, reference))).collect::<Result<Vec<_>>>()?;
    let mut study = ConvergenceStudy::new("duffing-b0", points);
    study.fit = Some(study.fit_window(FitWindow::from(DEFAULT_FIT_MIN_ORDER))?);
    Ok(study)
}

/// Frequency error of a fixed-order Duffing series over a `ρ` grid, with
/// the strong-coupling error of the same order as the asymptote.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorVsRho {
    pub study: ConvergenceStudy,
    pub asymptote: f64,
    pub max_error: f64,
    pub below_asymptote: bool,
}

/// `n` log-spaced points on `[lo, hi]`.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0 && hi > lo && n >= 2) {
        return Err(Error::Domain(format!("log grid needs 0 < lo < hi and n >= 2, got [{lo}, {hi}], n = {n}")));
    }
    let (a, b) = (lo.ln(), hi.ln());
    Ok((0..n).map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp()).collect())
}

pub fn default_rho_grid() -> Vec<f64> {
    log_grid(1e-3, 1e6, 91).expect("valid grid")
}

/// `2π/T⁽ᴺ⁾` against `2π/T` on the grid; `N` is the index of the closed-form
/// sum.
pub fn duffing_error_vs_rho(order: usize, rho_grid: &[f64]) -> Result<ErrorVsRho> {
    let points = rho_grid
        .iter()
        .map(|&rho| {
            let approx = 2.0 * PI / duffing_period_series(rho, order)?;
            let exact = 2.0 * PI / duffing_exact_period(rho)?;
            Ok(StudyPoint::new(order, Some(rho), approx, exact))
        })
        .collect::<Result<Vec<_>>>()?;
    let b0 = duffing_b0_exact()?;
    let asymptote = ((duffing_b0(order)? - b0) / b0).abs();
    let mut study = ConvergenceStudy::new("duffing-rho", points);
    study.parameter_name = Some("rho".into());
    let max_error = study.errors().into_iter().fold(0.0, f64::max);
    Ok(ErrorVsRho { study, asymptote, max_error, below_asymptote: max_error <= asymptote })
}

/// Strong-coupling `c₀⁽ᴺ⁾` of the sextic against its quadrature value.
/// Odd orders alternate in quality, so the fit uses even orders from 2.
pub fn sextic_c0_study(max_order: usize) -> Result<ConvergenceStudy> {
    if max_order < 3 {
        return Err(Error::Domain(format!("max_order must be at least 3, got {max_order}")));
    }
    let reference = sextic_c0_exact()?;
    let points = (0..=max_order)
        .map(|n| Ok(StudyPoint::new(n, None, sextic_c0_series(n)?, reference)))
        .collect::<Result<Vec<_>>>()?;
    let mut study = ConvergenceStudy::new("sextic-c0", points);
    study.fit = Some(study.fit_window(FitWindow::from(2).parity(0))?);
    Ok(study)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NegativeRhoStudy {
    pub k: u32,
    pub rho: f64,
    pub kappa: f64,
    pub study: ConvergenceStudy,
    pub even_fit: LogLinearFit,
    pub odd_fit: LogLinearFit,
    /// Every even-order error lies on or below the geometric mean of its
    /// odd neighbours.
    pub even_below_odd: bool,
}

/// Period errors of `V = x²/2 + μx^{2K}/(2K)` at negative `ρ` with first-order
/// PMS `κ`, split by parity of the order.
pub fn negative_rho_study(k: u32, rho: f64, max_order: usize) -> Result<NegativeRhoStudy> {
    if max_order < 6 {
        return Err(Error::Domain(format!("max_order must be at least 6, got {max_order}")));
    }
    let kappa = even_power_kappa_first_order(k);
    let reference = even_power_exact_period(k, rho)?;
    let points = (0..=max_order)
        .map(|n| Ok(StudyPoint::new(n, None, even_power_series(k, rho, kappa, n)?.value, reference)))
        .collect::<Result<Vec<_>>>()?;
    let mut study = ConvergenceStudy::new(format!("negative-rho-k{k}"), points);
    let even_fit = study.fit_window(FitWindow::from(2).parity(0))?;
    let odd_fit = study.fit_window(FitWindow::from(1).parity(1))?;
    study.fit = None;
    let e = study.errors();
    let even_below_odd = (1..=(max_order - 1) / 2).all(|j| e[2 * j] <= (e[2 * j - 1] * e[2 * j + 1]).sqrt());
    Ok(NegativeRhoStudy { k, rho, kappa, study, even_fit, odd_fit, even_below_odd })
}

/// Relative error of the precession series for each `(a, N)`.
pub fn precession_error_table(gm: f64, epsilon: f64, a_grid: &[f64], orders: &[usize]) -> Result<ConvergenceStudy> {
    let mut points = Vec::with_capacity(a_grid.len() * orders.len());
    for &a in a_grid {
        let orbit = OrbitParams::new(gm, a, epsilon)?;
        let exact = precession_exact(&orbit)?;
        for &n in orders {
            points.push(StudyPoint::new(n, Some(a), precession_series(&orbit, n)?, exact));
        }
    }
    let mut study = ConvergenceStudy::new("precession", points);
    study.parameter_name = Some("a".into());
    Ok(study)
}
