//! Simple pendulum `V = 1 − cos φ` and its Taylor truncations.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::oracle::elliptic_k;

use super::{period_series, OscillatorModel};

fn check_amplitude(a: f64) -> Result<()> {
    if a > 0.0 && a < PI {
        Ok(())
    } else {
        Err(Error::Domain(format!("pendulum amplitude must lie in (0, pi), got {a}")))
    }
}

/// `T = 4 K(sin²(A/2))`.
pub fn pendulum_exact(amplitude: f64) -> Result<f64> {
    check_amplitude(amplitude)?;
    Ok(4.0 * elliptic_k((0.5 * amplitude).sin().powi(2))?)
}

/// PMS series of the potential truncated at `φ^taylor`; `N` is the Δ-order.
pub fn pendulum_approx(amplitude: f64, taylor: u32, order: usize) -> Result<f64> {
    check_amplitude(amplitude)?;
    period_series(&OscillatorModel::PendulumTaylor { order: taylor, amplitude }, order)
}

/// Order-4 truncation at leading order, `4√2π/√(8 − A²)`.
pub fn pendulum_quartic_leading(amplitude: f64) -> Result<f64> {
    let a2 = amplitude * amplitude;
    if !(a2 < 8.0) {
        return Err(Error::Domain(format!("A^2 must be below 8, got {a2}")));
    }
    Ok(4.0 * 2f64.sqrt() * PI / (8.0 - a2).sqrt())
}

fn sextic_poly(a: f64) -> f64 {
    let a2 = a * a;
    a2 * a2 - 24.0 * a2 + 192.0
}

/// Order-6 truncation at leading order, `16√3π/√(A⁴ − 24A² + 192)`.
pub fn pendulum_sextic_leading(amplitude: f64) -> f64 {
    16.0 * 3f64.sqrt() * PI / sextic_poly(amplitude).sqrt()
}

/// `ω = √(6(A⁴ − 24A² + 192))/48`.
pub fn pendulum_sextic_omega(amplitude: f64) -> f64 {
    (6.0 * sextic_poly(amplitude)).sqrt() / 48.0
}

/// `ω = √6 (A⁴ − 24A² + 192)/48`, the other way to read the radical; it
/// does not reduce to `1/√2` at `A = 0`.
pub fn pendulum_sextic_omega_as_printed(amplitude: f64) -> f64 {
    6f64.sqrt() * sextic_poly(amplitude) / 48.0
}

fn sextic_second_numerator(a: f64) -> f64 {
    let a2 = a * a;
    (((253.0 * a2 - 11904.0) * a2 + 233_280.0) * a2 - 2_211_840.0) * a2 + 8_847_360.0
}

/// Order-6 truncation through second order,
/// `√3π (253A⁸ − 11904A⁶ + 233280A⁴ − 2211840A² + 8847360) / (15 P^{5/2})`
/// with `P = A⁴ − 24A² + 192`.
pub fn pendulum_sextic_second(amplitude: f64) -> f64 {
    3f64.sqrt() * PI * sextic_second_numerator(amplitude) / (15.0 * sextic_poly(amplitude).powf(2.5))
}

/// The same numerator over `15 P`; gives `3072√3π` instead of `2π` at `A = 0`.
pub fn pendulum_sextic_second_as_printed(amplitude: f64) -> f64 {
    3f64.sqrt() * PI * sextic_second_numerator(amplitude) / (15.0 * sextic_poly(amplitude))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oscillators::turning_points;
    use crate::series::pms_first_order;
    use approx::assert_relative_eq;

    #[test]
    fn exact_limits_and_monotonicity() {
        assert_relative_eq!(pendulum_exact(1e-8).unwrap(), 2.0 * PI, max_relative = 1e-14);
        let mut last = 0.0;
        for i in 1..60 {
            let t = pendulum_exact(i as f64 * 0.05).unwrap();
            assert!(t > last);
            last = t;
        }
        assert!(pendulum_exact(PI - 1e-6).unwrap() > 40.0);
        assert!(pendulum_exact(PI).is_err());
    }

    #[test]
    fn truncations() {
        for a in [0.3, 1.0, 2.5] {
            assert_relative_eq!(pendulum_approx(a, 2, 4).unwrap(), 2.0 * PI, max_relative = 1e-15);
        }
        assert_relative_eq!(
            pendulum_approx(1.0, 4, 0).unwrap(),
            4.0 * 2f64.sqrt() * PI / 7f64.sqrt(),
            max_relative = 1e-14
        );
        assert_relative_eq!(
            pendulum_approx(1.0, 4, 0).unwrap(),
            pendulum_quartic_leading(1.0).unwrap(),
            max_relative = 1e-14
        );
        assert_relative_eq!(pendulum_approx(1.3, 6, 0).unwrap(), pendulum_sextic_leading(1.3), max_relative = 1e-14);
    }

    #[test]
    fn sextic_omega_reading() {
        assert_relative_eq!(pendulum_sextic_omega(0.0), 0.5f64.sqrt(), max_relative = 1e-15);
        assert!((pendulum_sextic_omega_as_printed(0.0) - 0.5f64.sqrt()).abs() > 1.0);
        for a in [0.5, 1.0, 2.0] {
            let tp = turning_points(&OscillatorModel::PendulumTaylor { order: 6, amplitude: a }).unwrap();
            assert_relative_eq!(pms_first_order(&tp.factor).unwrap(), pendulum_sextic_omega(a), max_relative = 1e-14);
        }
    }

    #[test]
    fn second_order_closed_form() {
        assert_relative_eq!(pendulum_sextic_second(0.0), 2.0 * PI, max_relative = 1e-14);
        assert_relative_eq!(pendulum_sextic_second_as_printed(0.0), 3072.0 * 3f64.sqrt() * PI, max_relative = 1e-14);
        for a in [0.5, 1.0, 1.7, 2.0, 2.4] {
            assert_relative_eq!(pendulum_approx(a, 6, 2).unwrap(), pendulum_sextic_second(a), max_relative = 1e-13);
        }
    }
}
