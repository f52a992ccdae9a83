//! Physical defaults and quoted literature values.
//!
//! Lengths are in metres. `GM` means `(G/c²)·M`, a length.

use serde::Serialize;

/// Central mass in kg.
pub const MASS: f64 = 1.97e30;

/// `G/c²` in m/kg.
pub const G_OVER_C2: f64 = 7.425e-30;

/// Orbital eccentricity used for the precession curves.
pub const ECCENTRICITY: f64 = 0.2506;

/// `GM = (G/c²)·M` in metres.
pub fn default_gm() -> f64 {
    G_OVER_C2 * MASS
}

/// Radians to seconds of arc.
pub const ARCSEC_PER_RADIAN: f64 = 180.0 * 3600.0 / std::f64::consts::PI;

/// A quoted number with a note on where it comes from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Quoted {
    pub value: f64,
    pub source: &'static str,
}

/// Quoted comparison values. None of them is used as ground truth; the
/// oracles recompute every limit independently.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReferenceConstants {
    pub duffing_beta_pks: Quoted,
    pub duffing_beta: Quoted,
    pub sextic_c0_exact: Quoted,
    pub sextic_c0_t4: Quoted,
    pub sextic_c0_wl: Quoted,
    pub sextic_beta: Quoted,
    pub sextic_exact_rho_m09: Quoted,
    pub sextic_wl_rho_m09: Quoted,
    pub sextic_t4_rho_m09: Quoted,
    pub critical_semimajor_axis: Quoted,
}

pub const REFERENCE: ReferenceConstants = ReferenceConstants {
    duffing_beta_pks: Quoted {
        value: 1.11,
        source: "PKS resummation, quoted strong-coupling error slope for the quartic b0",
    },
    duffing_beta: Quoted { value: 2.1972, source: "quoted slope ln 9 of the PMS b0 error" },
    sextic_c0_exact: Quoted { value: 8.413092631, source: "quoted lim sqrt(rho) T of the exact sextic period" },
    sextic_c0_t4: Quoted { value: 8.41292, source: "quoted lim sqrt(rho) T of the fourth-order PMS sextic period" },
    sextic_c0_wl: Quoted {
        value: 8.4081,
        source: "quoted lim sqrt(rho) T of the linearized harmonic-balance sextic period",
    },
    sextic_beta: Quoted { value: 0.5108, source: "quoted slope ln(5/3) of the sextic c0 error" },
    sextic_exact_rho_m09: Quoted { value: 10.93467798, source: "quoted exact sextic period at rho = -0.9" },
    sextic_wl_rho_m09: Quoted { value: 10.62, source: "quoted harmonic-balance sextic period at rho = -0.9" },
    sextic_t4_rho_m09: Quoted { value: 10.67, source: "quoted fourth-order PMS sextic period at rho = -0.9" },
    critical_semimajor_axis: Quoted {
        value: 97.9173,
        source: "quoted critical semimajor axis (m) for the default mass and eccentricity",
    },
};
