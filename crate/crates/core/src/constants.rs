//! Physical constants (SI units).

/// Reduced Planck constant (J s), CODATA exact.
pub const HBAR: f64 = 1.054571817e-34;

/// Boltzmann constant (J/K), CODATA exact.
pub const K_B: f64 = 1.380649e-23;

/// Speed of light in vacuum (m/s), exact.
pub const C_LIGHT: f64 = 299_792_458.0;

/// 2π, for Hz ↔ rad/s conversions.
pub const TWO_PI: f64 = 2.0 * std::f64::consts::PI;
