//! Dynamical backaction: optically modified damping and spring, effective
//! susceptibility, mode temperature, and the parametric-instability threshold.

use num_complex::Complex64;

use crate::constants::HBAR;
use crate::error::{Error, Result};
use crate::model::{x_zpf, CavityParams, MechMode, OperatingPoint};

/// Mechanical oscillator with light-modified damping and spring.
#[derive(Debug, Clone, Copy)]
pub struct EffectiveOscillator {
    /// Γ_eff = Γ_m + Γ_dba(Ω_m) (rad/s); negative in the instability regime.
    pub gamma_eff: f64,
    /// Ω_eff = Ω_m + k_dba(Ω_m)/(2 m_eff Ω_m) (rad/s).
    pub omega_eff: f64,
    /// Backaction damping Γ_dba(Ω_m) (rad/s).
    pub gamma_dba: f64,
    /// Backaction spring shift k_dba(Ω_m)/m_eff (rad²/s²).
    pub k_dba_over_m: f64,
    /// True when G = 2 ā g0 x_ZPF < κ/3, the weak-coupling validity condition
    /// for the damped-oscillator picture.
    pub weak_coupling_valid: bool,
}

impl EffectiveOscillator {
    /// False once the total damping is driven to (or below) zero, i.e. the
    /// parametric oscillatory instability regime.
    pub fn stable(&self) -> bool {
        self.gamma_eff > 0.0
    }
}

/// Backaction damping rate Γ_dba(Ω) (rad/s) and spring constant k_dba(Ω)
/// (N/m) at Fourier frequency Ω.
///
/// The Ω → 0 limit of Γ_dba is removable and handled exactly.
pub fn backaction_rates(
    cavity: &CavityParams,
    mode: &MechMode,
    op: &OperatingPoint,
    omega: f64,
) -> (f64, f64) {
    let c = cavity.half_kappa();
    let delta = op.detuning_eff;
    let pre = HBAR * cavity.g0 * cavity.g0 * op.photons();
    let up = (delta + omega).powi(2) + c * c;
    let dn = (delta - omega).powi(2) + c * c;
    // Γ_dba = (pre/(m Ω))·(κ/2)(1/up − 1/dn); the difference of Lorentzians
    // equals −4ΔΩ/(up·dn), cancelling the 1/Ω exactly.
    let gamma_dba = pre / mode.m_eff * c * (-4.0 * delta) / (up * dn);
    let k_dba = pre * ((delta + omega) / up + (delta - omega) / dn);
    (gamma_dba, k_dba)
}

/// Effective mechanical susceptibility χ_eff(Ω) (m/N):
/// χ_eff⁻¹ = m_eff(−Ω² − i(Γ_m + Γ_dba(Ω))Ω + Ω_m² + k_dba(Ω)/m_eff).
pub fn effective_susceptibility(
    cavity: &CavityParams,
    mode: &MechMode,
    op: &OperatingPoint,
    omega: f64,
) -> Complex64 {
    let (gamma_dba, k_dba) = backaction_rates(cavity, mode, op, omega);
    let re = mode.omega_m * mode.omega_m - omega * omega + k_dba / mode.m_eff;
    let im = -(mode.gamma_m + gamma_dba) * omega;
    1.0 / (mode.m_eff * Complex64::new(re, im))
}

/// Bare mechanical susceptibility χ(Ω) (m/N).
pub fn bare_susceptibility(mode: &MechMode, omega: f64) -> Complex64 {
    1.0 / (mode.m_eff
        * Complex64::new(
            mode.omega_m * mode.omega_m - omega * omega,
            -mode.gamma_m * omega,
        ))
}

/// Effective damping and resonance frequency, evaluating the backaction terms
/// at Ω = Ω_m.
pub fn effective_oscillator(
    cavity: &CavityParams,
    mode: &MechMode,
    op: &OperatingPoint,
) -> EffectiveOscillator {
    let (gamma_dba, k_dba) = backaction_rates(cavity, mode, op, mode.omega_m);
    let k_over_m = k_dba / mode.m_eff;
    let coupling = 2.0 * op.a_bar * cavity.g0.abs() * x_zpf(mode);
    EffectiveOscillator {
        gamma_eff: mode.gamma_m + gamma_dba,
        omega_eff: mode.omega_m + k_over_m / (2.0 * mode.omega_m),
        gamma_dba,
        k_dba_over_m: k_over_m,
        weak_coupling_valid: coupling < cavity.kappa / 3.0,
    }
}

/// Mode temperature under cold damping: T_m = (Γ_m/Γ_eff)·T.
pub fn mode_temperature(mode: &MechMode, gamma_eff: f64) -> Result<f64> {
    if gamma_eff <= 0.0 {
        return Err(Error::Instability(format!(
            "gamma_eff = {gamma_eff} rad/s: no stationary mode temperature in the \
             parametric-oscillation regime"
        )));
    }
    Ok(mode.gamma_m / gamma_eff * mode.t_bath)
}

/// Launched power (W) at which blue-detuned pumping drives the total damping
/// to zero (parametric oscillatory instability).
pub fn instability_threshold(
    cavity: &CavityParams,
    mode: &MechMode,
    detuning: f64,
) -> Result<f64> {
    let c = cavity.half_kappa();
    let om = mode.omega_m;
    let bracket = c / ((detuning - om).powi(2) + c * c) - c / ((detuning + om).powi(2) + c * c);
    if bracket <= 0.0 {
        return Err(Error::Domain(format!(
            "no instability threshold at detuning {detuning} rad/s: backaction does \
             not anti-damp there"
        )));
    }
    Ok(mode.gamma_m * (detuning * detuning + c * c) / (cavity.eta_c * cavity.kappa)
        * cavity.omega_c * mode.m_eff * om / (cavity.g0 * cavity.g0)
        / bracket)
}

/// Intracavity photon number ā²_SQL at which the resonant-readout total noise
/// reaches the standard quantum limit.
pub fn a_bar_sq_sql(cavity: &CavityParams, mode: &MechMode) -> f64 {
    let c = cavity.half_kappa();
    mode.m_eff * mode.gamma_m * mode.omega_m * (mode.omega_m * mode.omega_m + c * c)
        / (2.0 * cavity.g0 * cavity.g0 * HBAR * cavity.kappa * cavity.eta_c.sqrt())
}

/// The universal power scale P_SQL = ħ ω κ ā²_SQL/(4 η_c); in the resolved
/// sideband regime the instability threshold satisfies P_thresh = 4√η_c P_SQL.
pub fn p_sql(cavity: &CavityParams, mode: &MechMode) -> f64 {
    HBAR * cavity.omega_c * cavity.kappa * a_bar_sq_sql(cavity, mode) / (4.0 * cavity.eta_c)
}

/// Parameters of the pump-probe response model: a two-pole thermal low-pass,
/// an instantaneous Kerr term, and the mechanically resonant radiation
/// pressure term. All responses are normalized to the intracavity power
/// modulation δP_IC.
#[derive(Debug, Clone, Copy)]
pub struct ResponseParams {
    /// Cavity resonance ω_c (rad/s).
    pub omega_c: f64,
    /// Linear expansion coefficient α (1/K).
    pub alpha: f64,
    /// Thermorefractive coefficient dn/dT (1/K).
    pub dn_dt: f64,
    /// Refractive index n.
    pub n: f64,
    /// Nonlinear index n₂ (m²/W).
    pub n2: f64,
    /// Effective optical mode area (m²).
    pub a_eff: f64,
    /// Cavity radius (m).
    pub radius: f64,
    /// Weights of the two thermal poles (K/W, per absorption time).
    pub beta1: f64,
    pub beta2: f64,
    /// Thermal pole frequencies (rad/s).
    pub omega1: f64,
    pub omega2: f64,
    /// Absorption time constant (s).
    pub tau_abs: f64,
    /// Mechanical mode driven by radiation pressure.
    pub mech: MechMode,
}

/// The three complex frequency-shift terms (rad/s per W of intracavity power
/// modulation) at modulation frequency Ω.
#[derive(Debug, Clone, Copy)]
pub struct ResponseShift {
    pub thermal: Complex64,
    pub kerr: Complex64,
    pub radiation_pressure: Complex64,
}

impl ResponseShift {
    pub fn total(&self) -> Complex64 {
        self.thermal + self.kerr + self.radiation_pressure
    }
}

/// Pump-probe response of the cavity resonance frequency to intracavity power
/// modulation at frequency Ω.
pub fn pump_probe_response(p: &ResponseParams, omega: f64) -> ResponseShift {
    let one = Complex64::new(1.0, 0.0);
    let thermal_lp = p.beta1 / (one + Complex64::i() * omega / p.omega1)
        + p.beta2 / (one + Complex64::i() * omega / p.omega2);
    let transit = crate::constants::TWO_PI * p.n * p.radius / crate::constants::C_LIGHT;
    let thermal =
        -p.omega_c * (p.alpha + p.dn_dt / p.n) * thermal_lp * transit / p.tau_abs;
    let kerr = Complex64::new(-p.omega_c * p.n2 / (p.n * p.a_eff), 0.0);
    let m = &p.mech;
    let denom = m.m_eff
        * Complex64::new(
            m.omega_m * m.omega_m - omega * omega,
            m.gamma_m * omega,
        );
    let radiation_pressure = -p.omega_c / p.radius / denom
        * (crate::constants::TWO_PI * p.n / crate::constants::C_LIGHT);
    ResponseShift { thermal, kerr, radiation_pressure }
}
