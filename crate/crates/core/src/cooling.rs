//! Quantum limits of backaction cooling, Stokes/anti-Stokes scattering rates,
//! technical-noise and absorption-heating limits, heterodyne sideband
//! asymmetry, and the probe transmission window (optomechanically induced
//! transparency).

use num_complex::Complex64;

use crate::constants::{HBAR, K_B};
use crate::dynba::{bare_susceptibility, effective_oscillator};
use crate::error::{ensure, Error, Result};
use crate::model::{
    n_bath, x_zpf, CavityParams, Drive, MechMode, OperatingPoint, Spectrum, SpectrumKind,
    SpectrumUnit,
};

/// Summary of a backaction-cooling operating point.
#[derive(Debug, Clone, Copy)]
pub struct CoolingReport {
    /// Anti-Stokes (phonon-annihilating) scattering rate A_− (rad/s).
    pub a_minus: f64,
    /// Stokes (phonon-creating) scattering rate A_+ (rad/s).
    pub a_plus: f64,
    /// Cooling rate Γ_dba = A_− − A_+ (rad/s).
    pub gamma_dba: f64,
    /// Final occupancy (Γ_m/Γ_eff)·n_bath + n_min + n_fn.
    pub n_final: f64,
    /// Quantum backaction limit n_min = A_+/(A_− − A_+).
    pub n_min_quantum: f64,
    /// Laser-frequency-noise contribution (zero when no noise given).
    pub n_fn: f64,
    /// Equivalent mode temperature ħΩ_m n_final/k_B (K).
    pub t_mode: f64,
}

/// Linearized absorption-heating model around the cryostat base temperature.
#[derive(Debug, Clone, Copy)]
pub struct HeatingModel {
    /// Temperature rise per circulating watt (K/W).
    pub dt_per_circulating_watt: f64,
    /// Slope of the mechanical damping with temperature (rad/s per K).
    pub dgamma_dt: f64,
}

impl HeatingModel {
    pub fn new(dt_per_circulating_watt: f64, dgamma_dt: f64) -> Result<Self> {
        ensure(
            dt_per_circulating_watt >= 0.0 && dgamma_dt >= 0.0,
            "heating-model coefficients must be non-negative",
        )?;
        Ok(Self { dt_per_circulating_watt, dgamma_dt })
    }
}

/// Anti-Stokes and Stokes scattering rates (A_−, A_+) at the mechanical
/// frequency: A_∓ = g0² ā² x_ZPF² κ/((Δ̄ ± Ω_m)² + (κ/2)²).
pub fn scattering_rates(
    cavity: &CavityParams,
    mode: &MechMode,
    op: &OperatingPoint,
) -> (f64, f64) {
    let x2 = x_zpf(mode).powi(2);
    let pre = cavity.g0 * cavity.g0 * op.photons() * x2 * cavity.kappa;
    let c2 = cavity.half_kappa().powi(2);
    let a_minus = pre / ((op.detuning_eff + mode.omega_m).powi(2) + c2);
    let a_plus = pre / ((op.detuning_eff - mode.omega_m).powi(2) + c2);
    (a_minus, a_plus)
}

/// Quantum backaction limit of the phonon occupancy, n_min = A_+/(A_− − A_+).
/// Errors in the net-heating regime A_− ≤ A_+.
pub fn quantum_limit(cavity: &CavityParams, mode: &MechMode, op: &OperatingPoint) -> Result<f64> {
    let (a_minus, a_plus) = scattering_rates(cavity, mode, op);
    if a_minus <= a_plus {
        return Err(Error::Instability(
            "A_− ≤ A_+: net heating, no quantum cooling limit".into(),
        ));
    }
    Ok(a_plus / (a_minus - a_plus))
}

/// Resolved-sideband asymptote of the quantum limit, κ²/(16 Ω_m²).
pub fn rsb_limit(cavity: &CavityParams, mode: &MechMode) -> f64 {
    (cavity.kappa / (4.0 * mode.omega_m)).powi(2)
}

/// Unresolved-sideband (Doppler) asymptote of the quantum limit, κ/(4 Ω_m).
pub fn doppler_limit(cavity: &CavityParams, mode: &MechMode) -> f64 {
    cavity.kappa / (4.0 * mode.omega_m)
}

/// Full cooling report: bath, quantum, and (optionally) frequency-noise
/// contributions to the final occupancy.
///
/// `s_omega_omega`: laser frequency-noise PSD S_ωω(Ω_m) (rad²/s²/Hz), if any.
pub fn final_occupancy(
    cavity: &CavityParams,
    mode: &MechMode,
    op: &OperatingPoint,
    s_omega_omega: Option<f64>,
) -> Result<CoolingReport> {
    let (a_minus, a_plus) = scattering_rates(cavity, mode, op);
    let gamma_dba = a_minus - a_plus;
    let gamma_eff = mode.gamma_m + gamma_dba;
    if gamma_eff <= 0.0 {
        return Err(Error::Instability(
            "total damping non-positive: heating regime".into(),
        ));
    }
    let bath = if mode.t_bath > 0.0 { n_bath(mode)? } else { 0.0 };
    let n_min_quantum = if gamma_dba > 0.0 {
        a_plus / (a_minus - a_plus)
    } else {
        0.0
    };
    let n_fn = match s_omega_omega {
        Some(s_ww) => {
            ensure(s_ww >= 0.0, "frequency-noise PSD must be non-negative")?;
            s_ww * op.photons() * op.detuning_eff.abs() / (cavity.kappa * mode.omega_m)
        }
        None => 0.0,
    };
    let n_final = mode.gamma_m / gamma_eff * bath + n_min_quantum + n_fn;
    Ok(CoolingReport {
        a_minus,
        a_plus,
        gamma_dba,
        n_final,
        n_min_quantum,
        n_fn,
        t_mode: HBAR * mode.omega_m * n_final / K_B,
    })
}

/// Radiation-pressure force noise from laser frequency noise:
/// S_FF = ħ² ā⁴ g0² · 4Δ̄²/(((Δ̄−Ω)²+(κ/2)²)((Δ̄+Ω)²+(κ/2)²)) · S_ωω(Ω),
/// the factored form of the odd Lorentzian difference (finite at Ω = 0).
pub fn frequency_noise_force(
    cavity: &CavityParams,
    op: &OperatingPoint,
    s_omega_omega: f64,
    omega: f64,
) -> f64 {
    let delta = op.detuning_eff;
    let c2 = cavity.half_kappa().powi(2);
    let a = (delta - omega).powi(2) + c2;
    let b = (delta + omega).powi(2) + c2;
    let photons = op.photons();
    HBAR * HBAR * photons * photons * cavity.g0 * cavity.g0 * 4.0 * delta * delta / (a * b)
        * s_omega_omega
}

/// Resolved-sideband shortcut for the frequency-noise force at Δ̄ = −Ω_m:
/// S_FF ≈ 4 η_c² S_ωω P_in²/(R² Ω_m⁴).
pub fn frequency_noise_force_rsb(
    cavity: &CavityParams,
    drive: &Drive,
    s_omega_omega: f64,
    omega: f64,
) -> f64 {
    4.0 * cavity.eta_c * cavity.eta_c * s_omega_omega * drive.p_in * drive.p_in
        / (cavity.radius * cavity.radius * omega.powi(4))
}

/// Occupancy floor at the optimal cooling power when laser frequency noise
/// competes with thermal heating: n_min = √(2 k_B T m_eff Γ_m S_ωω)/(ħ|g0|).
pub fn frequency_noise_limit(
    cavity: &CavityParams,
    mode: &MechMode,
    s_omega_omega: f64,
) -> Result<f64> {
    ensure(cavity.g0 != 0.0, "frequency-noise limit requires g0 != 0")?;
    ensure(s_omega_omega >= 0.0, "frequency-noise PSD must be non-negative")?;
    Ok(
        (2.0 * K_B * mode.t_bath * mode.m_eff * mode.gamma_m * s_omega_omega).sqrt()
            / (HBAR * cavity.g0.abs()),
    )
}

/// Mode temperature and occupancy including absorption heating: the bath
/// warms to T' = T + dT/dP·P_circ, the intrinsic damping follows
/// Γ_m(T') = Γ_m + dΓ/dT·(T'−T), and T_m = Γ_m(T')/(Γ_m(T') + Γ_dba)·T'.
pub fn cooling_with_heating(
    cavity: &CavityParams,
    mode: &MechMode,
    op: &OperatingPoint,
    heating: &HeatingModel,
    p_circulating: f64,
) -> Result<(f64, f64)> {
    ensure(p_circulating >= 0.0, "circulating power must be non-negative")?;
    let t_prime = mode.t_bath + heating.dt_per_circulating_watt * p_circulating;
    let gamma_prime = mode.gamma_m + heating.dgamma_dt * (t_prime - mode.t_bath);
    let warmed = MechMode::new(mode.omega_m, gamma_prime, mode.m_eff, t_prime)?;
    let (a_minus, a_plus) = scattering_rates(cavity, &warmed, op);
    let gamma_dba = a_minus - a_plus;
    let gamma_eff = gamma_prime + gamma_dba;
    if gamma_eff <= 0.0 {
        return Err(Error::Instability("heating regime".into()));
    }
    let t_mode = gamma_prime / gamma_eff * t_prime;
    let n = K_B * t_mode / (HBAR * mode.omega_m);
    Ok((t_mode, n))
}

/// Heterodyne spectrum of the light leaving the cavity: carrier weight plus
/// the two motional-sideband Lorentzians of width Γ_eff with integrated
/// photon fluxes A_−⟨n⟩ (upper) and A_+(⟨n⟩+1) (lower).
///
/// Weights are raw cavity-output fluxes (scaled by the out-coupling η_c);
/// absolute detected-flux calibration (detector efficiency, mixing gain) is
/// left to the caller.
#[derive(Debug, Clone)]
pub struct HeterodyneSidebands {
    /// Integrated upper-sideband flux A_−··⟨n⟩ (photons/s).
    pub upper_weight: f64,
    /// Integrated lower-sideband flux A_+·(⟨n⟩+1) (photons/s).
    pub lower_weight: f64,
    /// Carrier delta-function weight (photons/s), reported separately since a
    /// delta cannot live on a sampled PSD.
    pub carrier_weight: f64,
    /// Upper sideband lineshape sampled around ω_l + Ω_m.
    pub upper: Spectrum,
    /// Lower sideband lineshape sampled around ω_l − Ω_m.
    pub lower: Spectrum,
}

/// Compute the heterodyne sideband spectra for a given occupancy ⟨n⟩.
///
/// The grids are tangent-spaced around each sideband so that trapezoid
/// integration over the returned samples recovers the weights to better than
/// 0.1%. Spectra are expressed relative to the laser frequency (ω − ω_l).
pub fn heterodyne_sidebands(
    cavity: &CavityParams,
    mode: &MechMode,
    op: &OperatingPoint,
    drive: &Drive,
    n_occ: f64,
) -> Result<HeterodyneSidebands> {
    ensure(n_occ >= 0.0, "occupancy must be non-negative")?;
    let eff = effective_oscillator(cavity, mode, op);
    if eff.gamma_eff <= 0.0 {
        return Err(Error::Instability("Γ_eff ≤ 0: no stationary sidebands".into()));
    }
    let (a_minus, a_plus) = scattering_rates(cavity, mode, op);
    let upper_weight = cavity.eta_c * a_minus * n_occ;
    let lower_weight = cavity.eta_c * a_plus * (n_occ + 1.0);
    let delta = op.detuning_eff;
    let c2 = cavity.half_kappa().powi(2);
    let flux = drive.photon_flux();
    let carrier_weight = cavity.eta_c
        * (1.0 / cavity.eta_c - (1.0 - cavity.eta_c) * cavity.kappa * cavity.kappa
            / (delta * delta + c2))
        * flux;

    let gamma = eff.gamma_eff;
    let make = |center: f64, weight: f64| -> Result<Spectrum> {
        // ω = center + (Γ/2)·tan θ spacing makes the Lorentzian integrand
        // uniform in θ; the point count keeps the trapezoid error of the
        // outermost (widest) intervals below the 0.1% weight-recovery target.
        let n_pts = 20_001usize;
        let theta_max = (4000.0_f64).atan();
        let mut grid = Vec::with_capacity(n_pts);
        let mut vals = Vec::with_capacity(n_pts);
        for i in 0..n_pts {
            let theta = -theta_max + 2.0 * theta_max * i as f64 / (n_pts - 1) as f64;
            let w = center + 0.5 * gamma * theta.tan();
            grid.push(w);
            vals.push(weight * lorentzian(w - center, gamma));
        }
        Spectrum::new(grid, vals, SpectrumUnit::PhotonFluxDensity, SpectrumKind::OneSided)
    };
    let upper = make(mode.omega_m, upper_weight)?;
    let lower = make(-mode.omega_m, lower_weight)?;
    Ok(HeterodyneSidebands { upper_weight, lower_weight, carrier_weight, upper, lower })
}

/// Unit-area Lorentzian of FWHM γ: (γ/2π)/(x² + (γ/2)²).
fn lorentzian(x: f64, gamma: f64) -> f64 {
    gamma / crate::constants::TWO_PI / (x * x + 0.25 * gamma * gamma)
}

/// Power transmission of a weak probe offset by Ω from the coupling laser:
/// T_p = |1 − (1 + i f(Ω)) η_c κ / (−i(Δ̄+Ω) + κ/2 + 2Δ̄ f(Ω))|²
/// with f(Ω) = ħ g0² ā² χ(Ω)/(i(Δ̄−Ω) + κ/2).
pub fn omit_transmission(
    cavity: &CavityParams,
    mode: &MechMode,
    op: &OperatingPoint,
    omega_probe_offset: f64,
) -> f64 {
    let delta = op.detuning_eff;
    let omega = omega_probe_offset;
    let c = cavity.half_kappa();
    let chi = bare_susceptibility(mode, omega);
    let f = HBAR * cavity.g0 * cavity.g0 * op.photons() * chi
        / Complex64::new(c, delta - omega);
    let numer = (Complex64::new(1.0, 0.0) + Complex64::i() * f)
        * (cavity.eta_c * cavity.kappa);
    let denom = Complex64::new(c, -(delta + omega)) + 2.0 * delta * f;
    (Complex64::new(1.0, 0.0) - numer / denom).norm_sqr()
}

/// Resolved-sideband, high-Q simplification of the probe transmission at
/// Δ̄ = −Ω_m, directly analogous to electromagnetically induced transparency:
/// t = 1 − η_c κ / (−iΔ' + κ/2 + ā² g0² x_ZPF²/(−iΔ' + Γ_m/2)), Δ' = Ω − Ω_m.
pub fn omit_transmission_eit(
    cavity: &CavityParams,
    mode: &MechMode,
    op: &OperatingPoint,
    omega_probe_offset: f64,
) -> f64 {
    let dprime = omega_probe_offset - mode.omega_m;
    let x2 = x_zpf(mode).powi(2);
    let coupling = op.photons() * cavity.g0 * cavity.g0 * x2;
    let denom = Complex64::new(cavity.half_kappa(), -dprime)
        + coupling / Complex64::new(0.5 * mode.gamma_m, -dprime);
    (Complex64::new(1.0, 0.0) - cavity.eta_c * cavity.kappa / denom).norm_sqr()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::TWO_PI;
    use crate::math::quad::trapezoid;

    fn rsb_system(ratio: f64) -> (CavityParams, MechMode) {
        let mode = MechMode::new(TWO_PI * 73.5e6, TWO_PI * 10e3, 10e-12, 300.0).unwrap();
        let cavity =
            CavityParams::wgm(TWO_PI * 2.8177e14, mode.omega_m * ratio, 0.5, 23.5e-6).unwrap();
        (cavity, mode)
    }

    #[test]
    fn scattering_rate_structure() {
        let (cavity, mode) = rsb_system(1.0 / 20.0);
        // Peak anti-Stokes rate at Δ̄ = −Ω_m equals 4 g0² ā² x_ZPF²/κ.
        let op = OperatingPoint::from_photons(1e4, -mode.omega_m).unwrap();
        let (a_minus, a_plus) = scattering_rates(&cavity, &mode, &op);
        let x2 = x_zpf(&mode).powi(2);
        let peak = 4.0 * cavity.g0 * cavity.g0 * op.photons() * x2 / cavity.kappa;
        assert!((a_minus - peak).abs() / peak < 1e-12);
        // A_−/A_+ = (4Ω² + (κ/2)²)/(κ/2)² = 6401 at κ/Ω_m = 1/20.
        assert!((a_minus / a_plus - 6401.0).abs() < 1e-6 * 6401.0);
        // Δ̄ = 0: no net cooling.
        let op0 = OperatingPoint::from_photons(1e4, 0.0).unwrap();
        let (m0, p0) = scattering_rates(&cavity, &mode, &op0);
        assert!((m0 - p0).abs() <= 1e-15 * m0);
    }

    #[test]
    fn gamma_dba_equals_rate_difference() {
        // Algebraic identity shared with dynba, to 1e-12 relative.
        let (cavity, mode) = rsb_system(0.3);
        for det in [-1.5, -1.0, -0.3, 0.4, 1.2] {
            let op = OperatingPoint::from_photons(5e5, det * mode.omega_m).unwrap();
            let (a_minus, a_plus) = scattering_rates(&cavity, &mode, &op);
            let (gamma_dba, _) =
                crate::dynba::backaction_rates(&cavity, &mode, &op, mode.omega_m);
            let diff = a_minus - a_plus;
            assert!(
                (gamma_dba - diff).abs() <= 1e-12 * gamma_dba.abs().max(diff.abs()),
                "identity broken at det {det}"
            );
        }
    }

    #[test]
    fn quantum_limit_rsb_exact_and_doppler() {
        // κ/Ω_m = 1/20, Δ̄ = −Ω_m: n_min matches κ²/16Ω_m² = 1.5625e-4 within 1%.
        let (cavity, mode) = rsb_system(1.0 / 20.0);
        let op = OperatingPoint::from_photons(1e4, -mode.omega_m).unwrap();
        let n_min = quantum_limit(&cavity, &mode, &op).unwrap();
        let asymptote = rsb_limit(&cavity, &mode);
        assert!((asymptote - 1.5625e-4).abs() < 1e-12);
        assert!((n_min - asymptote).abs() / asymptote < 0.01, "{n_min} vs {asymptote}");

        // Unresolved regime κ/Ω_m = 20: optimal detuning lands within 10% of κ/4Ω_m.
        let (cavity, mode) = rsb_system(20.0);
        let best = (1..400)
            .map(|i| {
                let det = -2.0 * cavity.kappa * i as f64 / 400.0;
                let op = OperatingPoint::from_photons(1e4, det).unwrap();
                quantum_limit(&cavity, &mode, &op).unwrap_or(f64::INFINITY)
            })
            .fold(f64::INFINITY, f64::min);
        let doppler = doppler_limit(&cavity, &mode);
        assert!((best - doppler).abs() / doppler < 0.10, "{best} vs {doppler}");
    }

    #[test]
    fn quantum_limit_device_anchor() {
        // Ω_m/κ ≈ 23 device: n_min ≈ 1/(16·23²) ≈ 1.2e-4.
        let mode = MechMode::new(TWO_PI * 73.5e6, TWO_PI * 35e3, 10e-12, 300.0).unwrap();
        let cavity =
            CavityParams::wgm(TWO_PI * 2.8177e14, TWO_PI * 3.2e6, 0.5, 23.5e-6).unwrap();
        let op = OperatingPoint::from_photons(1e4, -mode.omega_m).unwrap();
        let n_min = quantum_limit(&cavity, &mode, &op).unwrap();
        assert!((n_min - 1.2e-4).abs() / 1.2e-4 < 0.05, "n_min = {n_min}");
        // Heating side errors.
        let blue = OperatingPoint::from_photons(1e4, mode.omega_m).unwrap();
        assert!(quantum_limit(&cavity, &mode, &blue).is_err());
    }

    #[test]
    fn final_occupancy_limits() {
        let (cavity, mode) = rsb_system(1.0 / 20.0);
        // No light → n_final = n_bath.
        let dark = OperatingPoint::from_photons(0.0, -mode.omega_m).unwrap();
        let r = final_occupancy(&cavity, &mode, &dark, None).unwrap();
        let bath = n_bath(&mode).unwrap();
        assert!((r.n_final - bath).abs() / bath < 1e-12);
        assert_eq!(r.gamma_dba, 0.0);
    }

    #[test]
    fn final_occupancy_cryogenic_anchor() {
        // Ω_m/2π = 65.2 MHz, T = 1.7 K (n_bath ≈ 550), Γ_eff/Γ_m ≈ 8.7 → n ≈ 63.
        let mode = MechMode::new(TWO_PI * 65.2e6, TWO_PI * 10e3, 5.6e-12, 1.7).unwrap();
        let cavity =
            CavityParams::wgm(TWO_PI * 3.845e14, TWO_PI * 19e6, 0.65, 26e-6).unwrap();
        // Find the photon number that yields Γ_eff/Γ_m = 8.7 at Δ̄ = −Ω_m.
        let op1 = OperatingPoint::from_photons(1.0, -mode.omega_m).unwrap();
        let (am1, ap1) = scattering_rates(&cavity, &mode, &op1);
        let per_photon = am1 - ap1;
        let photons = 7.7 * mode.gamma_m / per_photon;
        let op = OperatingPoint::from_photons(photons, -mode.omega_m).unwrap();
        let r = final_occupancy(&cavity, &mode, &op, None).unwrap();
        assert!((r.n_final - 63.0).abs() / 63.0 < 0.05, "n = {}", r.n_final);
        assert!(r.n_final >= r.n_min_quantum);
    }

    #[test]
    fn room_temperature_run_frequency_noise_dominates() {
        // T = 300 K, Ω_m/2π = 40.6 MHz, Γ_m/2π = 1.3 kHz, Γ_dba/2π = 119 kHz:
        // bath term ≈ 1.66e3, far below the frequency-noise-limited ≈ 5900.
        let mode = MechMode::new(TWO_PI * 40.6e6, TWO_PI * 1.3e3, 10e-12, 300.0).unwrap();
        let cavity =
            CavityParams::wgm(TWO_PI * 3.0e14, TWO_PI * 5.8e6, 0.5, 38e-6).unwrap();
        let op1 = OperatingPoint::from_photons(1.0, -mode.omega_m).unwrap();
        let (am1, ap1) = scattering_rates(&cavity, &mode, &op1);
        let photons = TWO_PI * 119e3 / (am1 - ap1);
        let op = OperatingPoint::from_photons(photons, -mode.omega_m).unwrap();
        let r = final_occupancy(&cavity, &mode, &op, None).unwrap();
        let bath_term = mode.gamma_m / (mode.gamma_m + r.gamma_dba) * n_bath(&mode).unwrap();
        assert!((bath_term - 1.66e3).abs() / 1.66e3 < 0.05, "bath term {bath_term}");
        // The frequency-noise floor for this laser dominates the budget.
        let s_ww = (4e-6 * mode.omega_m).powi(2);
        let floor = frequency_noise_limit(&cavity, &mode, s_ww).unwrap();
        assert!(floor > 3.0 * bath_term);
    }

    #[test]
    fn frequency_noise_force_properties() {
        let (cavity, mode) = rsb_system(1.0 / 20.0);
        let op = OperatingPoint::from_photons(1e5, -mode.omega_m).unwrap();
        assert_eq!(frequency_noise_force(&cavity, &op, 0.0, mode.omega_m), 0.0);
        let resonant = OperatingPoint::from_photons(1e5, 0.0).unwrap();
        assert_eq!(
            frequency_noise_force(&cavity, &resonant, 1.0, mode.omega_m),
            0.0
        );
        // RSB shortcut within 10% of the exact form at κ/Ω_m = 1/20, Δ̄ = −Ω_m.
        let p_in = 1e-4;
        let omega_l = cavity.omega_c - mode.omega_m;
        let drive = Drive::new(p_in, omega_l, -mode.omega_m).unwrap();
        let c2 = cavity.half_kappa().powi(2);
        let photons = cavity.kappa_ex() * drive.photon_flux()
            / (mode.omega_m * mode.omega_m + c2);
        let op = OperatingPoint::from_photons(photons, -mode.omega_m).unwrap();
        let s_ww = (TWO_PI * 200.0_f64).powi(2);
        let exact = frequency_noise_force(&cavity, &op, s_ww, mode.omega_m);
        let shortcut = frequency_noise_force_rsb(&cavity, &drive, s_ww, mode.omega_m);
        assert!((exact - shortcut).abs() / exact < 0.10, "{exact} vs {shortcut}");
    }

    #[test]
    fn frequency_noise_floor_anchor_5200() {
        // §-quoted run: T = 300 K, m_eff = 10 ng, Γ_m/2π = 1.3 kHz,
        // √(S_ωω/Ω_m²) = 4 μrad/√Hz, Ω_m/2π = 40.6 MHz, R = 38 μm,
        // ω/2π ≈ 300 THz → n_min ≈ 5200 (tolerance 10%).
        let mode = MechMode::new(TWO_PI * 40.6e6, TWO_PI * 1.3e3, 10e-12, 300.0).unwrap();
        let cavity = CavityParams::wgm(TWO_PI * 3.0e14, TWO_PI * 5.8e6, 0.5, 38e-6).unwrap();
        let s_ww = (4e-6 * mode.omega_m).powi(2);
        let n = frequency_noise_limit(&cavity, &mode, s_ww).unwrap();
        assert!((n - 5200.0).abs() / 5200.0 < 0.10, "n_fn = {n}");
        // Scalings.
        assert_eq!(frequency_noise_limit(&cavity, &mode, 0.0).unwrap(), 0.0);
        let hot = MechMode::new(mode.omega_m, mode.gamma_m, mode.m_eff, 4.0 * 300.0).unwrap();
        let n_hot = frequency_noise_limit(&cavity, &hot, s_ww).unwrap();
        assert!((n_hot - 2.0 * n).abs() / n < 1e-12, "√T scaling");
    }

    #[test]
    fn heating_model_reduces_and_bends() {
        let mode = MechMode::new(TWO_PI * 65.1e6, TWO_PI * 30e3, 5.6e-12, 1.6).unwrap();
        let cavity = CavityParams::wgm(TWO_PI * 3.845e14, TWO_PI * 19e6, 0.65, 26e-6).unwrap();
        let op = OperatingPoint::from_photons(2e5, -mode.omega_m).unwrap();
        // No heating reduces to the plain mode temperature.
        let none = HeatingModel::new(0.0, 0.0).unwrap();
        let (t0, _) = cooling_with_heating(&cavity, &mode, &op, &none, 1.0).unwrap();
        let eff = effective_oscillator(&cavity, &mode, &op);
        let plain = crate::dynba::mode_temperature(&mode, eff.gamma_eff).unwrap();
        assert!((t0 - plain).abs() / plain < 1e-12);

        // With 5 K/W and dΓ_m/dT = 2π·16 kHz/K the cooling curve bends upward
        // at high circulating power: T_m(P) has an interior minimum.
        let h = HeatingModel::new(5.0, TWO_PI * 16e3).unwrap();
        let temp_at = |p_circ: f64| {
            // Photon number proportional to circulating power.
            let photons = 2e5 * p_circ / 1e-3;
            let op = OperatingPoint::from_photons(photons, -mode.omega_m).unwrap();
            cooling_with_heating(&cavity, &mode, &op, &h, p_circ).unwrap().0
        };
        let p_best = crate::math::roots::golden_min(&temp_at, 1e-6, 1.0, 1e-6);
        let t_best = temp_at(p_best);
        assert!(t_best < temp_at(1e-6));
        assert!(t_best < temp_at(1.0));
        // Golden search resolves the minimum to 1e-3 relative.
        let probe = temp_at(p_best * 1.001).min(temp_at(p_best * 0.999));
        assert!(t_best <= probe * (1.0 + 1e-3));
    }

    #[test]
    fn heterodyne_weights_and_ratios() {
        let (cavity, mode) = rsb_system(1.0 / 20.0);
        let p_in = 1e-4;
        let omega_l = cavity.omega_c - mode.omega_m;
        let drive = Drive::new(p_in, omega_l, -mode.omega_m).unwrap();
        let op = OperatingPoint::from_photons(1e4, -mode.omega_m).unwrap();

        // ⟨n⟩ ≫ 1 in deep RSB: asymmetry beyond 15 dB.
        let h = heterodyne_sidebands(&cavity, &mode, &op, &drive, 5000.0).unwrap();
        let ratio_db = 10.0 * (h.upper_weight / h.lower_weight).log10();
        assert!(ratio_db > 15.0, "asymmetry {ratio_db} dB");

        // ⟨n⟩ → 0: upper/lower → 0 (the residual asymmetry is fully quantum).
        let h0 = heterodyne_sidebands(&cavity, &mode, &op, &drive, 0.0).unwrap();
        assert_eq!(h0.upper_weight, 0.0);
        assert!(h0.lower_weight > 0.0);

        // Δ̄ = 0: ratio = ⟨n⟩/(⟨n⟩+1) exactly.
        let op0 = OperatingPoint::from_photons(1e4, 0.0).unwrap();
        let d0 = Drive::new(p_in, cavity.omega_c, 0.0).unwrap();
        let n = 7.0;
        let h = heterodyne_sidebands(&cavity, &mode, &op0, &d0, n).unwrap();
        let ratio = h.upper_weight / h.lower_weight;
        assert!((ratio - n / (n + 1.0)).abs() / ratio < 1e-12);
    }

    #[test]
    fn heterodyne_lineshape_integrates_to_weights() {
        let (cavity, mode) = rsb_system(1.0 / 20.0);
        let drive = Drive::new(1e-4, cavity.omega_c - mode.omega_m, -mode.omega_m).unwrap();
        let op = OperatingPoint::from_photons(1e4, -mode.omega_m).unwrap();
        let h = heterodyne_sidebands(&cavity, &mode, &op, &drive, 400.0).unwrap();
        let up = trapezoid(h.upper.grid(), h.upper.values());
        let dn = trapezoid(h.lower.grid(), h.lower.values());
        assert!(
            (up - h.upper_weight).abs() / h.upper_weight < 1e-3,
            "upper integral {up} vs {}",
            h.upper_weight
        );
        assert!(
            (dn - h.lower_weight).abs() / h.lower_weight < 1e-3,
            "lower integral {dn} vs {}",
            h.lower_weight
        );
    }

    #[test]
    fn omit_coupling_off_reduces_to_bare_lorentzian() {
        let (cavity, mode) = rsb_system(1.0 / 8.0);
        let dark = OperatingPoint::from_photons(0.0, -mode.omega_m).unwrap();
        // At probe resonance (Δ̄ + Ω = 0) and critical coupling: extinction.
        let t = omit_transmission(&cavity, &mode, &dark, mode.omega_m);
        assert!(t < 1e-12, "T_p = {t}");
        // Away from probe resonance the bare Lorentzian dip reappears.
        let t_off = omit_transmission(&cavity, &mode, &dark, mode.omega_m + 3.0 * cavity.kappa);
        let c2 = cavity.half_kappa().powi(2);
        let expect = 1.0
            - 4.0 * cavity.eta_c * (1.0 - cavity.eta_c) * c2 * 4.0
                / ((3.0 * cavity.kappa).powi(2) + 4.0 * c2)
            - (1.0 - 2.0 * cavity.eta_c).powi(2) * 0.0;
        // Direct evaluation of |1 − η κ/(−iΔp + κ/2)|² at Δp = 3κ.
        let dp = 3.0 * cavity.kappa;
        let amp = Complex64::new(1.0, 0.0)
            - cavity.eta_c * cavity.kappa / Complex64::new(cavity.half_kappa(), -dp);
        assert!((t_off - amp.norm_sqr()).abs() < 1e-12);
        let _ = expect;
    }

    #[test]
    fn omit_window_opens_with_power() {
        // Transparency at Ω = Ω_m rises toward 1 as the coupling power grows.
        let mode = MechMode::new(TWO_PI * 40e6, TWO_PI * 1.3e3, 10e-12, 300.0).unwrap();
        let cavity = CavityParams::wgm(TWO_PI * 2.8177e14, TWO_PI * 5e6, 0.5, 40e-6).unwrap();
        let mut prev = omit_transmission(
            &cavity,
            &mode,
            &OperatingPoint::from_photons(0.0, -mode.omega_m).unwrap(),
            mode.omega_m,
        );
        assert!(prev < 1e-12);
        for photons in [1e2, 1e3, 1e4, 1e5, 1e6] {
            let op = OperatingPoint::from_photons(photons, -mode.omega_m).unwrap();
            let t = omit_transmission(&cavity, &mode, &op, mode.omega_m);
            assert!(t > prev, "window must deepen with power");
            prev = t;
        }
        assert!(prev > 0.95, "strong coupling laser should give near-unity T_p");
    }

    #[test]
    fn omit_bounded_in_passive_regime() {
        let mode = MechMode::new(TWO_PI * 40e6, TWO_PI * 1.3e3, 10e-12, 300.0).unwrap();
        let cavity = CavityParams::wgm(TWO_PI * 2.8177e14, TWO_PI * 5e6, 0.5, 40e-6).unwrap();
        let op = OperatingPoint::from_photons(3e5, -mode.omega_m).unwrap();
        for i in 0..2000 {
            let omega = mode.omega_m + (i as f64 - 1000.0) / 1000.0 * 3.0 * cavity.kappa;
            let t = omit_transmission(&cavity, &mode, &op, omega);
            assert!((-1e-9..=1.0 + 1e-9).contains(&t), "T_p = {t} out of range");
        }
    }

    #[test]
    fn omit_eit_limit_matches_exact() {
        // κ/Ω_m ≤ 1/10, |Ω − Ω_m| ≤ 10 Γ_m: simplified EIT formula within 2%.
        let mode = MechMode::new(TWO_PI * 40e6, TWO_PI * 1.3e3, 10e-12, 300.0).unwrap();
        let cavity =
            CavityParams::wgm(TWO_PI * 2.8177e14, mode.omega_m / 10.0, 0.5, 40e-6).unwrap();
        for photons in [1e3, 3e4, 3e5] {
            let op = OperatingPoint::from_photons(photons, -mode.omega_m).unwrap();
            for i in 0..=40 {
                let omega = mode.omega_m + (i as f64 - 20.0) / 2.0 * mode.gamma_m;
                let exact = omit_transmission(&cavity, &mode, &op, omega);
                let eit = omit_transmission_eit(&cavity, &mode, &op, omega);
                assert!(
                    (exact - eit).abs() <= 0.02,
                    "photons {photons}, offset {} Γ_m: {exact} vs {eit}",
                    (omega - mode.omega_m) / mode.gamma_m
                );
            }
        }
    }
}
