//! Optical response of a driven cavity with prescribed (non-backacting)
//! boundary motion, plus interferometric error signals.

use num_complex::Complex64;

use crate::error::{ensure, Error, Result};
use crate::math::bessel;
use crate::model::{CavityParams, Drive};

/// Carrier and first-order motional sidebands of the intracavity field.
#[derive(Debug, Clone, Copy)]
pub struct SidebandPair {
    /// Carrier amplitude a_0 (√photon).
    pub carrier: Complex64,
    /// Upper (anti-Stokes) sideband amplitude at ω_l + Ω_m.
    pub anti_stokes: Complex64,
    /// Lower (Stokes) sideband amplitude at ω_l − Ω_m.
    pub stokes: Complex64,
}

/// In-phase and quadrature coefficients of the fractional photon-number
/// modulation per unit displacement amplitude (1/m):
/// |a(t)|²/|a_0|² ≈ 1 + in_phase·x0·sin(Ω_m t) + quadrature·x0·cos(Ω_m t).
#[derive(Debug, Clone, Copy)]
pub struct ModulationQuadratures {
    pub in_phase: f64,
    pub quadrature: f64,
}

/// Steady intracavity field ā = √(η_c κ) s̄_in / (−iΔ + κ/2).
///
/// |ā|² is the intracavity photon number.
pub fn steady_field(cavity: &CavityParams, drive: &Drive) -> Complex64 {
    let s_in = drive.photon_flux().sqrt();
    let denom = Complex64::new(cavity.half_kappa(), -drive.detuning);
    (cavity.kappa_ex()).sqrt() * s_in / denom
}

/// Intracavity photon number at the drive's detuning.
pub fn intracavity_photons(cavity: &CavityParams, drive: &Drive) -> f64 {
    steady_field(cavity, drive).norm_sqr()
}

/// First-order sidebands for boundary motion x(t) = x0 sin(Ω_m t), valid for
/// small modulation index |β| = |g0 x0/Ω_m| < 0.1.
pub fn sideband_amplitudes(
    cavity: &CavityParams,
    drive: &Drive,
    x0: f64,
    omega_mech: f64,
) -> Result<SidebandPair> {
    ensure(omega_mech > 0.0, "mechanical frequency must be positive")?;
    let beta = cavity.g0 * x0 / omega_mech;
    if beta.abs() >= 0.1 {
        return Err(Error::ModulationTooLarge { beta: beta.abs() });
    }
    let carrier = steady_field(cavity, drive);
    let delta = drive.detuning;
    let hk = cavity.half_kappa();
    let pre = 0.5 * cavity.g0 * x0 * carrier;
    let upper = Complex64::new(hk, -(delta + omega_mech));
    let lower = Complex64::new(hk, -(delta - omega_mech));
    Ok(SidebandPair {
        carrier,
        anti_stokes: pre / upper,
        stokes: -pre / lower,
    })
}

/// Photon-number modulation quadratures per unit displacement, the bracketed
/// Lorentzian sums of the linearized intracavity-energy expression.
pub fn photon_number_modulation(
    cavity: &CavityParams,
    drive: &Drive,
    omega_mech: f64,
) -> ModulationQuadratures {
    let delta = drive.detuning;
    let c = cavity.half_kappa();
    let up = (delta + omega_mech).powi(2) + c * c;
    let dn = (delta - omega_mech).powi(2) + c * c;
    let in_phase = cavity.g0 * ((delta + omega_mech) / up + (delta - omega_mech) / dn);
    let quadrature = cavity.g0 * (c / up - c / dn);
    ModulationQuadratures { in_phase, quadrature }
}

/// Phase lag of the intracavity-energy modulation behind the boundary motion,
/// mapped to (−π, π].
///
/// Time convention: |a(t)|² modulation ∝ sin(Ω_m t − φ_lag) for motion
/// x(t) = x0 sin(Ω_m t), so at Δ = ±Ω_m ≫ κ (with g0 < 0) the lag is ∓π/2.
pub fn phase_lag(cavity: &CavityParams, detuning: f64, omega_mech: f64) -> Result<f64> {
    if detuning == 0.0 {
        return Err(Error::Domain(
            "phase lag is discontinuous at zero detuning (the energy-modulation \
             amplitude crosses zero)"
                .into(),
        ));
    }
    let c = cavity.half_kappa();
    // The in-phase/quadrature pair equals a positive factor times
    // g0·Δ·(Δ² + (κ/2)² − Ω² − iΩκ); the lag is minus its argument.
    let z = Complex64::new(
        detuning * detuning + c * c - omega_mech * omega_mech,
        -omega_mech * cavity.kappa,
    ) * (cavity.g0 * detuning);
    let mut lag = -z.arg();
    if lag <= -std::f64::consts::PI {
        lag += 2.0 * std::f64::consts::PI;
    }
    Ok(lag)
}

/// Low-frequency (DC) transmission past the cavity while the boundary
/// oscillates with modulation index β = g0 x0/Ω_m:
///
/// T = 1 − η_c(1−η_c) Σ_n κ² J_n(β)² / ((Δ + nΩ_m)² + (κ/2)²).
///
/// The Bessel series is truncated once Σ J_n² ≥ 1 − 1e-10. This is the exact
/// DC term; a finite detector bandwidth is not modeled.
pub fn bessel_transmission(
    cavity: &CavityParams,
    beta: f64,
    detuning: f64,
    omega_mech: f64,
) -> f64 {
    let c = cavity.half_kappa();
    let k2 = cavity.kappa * cavity.kappa;
    let mut n_max = beta.abs().ceil() as usize + 20;
    let j = loop {
        let j = bessel::jn_array(n_max, beta);
        let sum = j[0] * j[0] + 2.0 * j.iter().skip(1).map(|v| v * v).sum::<f64>();
        if sum >= 1.0 - 1e-10 || n_max > 500 {
            break j;
        }
        n_max += 10;
    };
    let mut dip = j[0] * j[0] * k2 / (detuning * detuning + c * c);
    for (n, jn) in j.iter().enumerate().skip(1) {
        let w = jn * jn * k2;
        let up = (detuning + n as f64 * omega_mech).powi(2) + c * c;
        let dn = (detuning - n as f64 * omega_mech).powi(2) + c * c;
        dip += w / up + w / dn;
    }
    1.0 - cavity.eta_c * (1.0 - cavity.eta_c) * dip
}

/// Dispersive homodyne/polarization error signal
/// h(Δ) = 2η_c κ Δ/(Δ² + (κ/2)²) · √(P_cav P_LO).
pub fn homodyne_error_signal(
    cavity: &CavityParams,
    detuning: f64,
    p_cav: f64,
    p_lo: f64,
) -> Result<f64> {
    ensure(p_cav >= 0.0 && p_lo >= 0.0, "powers must be non-negative")?;
    let c = cavity.half_kappa();
    Ok(2.0 * cavity.eta_c * cavity.kappa * detuning / (detuning * detuning + c * c)
        * (p_cav * p_lo).sqrt())
}

/// Displacement-to-signal gain |∂h/∂x| of the homodyne receiver locked at
/// Δ̄ = 0, including the cavity cutoff at κ/2 (W/m).
pub fn homodyne_displacement_gain(
    cavity: &CavityParams,
    p_cav: f64,
    p_lo: f64,
    omega: f64,
) -> Result<f64> {
    ensure(p_cav >= 0.0 && p_lo >= 0.0, "powers must be non-negative")?;
    let cutoff = 1.0 + (omega / cavity.half_kappa()).powi(2);
    Ok(8.0 * cavity.eta_c * cavity.g0.abs() / cavity.kappa * (p_cav * p_lo / cutoff).sqrt())
}

/// Sensitivity penalty of the Pound-Drever-Hall readout relative to the
/// quantum-limited phase measurement:
/// 1 + η_c + (1 − 2η_c)²/(2 J_1(β)²).
pub fn pdh_penalty(eta_c: f64, beta_mod: f64) -> Result<f64> {
    ensure(eta_c > 0.0 && eta_c <= 1.0, "eta_c must lie in (0, 1]")?;
    // First zero of J_1.
    ensure(
        beta_mod > 0.0 && beta_mod < 3.8317059702075125,
        "modulation depth must lie in (0, first zero of J_1)",
    )?;
    let j1 = bessel::j1(beta_mod);
    if j1 == 0.0 {
        return Err(Error::Numerical("J_1(beta) vanished; penalty singular".into()));
    }
    Ok(1.0 + eta_c + (1.0 - 2.0 * eta_c).powi(2) / (2.0 * j1 * j1))
}

/// Displacement equivalent to a laser frequency modulation of depth δω:
/// δx = δω/|g0|. Used to calibrate measured spectra absolutely.
pub fn calibrate_modulation(cavity: &CavityParams, delta_omega: f64) -> Result<f64> {
    ensure(cavity.g0 != 0.0, "calibration requires non-zero g0")?;
    Ok(delta_omega / cavity.g0.abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::{HBAR, TWO_PI};
    use crate::model::CavityParams;

    fn cav(kappa_hz: f64, eta_c: f64) -> CavityParams {
        CavityParams::wgm(TWO_PI * 2.8177e14, TWO_PI * kappa_hz, eta_c, 25e-6).unwrap()
    }

    fn drive(p_in: f64, cavity: &CavityParams, detuning: f64) -> Drive {
        Drive::new(p_in, cavity.omega_c + detuning, detuning).unwrap()
    }

    #[test]
    fn steady_field_on_resonance() {
        let c = cav(8e6, 0.5);
        let d = drive(1e-3, &c, 0.0);
        let n = intracavity_photons(&c, &d);
        // Δ=0, η_c=1/2 → |a|² = 2|s̄_in|²/κ.
        let expect = 2.0 * d.photon_flux() / c.kappa;
        assert!((n - expect).abs() / expect < 1e-14);
        // Half-width: |a|² halves at Δ = ±κ/2 (at fixed laser frequency).
        for sign in [-1.0, 1.0] {
            let dd = Drive::new(1e-3, d.omega_l, sign * c.half_kappa()).unwrap();
            assert!((intracavity_photons(&c, &dd) - 0.5 * n).abs() / n < 1e-14);
        }
    }

    #[test]
    fn steady_field_closed_form_photon_number() {
        // Independent closed form |a|² = 4 η_c P_in/(ħ ω κ) at Δ = 0.
        let c = cav(8e6, 0.5);
        let d = drive(1e-3, &c, 0.0);
        let n = intracavity_photons(&c, &d);
        let expect = 4.0 * c.eta_c * d.p_in / (HBAR * d.omega_l * c.kappa);
        assert!((n - expect).abs() / expect < 1e-13, "n = {n}, expect = {expect}");
    }

    #[test]
    fn sidebands_vanish_without_motion() {
        let c = cav(8e6, 0.5);
        let d = drive(1e-3, &c, -0.3 * c.kappa);
        let s = sideband_amplitudes(&c, &d, 0.0, TWO_PI * 50e6).unwrap();
        assert_eq!(s.anti_stokes.norm(), 0.0);
        assert_eq!(s.stokes.norm(), 0.0);
        assert!(s.carrier.norm() > 0.0);
    }

    #[test]
    fn sideband_ratio_oracle() {
        // |anti|²/|stokes|² = ((Δ−Ω)² + (κ/2)²)/((Δ+Ω)² + (κ/2)²).
        let c = cav(3.2e6, 0.5);
        let om = TWO_PI * 73.5e6;
        let d = drive(1e-6, &c, -om);
        let x0 = 0.05 * om / c.g0.abs(); // β = 0.05
        let s = sideband_amplitudes(&c, &d, x0, om).unwrap();
        let got = s.anti_stokes.norm_sqr() / s.stokes.norm_sqr();
        let hk2 = c.half_kappa().powi(2);
        let want = ((d.detuning - om).powi(2) + hk2) / ((d.detuning + om).powi(2) + hk2);
        assert!((got - want).abs() / want < 1e-12);
        assert!(got > 1e2, "anti-Stokes should dominate on the red side");
    }

    #[test]
    fn sidebands_symmetric_at_zero_detuning() {
        let c = cav(8e6, 0.5);
        let om = TWO_PI * 50e6;
        let d = drive(1e-3, &c, 0.0);
        let x0 = 0.01 * om / c.g0.abs();
        let s = sideband_amplitudes(&c, &d, x0, om).unwrap();
        assert!((s.anti_stokes.norm() - s.stokes.norm()).abs() / s.stokes.norm() < 1e-14);
    }

    #[test]
    fn sidebands_reject_large_modulation() {
        let c = cav(8e6, 0.5);
        let om = TWO_PI * 50e6;
        let d = drive(1e-3, &c, 0.0);
        let x0 = 0.5 * om / c.g0.abs();
        match sideband_amplitudes(&c, &d, x0, om) {
            Err(Error::ModulationTooLarge { .. }) => {}
            other => panic!("expected ModulationTooLarge, got {other:?}"),
        }
    }

    #[test]
    fn modulation_vanishes_at_line_center() {
        let c = cav(8e6, 0.5);
        let d = drive(1e-3, &c, 0.0);
        let m = photon_number_modulation(&c, &d, TWO_PI * 50e6);
        assert!(m.in_phase.abs() < 1e-30);
        assert!(m.quadrature.abs() < 1e-30);
    }

    #[test]
    fn modulation_adiabatic_limit() {
        // κ → ∞ at fixed Δ kills the quadrature component.
        let om = TWO_PI * 50e6;
        let det = -TWO_PI * 20e6;
        let c1 = cav(1e9, 0.5);
        let c2 = cav(1e11, 0.5);
        let d1 = drive(1e-3, &c1, det);
        let d2 = drive(1e-3, &c2, det);
        let q1 = photon_number_modulation(&c1, &d1, om).quadrature.abs();
        let q2 = photon_number_modulation(&c2, &d2, om).quadrature.abs();
        assert!(q2 < 1e-3 * q1, "quadrature must die off with 1/κ³: {q1} vs {q2}");
    }

    #[test]
    fn modulation_term_by_term_oracle() {
        // Δ = −Ω_m, κ = Ω_m/10: compare against the bracketed sums assembled
        // term by term.
        let om = TWO_PI * 50e6;
        let c = CavityParams::wgm(TWO_PI * 2.8e14, om / 10.0, 0.5, 25e-6).unwrap();
        let d = drive(1e-3, &c, -om);
        let m = photon_number_modulation(&c, &d, om);
        let hk = c.half_kappa();
        let lup = (d.detuning + om) / ((d.detuning + om).powi(2) + hk * hk);
        let ldn = (d.detuning - om) / ((d.detuning - om).powi(2) + hk * hk);
        let kup = hk / ((d.detuning + om).powi(2) + hk * hk);
        let kdn = hk / ((d.detuning - om).powi(2) + hk * hk);
        assert!((m.in_phase - c.g0 * (lup + ldn)).abs() <= 1e-12 * m.in_phase.abs());
        assert!((m.quadrature - c.g0 * (kup - kdn)).abs() <= 1e-12 * m.quadrature.abs());
    }

    #[test]
    fn phase_lag_quarter_wave_points() {
        // For ±Δ = Ω_m ≫ κ (g0 < 0), the lag is ∓π/2.
        let om = TWO_PI * 50e6;
        let c = CavityParams::wgm(TWO_PI * 2.8e14, om / 1e3, 0.5, 25e-6).unwrap();
        let lag_plus = phase_lag(&c, om, om).unwrap();
        let lag_minus = phase_lag(&c, -om, om).unwrap();
        assert!(
            (lag_plus + std::f64::consts::FRAC_PI_2).abs() < 2e-3,
            "lag(+Ω) = {lag_plus}"
        );
        assert!(
            (lag_minus - std::f64::consts::FRAC_PI_2).abs() < 2e-3,
            "lag(−Ω) = {lag_minus}"
        );
    }

    #[test]
    fn phase_lag_static_limit_and_zero_detuning() {
        let c = cav(8e6, 0.5);
        // Ω → 0: lag → 0 or ±π depending on sign(g0 Δ); g0 < 0, Δ > 0 → g0Δ < 0 → ±π.
        let lag = phase_lag(&c, 0.3 * c.kappa, 1e-8 * c.kappa).unwrap();
        assert!((lag.abs() - std::f64::consts::PI).abs() < 1e-6, "lag = {lag}");
        let lag = phase_lag(&c, -0.3 * c.kappa, 1e-8 * c.kappa).unwrap();
        assert!(lag.abs() < 1e-6, "lag = {lag}");
        assert!(phase_lag(&c, 0.0, c.kappa).is_err());
    }

    #[test]
    fn phase_lag_antisymmetry_pi_jump() {
        // Both modulation quadratures are odd in Δ, so the lag translates by
        // exactly π under Δ → −Δ; equivalently tan(phase_lag) is Δ-even.
        let c = cav(8e6, 0.5);
        let om = TWO_PI * 50e6;
        for det in [0.1, 0.5, 1.7, 3.0] {
            let lp = phase_lag(&c, det * c.kappa, om).unwrap();
            let lm = phase_lag(&c, -det * c.kappa, om).unwrap();
            let mut diff = (lp - lm).abs() % (2.0 * std::f64::consts::PI);
            if diff > std::f64::consts::PI {
                diff = 2.0 * std::f64::consts::PI - diff;
            }
            assert!(
                (diff - std::f64::consts::PI).abs() < 1e-12,
                "lag({det}κ) = {lp}, lag(−{det}κ) = {lm}"
            );
            assert!((lp.tan() - lm.tan()).abs() < 1e-9 * lp.tan().abs().max(1.0));
        }
    }

    #[test]
    fn transmission_single_dip_without_modulation() {
        let c = cav(3.2e6, 0.3);
        let om = TWO_PI * 73.5e6;
        let t0 = bessel_transmission(&c, 0.0, 0.0, om);
        let depth = 4.0 * c.eta_c * (1.0 - c.eta_c);
        assert!((t0 - (1.0 - depth)).abs() < 1e-12);
        // Critical coupling extinguishes the carrier completely.
        let cc = cav(3.2e6, 0.5);
        assert!(bessel_transmission(&cc, 0.0, 0.0, om).abs() < 1e-12);
    }

    #[test]
    fn transmission_multi_dip_weights() {
        // Resolved-sideband trace: dips at Δ = −nΩ_m with weights J_n(β)².
        let c = cav(3.2e6, 0.5);
        let om = TWO_PI * 73.5e6;
        let full = 4.0 * c.eta_c * (1.0 - c.eta_c);
        for beta in [1.8, 2.4, 2.9] {
            let j = bessel::jn_array(4, beta);
            for (n, jn) in j.iter().enumerate().take(4) {
                let d = 1.0 - bessel_transmission(&c, beta, -(n as f64) * om, om);
                let expect = full * jn * jn;
                // Neighboring Lorentzians overlap at the 1e-2 level in this regime.
                assert!(
                    (d - expect).abs() / full < 1e-2,
                    "β={beta} n={n}: depth {d} vs {expect}"
                );
            }
        }
    }

    #[test]
    fn transmission_bounded_and_sum_rule() {
        // T ∈ [0, 1] across detunings, β, η_c.
        let om = TWO_PI * 40e6;
        let mut state = 0x9e3779b97f4a7c15_u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..200 {
            let eta = 0.05 + 0.95 * next();
            let c = CavityParams::wgm(TWO_PI * 2.8e14, TWO_PI * (1e6 + 9e6 * next()), eta, 25e-6)
                .unwrap();
            let beta = 8.0 * next();
            let det = (next() - 0.5) * 6.0 * om;
            let t = bessel_transmission(&c, beta, det, om);
            assert!((-1e-12..=1.0 + 1e-12).contains(&t), "T out of range: {t}");
        }
    }

    #[test]
    fn homodyne_signal_shape() {
        let c = cav(8e6, 0.4);
        let (p_cav, p_lo) = (1e-6, 1e-3);
        assert_eq!(homodyne_error_signal(&c, 0.0, p_cav, p_lo).unwrap(), 0.0);
        // Extrema at Δ = ±κ/2 with value ±2η_c√(P_cav P_LO).
        for sign in [-1.0, 1.0] {
            let h = homodyne_error_signal(&c, sign * c.half_kappa(), p_cav, p_lo).unwrap();
            let expect = sign * 2.0 * c.eta_c * (p_cav * p_lo).sqrt();
            assert!((h - expect).abs() / expect.abs() < 1e-14);
        }
        // Odd symmetry.
        for det in [0.2, 1.0, 3.7] {
            let hp = homodyne_error_signal(&c, det * c.kappa, p_cav, p_lo).unwrap();
            let hm = homodyne_error_signal(&c, -det * c.kappa, p_cav, p_lo).unwrap();
            assert!((hp + hm).abs() < 1e-18);
        }
    }

    #[test]
    fn homodyne_gain_cutoff() {
        let c = cav(8e6, 0.4);
        let (p_cav, p_lo) = (1e-6, 1e-3);
        let g0 = homodyne_displacement_gain(&c, p_cav, p_lo, 0.0).unwrap();
        let ghalf = homodyne_displacement_gain(&c, p_cav, p_lo, c.half_kappa()).unwrap();
        assert!((ghalf - g0 / 2.0_f64.sqrt()).abs() / g0 < 1e-14);
        let expect_dc = 8.0 * c.eta_c * c.g0.abs() * (p_cav * p_lo).sqrt() / c.kappa;
        assert!((g0 - expect_dc).abs() / expect_dc < 1e-14);
        // Exact factorization across frequencies.
        for om in [0.1, 0.7, 2.0, 9.3] {
            let omega = om * c.half_kappa();
            let g = homodyne_displacement_gain(&c, p_cav, p_lo, omega).unwrap();
            let recon = g * (1.0 + (omega / c.half_kappa()).powi(2)).sqrt();
            assert!((recon - g0).abs() / g0 < 1e-14);
        }
    }

    #[test]
    fn pdh_penalty_limits() {
        // η_c → 1: 2 + 1/(2 J_1²(β)).
        let beta = 1.0;
        let j1 = bessel::j1(beta);
        let p = pdh_penalty(1.0, beta).unwrap();
        assert!((p - (2.0 + 0.5 / (j1 * j1))).abs() < 1e-12);
        // Critical coupling: exactly 3/2.
        let p = pdh_penalty(0.5, beta).unwrap();
        assert!((p - 1.5).abs() < 1e-12);
        // Small β: middle term diverges as (1−2η_c)²·2/β².
        let eta = 0.25;
        let beta = 1e-3;
        let p = pdh_penalty(eta, beta).unwrap();
        let expect = 1.0 + eta + (1.0 - 2.0 * eta).powi(2) * 2.0 / (beta * beta);
        assert!((p - expect).abs() / expect < 1e-5);
    }

    #[test]
    fn calibration_definition_and_linearity() {
        let c = cav(8e6, 0.5);
        let x = calibrate_modulation(&c, c.g0.abs() * 1e-15).unwrap();
        assert!((x - 1e-15).abs() / 1e-15 < 1e-14);
        let x2 = calibrate_modulation(&c, 2.0 * c.g0.abs() * 1e-15).unwrap();
        assert!((x2 - 2.0 * x).abs() / x < 1e-14);
        let bad = CavityParams::new(1e15, 1e7, 0.5, 0.0, 25e-6).unwrap();
        assert!(calibrate_modulation(&bad, 1.0).is_err());
    }
}
