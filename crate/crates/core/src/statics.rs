//! Self-consistent radiation-pressure steady states, bistability
//! classification, and the bistability threshold.
//!
//! Radiation-pressure statics only; thermal bistability (absorption-driven
//! resonance drift) is a separate, slower effect and is not modeled.

use crate::constants::HBAR;
use crate::error::{ensure, Result};
use crate::math::roots;
use crate::model::{CavityParams, Drive, MechMode};

/// One self-consistent steady-state solution (ā, x̄).
#[derive(Debug, Clone, Copy)]
pub struct SteadyStateBranch {
    /// Static displacement x̄ (m).
    pub x_bar: f64,
    /// Intracavity photon number |ā|².
    pub photons: f64,
    /// Linear stability of the branch.
    pub stability: Stability,
    /// True when this root coincides with another (fold/tangency point).
    pub degenerate: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stability {
    Stable,
    Unstable,
    /// Largest eigenvalue real part within the marginal band around zero.
    Marginal,
}

/// Static radiation-pressure force F = −ħ g0 |a|².
pub fn radiation_force(cavity: &CavityParams, photons: f64) -> f64 {
    -HBAR * cavity.g0 * photons
}

/// All steady states of the coupled field/oscillator equations for the given
/// drive: real roots of the cubic obtained by eliminating |ā|² between the
/// Lorentzian response and the static force balance, each classified by the
/// eigenvalues of the full linearization.
pub fn steady_states(
    cavity: &CavityParams,
    mode: &MechMode,
    drive: &Drive,
) -> Result<Vec<SteadyStateBranch>> {
    let flux = drive.photon_flux();
    let g0 = cavity.g0;
    let c = cavity.half_kappa();
    let delta = drive.detuning;
    let stiff = mode.m_eff * mode.omega_m * mode.omega_m;

    if drive.p_in == 0.0 {
        let branch = classify(cavity, mode, drive, 0.0, 0.0, false)?;
        return Ok(vec![branch]);
    }
    if g0 == 0.0 {
        // Decoupled: pure Lorentzian photon number, no displacement.
        let photons = cavity.kappa_ex() * flux / (delta * delta + c * c);
        let branch = classify(cavity, mode, drive, 0.0, photons, false)?;
        return Ok(vec![branch]);
    }

    // m Ω² x̄ ((Δ − g0 x̄)² + (κ/2)²) + ħ g0 η_c κ |s̄_in|² = 0
    let a3 = stiff * g0 * g0;
    let a2 = -2.0 * stiff * delta * g0;
    let a1 = stiff * (delta * delta + c * c);
    let a0 = HBAR * g0 * cavity.kappa_ex() * flux;
    let cubic = roots::cubic_real_roots(a3, a2, a1, a0);

    let mut out = Vec::with_capacity(cubic.len());
    for root in cubic {
        let x = root.x;
        let photons = cavity.kappa_ex() * flux / ((delta - g0 * x).powi(2) + c * c);
        out.push(classify(cavity, mode, drive, x, photons, root.multiplicity > 1)?);
    }
    Ok(out)
}

/// Minimum input photon flux |s̄_in|² (photons/s) for bistability:
/// (√3/9)·Ω_m² m_eff κ²/(η_c ħ g0²). Infinite when g0 = 0.
pub fn bistability_threshold(cavity: &CavityParams, mode: &MechMode) -> f64 {
    if cavity.g0 == 0.0 {
        return f64::INFINITY;
    }
    3.0_f64.sqrt() / 9.0 * mode.omega_m * mode.omega_m * mode.m_eff * cavity.kappa
        * cavity.kappa
        / (cavity.eta_c * HBAR * cavity.g0 * cavity.g0)
}

/// Stability of a steady-state branch from the eigenvalues of the linearized
/// four-dimensional system (Re δa, Im δa, δx, δẋ).
pub fn classify_stability(
    cavity: &CavityParams,
    mode: &MechMode,
    drive: &Drive,
    branch: &SteadyStateBranch,
) -> Result<Stability> {
    let b = classify(
        cavity,
        mode,
        drive,
        branch.x_bar,
        branch.photons,
        branch.degenerate,
    )?;
    Ok(b.stability)
}

fn classify(
    cavity: &CavityParams,
    mode: &MechMode,
    drive: &Drive,
    x_bar: f64,
    photons: f64,
    degenerate: bool,
) -> Result<SteadyStateBranch> {
    ensure(photons >= 0.0, "photon number must be non-negative")?;
    let delta_eff = drive.detuning - cavity.g0 * x_bar;
    // Characteristic quartic of the linearization (ā real):
    // (λ² + Γ λ + Ω_m²)((λ + κ/2)² + Δ̄²) + 2 ħ g0² ā² Δ̄ / m_eff = 0.
    let c = cavity.half_kappa();
    let g = mode.gamma_m;
    let om2 = mode.omega_m * mode.omega_m;
    let coupling = 2.0 * HBAR * cavity.g0 * cavity.g0 * photons * delta_eff / mode.m_eff;
    // Expand (λ²+gλ+om2)(λ² + κλ + c²+Δ̄²) + coupling.
    let d2 = c * c + delta_eff * delta_eff;
    let coeffs = [
        om2 * d2 + coupling,
        g * d2 + om2 * cavity.kappa,
        d2 + g * cavity.kappa + om2,
        g + cavity.kappa,
        1.0,
    ];
    let eig = roots::poly_roots(&coeffs)?;
    let max_re = eig.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
    let band = 1e-9 * cavity.kappa.max(mode.omega_m);
    let stability = if max_re.abs() <= band {
        Stability::Marginal
    } else if max_re < 0.0 {
        Stability::Stable
    } else {
        Stability::Unstable
    };
    Ok(SteadyStateBranch { x_bar, photons, stability, degenerate })
}

/// Residuals of the two steady-state conditions at a branch, relative to the
/// magnitudes of their terms. Used by tests and the CLI to certify solutions.
pub fn branch_residual(
    cavity: &CavityParams,
    mode: &MechMode,
    drive: &Drive,
    branch: &SteadyStateBranch,
) -> (f64, f64) {
    let c = cavity.half_kappa();
    let delta_eff = drive.detuning - cavity.g0 * branch.x_bar;
    let lorentz = cavity.kappa_ex() * drive.photon_flux() / (delta_eff * delta_eff + c * c);
    let r1 = (branch.photons - lorentz).abs() / lorentz.abs().max(1e-300);
    let lhs = mode.m_eff * mode.omega_m * mode.omega_m * branch.x_bar;
    let rhs = -HBAR * cavity.g0 * branch.photons;
    let scale = lhs.abs().max(rhs.abs()).max(1e-300);
    let r2 = (lhs - rhs).abs() / scale;
    (r1, r2)
}
