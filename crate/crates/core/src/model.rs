//! Shared parameter types and trivially derived quantities.
//!
//! Conventions used throughout the crate:
//! - all frequencies and rates are angular (rad/s); the CLI converts from Hz,
//! - SI units everywhere,
//! - `g0` carries its sign (negative for Fabry-Perot and WGM geometries),
//! - spectra are symmetrized double-sided unless stated otherwise.

use crate::constants::{HBAR, K_B};
use crate::error::{ensure, ensure_finite, Error, Result};

/// One optical mode of a driven cavity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavityParams {
    /// Resonance frequency ω_c (rad/s).
    pub omega_c: f64,
    /// Total energy decay rate κ (rad/s).
    pub kappa: f64,
    /// Coupling ratio η_c = κ_ex/κ = τ_0/(τ_0+τ_ex), in (0, 1].
    pub eta_c: f64,
    /// Optomechanical coupling g0 = ∂ω_c/∂x (rad/s per m, signed).
    pub g0: f64,
    /// Cavity radius (m).
    pub radius: f64,
}

impl CavityParams {
    pub fn new(omega_c: f64, kappa: f64, eta_c: f64, g0: f64, radius: f64) -> Result<Self> {
        for (v, name) in [
            (omega_c, "omega_c"),
            (kappa, "kappa"),
            (eta_c, "eta_c"),
            (g0, "g0"),
            (radius, "radius"),
        ] {
            ensure_finite(v, name)?;
        }
        ensure(omega_c > 0.0, "omega_c must be positive")?;
        ensure(kappa > 0.0, "kappa must be positive")?;
        ensure(eta_c > 0.0 && eta_c <= 1.0, "eta_c must lie in (0, 1]")?;
        ensure(radius > 0.0, "radius must be positive")?;
        Ok(Self { omega_c, kappa, eta_c, g0, radius })
    }

    /// WGM geometry: g0 = −ω_c/R.
    pub fn wgm(omega_c: f64, kappa: f64, eta_c: f64, radius: f64) -> Result<Self> {
        ensure(radius > 0.0, "radius must be positive")?;
        Self::new(omega_c, kappa, eta_c, -omega_c / radius, radius)
    }

    /// Build from intrinsic and external photon lifetimes τ_0, τ_ex.
    pub fn from_lifetimes(
        omega_c: f64,
        tau_0: f64,
        tau_ex: f64,
        g0: f64,
        radius: f64,
    ) -> Result<Self> {
        ensure(tau_0 > 0.0 && tau_ex > 0.0, "lifetimes must be positive")?;
        let kappa = 1.0 / tau_0 + 1.0 / tau_ex;
        let eta_c = tau_0 / (tau_0 + tau_ex);
        Self::new(omega_c, kappa, eta_c, g0, radius)
    }

    /// Intrinsic photon lifetime τ_0 = 1/((1−η_c)κ). Infinite when η_c = 1.
    pub fn tau_0(&self) -> f64 {
        1.0 / ((1.0 - self.eta_c) * self.kappa)
    }

    /// External (waveguide) photon lifetime τ_ex = 1/(η_c κ).
    pub fn tau_ex(&self) -> f64 {
        1.0 / (self.eta_c * self.kappa)
    }

    /// Half linewidth κ/2 (rad/s).
    pub fn half_kappa(&self) -> f64 {
        0.5 * self.kappa
    }

    /// External coupling rate κ_ex = η_c κ.
    pub fn kappa_ex(&self) -> f64 {
        self.eta_c * self.kappa
    }
}

/// One mechanical mode as a damped harmonic oscillator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MechMode {
    /// Resonance frequency Ω_m (rad/s).
    pub omega_m: f64,
    /// Energy damping rate Γ_m (rad/s).
    pub gamma_m: f64,
    /// Effective mass (kg).
    pub m_eff: f64,
    /// Bath temperature (K). Zero is allowed; `n_bath` then errors.
    pub t_bath: f64,
}

impl MechMode {
    pub fn new(omega_m: f64, gamma_m: f64, m_eff: f64, t_bath: f64) -> Result<Self> {
        for (v, name) in [
            (omega_m, "omega_m"),
            (gamma_m, "gamma_m"),
            (m_eff, "m_eff"),
            (t_bath, "t_bath"),
        ] {
            ensure_finite(v, name)?;
        }
        ensure(omega_m > 0.0, "omega_m must be positive")?;
        ensure(gamma_m > 0.0, "gamma_m must be positive")?;
        ensure(m_eff > 0.0, "m_eff must be positive")?;
        ensure(t_bath >= 0.0, "t_bath must be non-negative")?;
        Ok(Self { omega_m, gamma_m, m_eff, t_bath })
    }

    /// Mechanical quality factor Q_m = Ω_m/Γ_m.
    pub fn quality_factor(&self) -> f64 {
        self.omega_m / self.gamma_m
    }
}

/// Laser drive applied to the cavity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Drive {
    /// Launched power (W).
    pub p_in: f64,
    /// Laser angular frequency ω_l (rad/s).
    pub omega_l: f64,
    /// Detuning Δ = ω_l − ω_c (rad/s); for the linearized operations this is
    /// the equilibrium detuning Δ̄.
    pub detuning: f64,
}

impl Drive {
    pub fn new(p_in: f64, omega_l: f64, detuning: f64) -> Result<Self> {
        ensure_finite(p_in, "p_in")?;
        ensure_finite(omega_l, "omega_l")?;
        ensure_finite(detuning, "detuning")?;
        ensure(p_in >= 0.0, "p_in must be non-negative")?;
        ensure(omega_l > 0.0, "omega_l must be positive")?;
        Ok(Self { p_in, omega_l, detuning })
    }

    /// Input photon flux |s̄_in|² = P_in/(ħ ω_l) (photons/s).
    pub fn photon_flux(&self) -> f64 {
        self.p_in / (HBAR * self.omega_l)
    }
}

/// Linearization point: mean field, static displacement, equilibrium detuning.
///
/// Phase convention: ā is real and non-negative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatingPoint {
    /// Mean intracavity field amplitude ā (√photon, real ≥ 0).
    pub a_bar: f64,
    /// Static displacement x̄ (m).
    pub x_bar: f64,
    /// Equilibrium detuning Δ̄ = ω_l − (ω_c + g0 x̄) (rad/s).
    pub detuning_eff: f64,
}

impl OperatingPoint {
    pub fn new(a_bar: f64, x_bar: f64, detuning_eff: f64) -> Result<Self> {
        ensure_finite(a_bar, "a_bar")?;
        ensure_finite(x_bar, "x_bar")?;
        ensure_finite(detuning_eff, "detuning_eff")?;
        ensure(a_bar >= 0.0, "a_bar must be non-negative (real phase convention)")?;
        Ok(Self { a_bar, x_bar, detuning_eff })
    }

    /// Operating point with a given intracavity photon number and detuning,
    /// ignoring the static displacement.
    pub fn from_photons(photons: f64, detuning_eff: f64) -> Result<Self> {
        ensure(photons >= 0.0, "photon number must be non-negative")?;
        Self::new(photons.sqrt(), 0.0, detuning_eff)
    }

    /// Intracavity photon number ā².
    pub fn photons(&self) -> f64 {
        self.a_bar * self.a_bar
    }
}

/// Unit tag carried by a sampled spectral density.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumUnit {
    /// Displacement PSD, m²/Hz.
    M2PerHz,
    /// Force PSD, N²/Hz.
    N2PerHz,
    /// Shot-noise-normalized quadrature PSD.
    Dimensionless,
    /// Photon-flux spectral density, (photons/s) per (rad/s).
    PhotonFluxDensity,
}

/// Symmetrization convention of a sampled PSD.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumKind {
    /// Symmetrized double-sided density S̄(Ω) (internal convention).
    SymmetrizedTwoSided,
    /// Single-sided density, 2× the symmetrized value.
    OneSided,
}

/// A PSD sampled on a strictly increasing angular-frequency grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    grid: Vec<f64>,
    values: Vec<f64>,
    unit: SpectrumUnit,
    kind: SpectrumKind,
}

impl Spectrum {
    pub fn new(
        grid: Vec<f64>,
        values: Vec<f64>,
        unit: SpectrumUnit,
        kind: SpectrumKind,
    ) -> Result<Self> {
        ensure(grid.len() == values.len(), "grid/values length mismatch")?;
        ensure(!grid.is_empty(), "spectrum must not be empty")?;
        for w in grid.windows(2) {
            ensure(w[1] > w[0], "grid must be strictly increasing")?;
        }
        for &v in &values {
            ensure(v.is_finite() || v == f64::INFINITY, "values must not be NaN")?;
            ensure(v >= 0.0, "PSD values must be non-negative")?;
        }
        Ok(Self { grid, values, unit, kind })
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn unit(&self) -> SpectrumUnit {
        self.unit
    }

    pub fn kind(&self) -> SpectrumKind {
        self.kind
    }

    /// Pointwise sum; requires identical grids, unit tags, and kinds.
    pub fn add(&self, other: &Spectrum) -> Result<Spectrum> {
        if self.unit != other.unit {
            return Err(Error::SpectrumMismatch("unit tags differ".into()));
        }
        if self.kind != other.kind {
            return Err(Error::SpectrumMismatch("kinds differ".into()));
        }
        if self.grid.len() != other.grid.len()
            || self
                .grid
                .iter()
                .zip(&other.grid)
                .any(|(a, b)| a != b)
        {
            return Err(Error::SpectrumMismatch("grids differ".into()));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + b)
            .collect();
        Spectrum::new(self.grid.clone(), values, self.unit, self.kind)
    }

    /// Convert from the internal symmetrized double-sided convention to a
    /// single-sided density (values doubled).
    pub fn to_one_sided(&self) -> Spectrum {
        match self.kind {
            SpectrumKind::OneSided => self.clone(),
            SpectrumKind::SymmetrizedTwoSided => Spectrum {
                grid: self.grid.clone(),
                values: self.values.iter().map(|v| 2.0 * v).collect(),
                unit: self.unit,
                kind: SpectrumKind::OneSided,
            },
        }
    }
}

/// Zero-point displacement fluctuation amplitude x_ZPF = √(ħ/(2 m_eff Ω_m)).
pub fn x_zpf(mode: &MechMode) -> f64 {
    (HBAR / (2.0 * mode.m_eff * mode.omega_m)).sqrt()
}

/// Thermal phonon occupancy n_bath ≈ k_B T/(ħ Ω_m).
pub fn n_bath(mode: &MechMode) -> Result<f64> {
    ensure(mode.t_bath > 0.0, "n_bath requires a positive bath temperature")?;
    Ok(K_B * mode.t_bath / (HBAR * mode.omega_m))
}

/// Cavity finesse F = FSR/κ for a caller-supplied free spectral range (rad/s).
pub fn finesse(cavity: &CavityParams, fsr: f64) -> Result<f64> {
    ensure(fsr > 0.0, "free spectral range must be positive")?;
    Ok(fsr / cavity.kappa)
}
