//! JSON parameter document with unit-suffixed field names, and its mapping
//! onto the core parameter types. All `_hz` fields are ordinary frequencies
//! (cycles per second) and are converted to angular rad/s internally.

use serde::{Deserialize, Serialize};

use wgmom::constants::TWO_PI;
use wgmom::mechanics::TlsParams;
use wgmom::model::{CavityParams, Drive, MechMode};
use wgmom::noisemeter::ThermoRefractiveParams;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cavity: Option<CavityDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mechanics: Option<MechDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub drive: Option<DriveDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepDoc>,
    /// Laser frequency-noise PSD S_ωω (rad²/s²/Hz).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frequency_noise_rad2_per_s2_per_hz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub thermorefractive: Option<ThermoRefractiveDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub heating: Option<HeatingDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timedomain: Option<TimeDomainDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tls: Option<TlsDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CavityDoc {
    pub omega_c_hz: f64,
    /// Total linewidth κ/2π (Hz).
    pub kappa_hz: f64,
    pub eta_c: f64,
    pub radius_m: f64,
    /// Optional coupling override (Hz per meter, signed). Defaults to the WGM
    /// geometry value −ω_c/R.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g0_hz_per_m: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MechDoc {
    pub omega_m_hz: f64,
    pub gamma_m_hz: f64,
    pub m_eff_kg: f64,
    pub t_bath_k: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DriveDoc {
    pub p_in_w: f64,
    /// Detuning Δ/2π = (ω_l − ω_c)/2π (Hz).
    pub detuning_hz: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepDoc {
    /// Axis name; must be one the subcommand understands.
    pub axis: String,
    pub min: f64,
    pub max: f64,
    pub points: usize,
    /// "lin" or "log".
    #[serde(default = "default_scale")]
    pub scale: String,
}

fn default_scale() -> String {
    "lin".to_string()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThermoRefractiveDoc {
    pub heat_conductivity_w_per_m_k: f64,
    pub density_kg_per_m3: f64,
    pub c_p_j_per_kg_k: f64,
    pub dn_dt_per_k: f64,
    pub diffusivity_m2_per_s: f64,
    pub mode_b_m: f64,
    pub mode_d_m: f64,
    pub index: f64,
    pub temperature_k: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HeatingDoc {
    pub dt_per_circulating_w_k: f64,
    pub dgamma_dt_hz_per_k: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeDomainDoc {
    pub t_end_s: f64,
    pub points: usize,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default)]
    pub x0_m: f64,
    #[serde(default)]
    pub v0_mps: f64,
}

fn default_tol() -> f64 {
    1e-8
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TlsDoc {
    pub amplitude_c: f64,
    pub v0_k: f64,
    pub zeta: f64,
    pub log10_tau0_s: f64,
    pub v0_over_delta_c: f64,
}

/// Field-level problem found while validating a config.
#[derive(Debug)]
pub struct FieldError {
    pub field: &'static str,
    pub message: String,
}

impl std::fmt::Display for FieldError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "field `{}`: {}", self.field, self.message)
    }
}

impl CavityDoc {
    pub fn build(&self) -> Result<CavityParams, FieldError> {
        let omega_c = TWO_PI * self.omega_c_hz;
        let kappa = TWO_PI * self.kappa_hz;
        match self.g0_hz_per_m {
            Some(g0_hz) => {
                CavityParams::new(omega_c, kappa, self.eta_c, TWO_PI * g0_hz, self.radius_m)
            }
            None => CavityParams::wgm(omega_c, kappa, self.eta_c, self.radius_m),
        }
        .map_err(|e| FieldError { field: "cavity", message: e.to_string() })
    }
}

impl MechDoc {
    pub fn build(&self) -> Result<MechMode, FieldError> {
        MechMode::new(
            TWO_PI * self.omega_m_hz,
            TWO_PI * self.gamma_m_hz,
            self.m_eff_kg,
            self.t_bath_k,
        )
        .map_err(|e| FieldError { field: "mechanics", message: e.to_string() })
    }
}

impl DriveDoc {
    pub fn build(&self, cavity: &CavityParams) -> Result<Drive, FieldError> {
        let detuning = TWO_PI * self.detuning_hz;
        Drive::new(self.p_in_w, cavity.omega_c + detuning, detuning)
            .map_err(|e| FieldError { field: "drive", message: e.to_string() })
    }
}

impl SweepDoc {
    /// Validate against the axes a subcommand accepts and materialize the
    /// grid (still in document units; axis semantics belong to the caller).
    pub fn grid(&self, allowed_axes: &[&str]) -> Result<Vec<f64>, FieldError> {
        if !allowed_axes.contains(&self.axis.as_str()) {
            return Err(FieldError {
                field: "sweep.axis",
                message: format!(
                    "unknown axis `{}`; this subcommand sweeps one of {allowed_axes:?}",
                    self.axis
                ),
            });
        }
        if self.points < 2 {
            return Err(FieldError {
                field: "sweep.points",
                message: format!("sweeps need at least 2 points, got {}", self.points),
            });
        }
        if self.min >= self.max || !self.min.is_finite() || !self.max.is_finite() {
            return Err(FieldError {
                field: "sweep.min",
                message: format!("empty sweep range [{}, {}]", self.min, self.max),
            });
        }
        match self.scale.as_str() {
            "lin" => Ok((0..self.points)
                .map(|i| {
                    self.min + (self.max - self.min) * i as f64 / (self.points - 1) as f64
                })
                .collect()),
            "log" => {
                if self.min <= 0.0 {
                    return Err(FieldError {
                        field: "sweep.scale",
                        message: "log sweeps require a positive minimum".to_string(),
                    });
                }
                let (l0, l1) = (self.min.ln(), self.max.ln());
                Ok((0..self.points)
                    .map(|i| (l0 + (l1 - l0) * i as f64 / (self.points - 1) as f64).exp())
                    .collect())
            }
            other => Err(FieldError {
                field: "sweep.scale",
                message: format!("unknown scale `{other}` (use \"lin\" or \"log\")"),
            }),
        }
    }
}

impl ThermoRefractiveDoc {
    pub fn build(&self, radius_m: f64) -> ThermoRefractiveParams {
        ThermoRefractiveParams {
            heat_conductivity: self.heat_conductivity_w_per_m_k,
            density: self.density_kg_per_m3,
            c_p: self.c_p_j_per_kg_k,
            dn_dt: self.dn_dt_per_k,
            diffusivity: self.diffusivity_m2_per_s,
            mode_b: self.mode_b_m,
            mode_d: self.mode_d_m,
            index: self.index,
            radius: radius_m,
            temperature: self.temperature_k,
        }
    }
}

impl TlsDoc {
    pub fn build(&self) -> Result<TlsParams, FieldError> {
        let v0 = self.v0_k * wgmom::constants::K_B;
        TlsParams::new(
            self.amplitude_c,
            v0,
            self.zeta,
            10f64.powf(self.log10_tau0_s),
            v0 / self.v0_over_delta_c,
        )
        .map_err(|e| FieldError { field: "tls", message: e.to_string() })
    }
}
