//! Command-line front end: parameter ingestion, sweeps, CSV/JSON emission,
//! and reproduction of the toolkit's headline numbers.

mod anchors;
mod config;
mod output;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use config::{FieldError, RunConfig};
use output::{fmt_f64, Format, Table};
use wgmom::constants::TWO_PI;
use wgmom::cooling;
use wgmom::dynba;
use wgmom::mechanics::{self, ElasticMaterial, TlsParams};
use wgmom::model::{CavityParams, Drive, MechMode, OperatingPoint};
use wgmom::noisemeter;
use wgmom::par::map_grid;
use wgmom::statics::{self, Stability};
use wgmom::timedomain;

#[derive(Parser)]
#[command(
    name = "wgmom",
    about = "Cavity-optomechanics calculator for WGM microresonators",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// JSON parameter document (see docs/parameter-schema.md).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output file; stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Radiation-pressure steady states over a detuning sweep.
    Steady,
    /// Effective damping, frequency, and mode temperature vs detuning.
    SweepDetuning,
    /// Displacement-noise budget over a Fourier-frequency sweep.
    Spectrum {
        /// Export single-sided densities (2x the symmetrized two-sided
        /// values).
        #[arg(long)]
        one_sided: bool,
    },
    /// Sideband-cooling report over a power or detuning sweep.
    CoolingLimit,
    /// Probe transmission across the transparency window.
    Omit,
    /// Fundamental breathing mode of a sphere.
    SphereModes {
        /// Sphere radius in micrometers.
        #[arg(long)]
        radius_um: f64,
        /// Material name (currently: silica).
        #[arg(long, default_value = "silica")]
        material: String,
    },
    /// TLS-limited quality factor and frequency shift over temperature.
    TlsQ {
        #[arg(long, default_value_t = 5.0)]
        t_min_k: f64,
        #[arg(long, default_value_t = 300.0)]
        t_max_k: f64,
        #[arg(long, default_value_t = 60)]
        points: usize,
        /// Mechanical frequency in MHz.
        #[arg(long, default_value_t = 40.0)]
        freq_mhz: f64,
    },
    /// Integrate the coupled field/oscillator equations.
    Timedomain,
    /// Reproduce a published anchor number (or all of them).
    Reproduce {
        /// Anchor name; list with --all.
        anchor: Option<String>,
        /// Run the whole registry.
        #[arg(long)]
        all: bool,
    },
}

enum CliError {
    Validation(String),
    Numerical(String),
    AnchorFailed,
}

impl From<FieldError> for CliError {
    fn from(e: FieldError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<wgmom::Error> for CliError {
    fn from(e: wgmom::Error) -> Self {
        match e {
            wgmom::Error::Domain(_) | wgmom::Error::ModulationTooLarge { .. } => {
                CliError::Validation(e.to_string())
            }
            other => CliError::Numerical(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Numerical(format!("i/o error: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::AnchorFailed) => ExitCode::from(1),
        Err(CliError::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Numerical(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let format = match cli.format {
        OutputFormat::Csv => Format::Csv,
        OutputFormat::Json => Format::Json,
    };
    let table = match &cli.command {
        Command::Steady => cmd_steady(load_config(cli)?)?,
        Command::SweepDetuning => cmd_sweep_detuning(load_config(cli)?)?,
        Command::Spectrum { one_sided } => cmd_spectrum(load_config(cli)?, *one_sided)?,
        Command::CoolingLimit => cmd_cooling_limit(load_config(cli)?)?,
        Command::Omit => cmd_omit(load_config(cli)?)?,
        Command::SphereModes { radius_um, material } => cmd_sphere_modes(*radius_um, material)?,
        Command::TlsQ { t_min_k, t_max_k, points, freq_mhz } => {
            cmd_tls_q(load_config_optional(cli)?, *t_min_k, *t_max_k, *points, *freq_mhz)?
        }
        Command::Timedomain => cmd_timedomain(load_config(cli)?)?,
        Command::Reproduce { anchor, all } => {
            return cmd_reproduce(anchor.as_deref(), *all);
        }
    };
    emit(cli, format, &table)
}

fn emit(cli: &Cli, format: Format, table: &Table) -> Result<(), CliError> {
    match &cli.out {
        Some(path) => {
            let mut buf = Vec::new();
            table.write(format, &mut buf)?;
            fs::write(path, buf)?;
        }
        None => {
            let stdout = std::io::stdout();
            if let Err(e) = table.write(format, stdout.lock()) {
                // A closed pipe (e.g. `wgmom ... | head`) is not a failure.
                if e.kind() == std::io::ErrorKind::BrokenPipe {
                    return Ok(());
                }
                return Err(e.into());
            }
        }
    }
    Ok(())
}

fn load_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| CliError::Validation("this subcommand requires --config".into()))?;
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| {
        CliError::Validation(format!("{} at line {}, column {}", e, e.line(), e.column()))
    })
}

fn load_config_optional(cli: &Cli) -> Result<Option<RunConfig>, CliError> {
    match &cli.config {
        Some(_) => Ok(Some(load_config(cli)?)),
        None => Ok(None),
    }
}

struct PhysicsSetup {
    cavity: CavityParams,
    mode: MechMode,
    drive_doc: config::DriveDoc,
}

fn physics(config: &RunConfig) -> Result<PhysicsSetup, CliError> {
    let cavity = config
        .cavity
        .as_ref()
        .ok_or_else(|| CliError::Validation("missing `cavity` section".into()))?
        .build()?;
    let mode = config
        .mechanics
        .as_ref()
        .ok_or_else(|| CliError::Validation("missing `mechanics` section".into()))?
        .build()?;
    let drive_doc = config
        .drive
        .clone()
        .ok_or_else(|| CliError::Validation("missing `drive` section".into()))?;
    Ok(PhysicsSetup { cavity, mode, drive_doc })
}

fn sweep<'a>(
    config: &'a RunConfig,
    axes: &[&str],
) -> Result<(&'a config::SweepDoc, Vec<f64>), CliError> {
    let doc = config
        .sweep
        .as_ref()
        .ok_or_else(|| CliError::Validation("missing `sweep` section".into()))?;
    let grid = doc.grid(axes)?;
    Ok((doc, grid))
}

/// Operating point with the prescribed equilibrium detuning: the intracavity
/// photon number follows the Lorentzian at Δ̄, and the matching static
/// displacement is folded in.
fn operating_point(
    cavity: &CavityParams,
    mode: &MechMode,
    p_in: f64,
    detuning_eff: f64,
) -> Result<(OperatingPoint, Drive), CliError> {
    let omega_l = cavity.omega_c + detuning_eff;
    let drive_probe = Drive::new(p_in, omega_l, detuning_eff)?;
    let c2 = cavity.half_kappa().powi(2);
    let photons =
        cavity.kappa_ex() * drive_probe.photon_flux() / (detuning_eff * detuning_eff + c2);
    let x_bar = -wgmom::constants::HBAR * cavity.g0 * photons
        / (mode.m_eff * mode.omega_m * mode.omega_m);
    let op = OperatingPoint::new(photons.sqrt(), x_bar, detuning_eff)?;
    Ok((op, drive_probe))
}

fn cmd_steady(config: RunConfig) -> Result<Table, CliError> {
    let setup = physics(&config)?;
    let (_, grid) = sweep(&config, &["detuning_hz"])?;
    let mut table = Table::new(vec!["detuning_hz", "x_bar_m", "photons", "stable"]);
    let rows: Vec<Result<Vec<Vec<f64>>, wgmom::Error>> = map_grid(&grid, |det_hz| {
        let detuning = TWO_PI * det_hz;
        let drive = Drive::new(
            setup.drive_doc.p_in_w,
            setup.cavity.omega_c + detuning,
            detuning,
        )?;
        let branches = statics::steady_states(&setup.cavity, &setup.mode, &drive)?;
        Ok(branches
            .iter()
            .map(|b| {
                vec![
                    *det_hz,
                    b.x_bar,
                    b.photons,
                    match b.stability {
                        Stability::Stable => 1.0,
                        Stability::Unstable => 0.0,
                        Stability::Marginal => 0.5,
                    },
                ]
            })
            .collect())
    });
    for group in rows {
        for row in group? {
            table.push(row);
        }
    }
    Ok(table)
}

fn cmd_sweep_detuning(config: RunConfig) -> Result<Table, CliError> {
    let setup = physics(&config)?;
    let (_, grid) = sweep(&config, &["detuning_hz"])?;
    let p_in = setup.drive_doc.p_in_w;
    let mut table =
        Table::new(vec!["detuning_hz", "gamma_eff_hz", "omega_eff_hz", "t_mode_k"]);
    let rows: Vec<Result<Vec<f64>, CliError>> = map_grid(&grid, |det_hz| {
        let (op, _) = operating_point(&setup.cavity, &setup.mode, p_in, TWO_PI * det_hz)?;
        let eff = dynba::effective_oscillator(&setup.cavity, &setup.mode, &op);
        let t_mode = dynba::mode_temperature(&setup.mode, eff.gamma_eff).unwrap_or(f64::NAN);
        Ok(vec![*det_hz, eff.gamma_eff / TWO_PI, eff.omega_eff / TWO_PI, t_mode])
    });
    for row in rows {
        table.push(row?);
    }
    Ok(table)
}

fn cmd_spectrum(config: RunConfig, one_sided: bool) -> Result<Table, CliError> {
    let setup = physics(&config)?;
    let (_, grid) = sweep(&config, &["omega_hz"])?;
    let (op, _) = operating_point(
        &setup.cavity,
        &setup.mode,
        setup.drive_doc.p_in_w,
        TWO_PI * setup.drive_doc.detuning_hz,
    )?;
    let s_ww = config.frequency_noise_rad2_per_s2_per_hz;
    let trn = config
        .thermorefractive
        .as_ref()
        .map(|doc| doc.build(setup.cavity.radius));
    if let Some(ref p) = trn {
        p.validate()?;
    }
    let scale = if one_sided { 2.0 } else { 1.0 };
    let mut table = Table::new(vec![
        "omega_hz",
        "s_imp_qn_m2_per_hz",
        "s_imp_fn_m2_per_hz",
        "s_imp_trn_m2_per_hz",
        "s_xx_th_m2_per_hz",
        "s_xx_ba_m2_per_hz",
        "s_xx_total_m2_per_hz",
    ]);
    let rows: Vec<Result<Vec<f64>, wgmom::Error>> = map_grid(&grid, |f_hz| {
        let omega = TWO_PI * f_hz;
        let imp = noisemeter::imprecision_detuned(&setup.cavity, &op, omega);
        let fn_imp = match s_ww {
            Some(s) => noisemeter::frequency_noise_imprecision(&setup.cavity, s)?,
            None => 0.0,
        };
        let trn_imp = match &trn {
            Some(p) => noisemeter::thermorefractive_psd(p, omega)?,
            None => 0.0,
        };
        let chi2 =
            dynba::effective_susceptibility(&setup.cavity, &setup.mode, &op, omega).norm_sqr();
        let th = chi2 * noisemeter::thermal_force_psd(&setup.mode, omega);
        let ba = chi2 * noisemeter::backaction_detuned(&setup.cavity, &op, omega);
        let total = imp + fn_imp + trn_imp + th + ba;
        Ok(vec![
            *f_hz,
            scale * imp,
            scale * fn_imp,
            scale * trn_imp,
            scale * th,
            scale * ba,
            scale * total,
        ])
    });
    for row in rows {
        table.push(row?);
    }
    Ok(table)
}

fn cmd_cooling_limit(config: RunConfig) -> Result<Table, CliError> {
    let setup = physics(&config)?;
    let (doc, grid) = sweep(&config, &["p_in_w", "detuning_hz"])?;
    let s_ww = config.frequency_noise_rad2_per_s2_per_hz;
    let mut table = Table::new(vec![
        "p_in_w",
        "detuning_hz",
        "a_minus_hz",
        "a_plus_hz",
        "gamma_dba_hz",
        "n_final",
        "n_min_quantum",
        "n_fn",
        "t_mode_k",
    ]);
    let axis_is_power = doc.axis == "p_in_w";
    let rows: Vec<Result<Vec<f64>, CliError>> = map_grid(&grid, |value| {
        let (p_in, det_hz) = if axis_is_power {
            (*value, setup.drive_doc.detuning_hz)
        } else {
            (setup.drive_doc.p_in_w, *value)
        };
        let (op, _) = operating_point(&setup.cavity, &setup.mode, p_in, TWO_PI * det_hz)?;
        let report = cooling::final_occupancy(&setup.cavity, &setup.mode, &op, s_ww)?;
        Ok(vec![
            p_in,
            det_hz,
            report.a_minus / TWO_PI,
            report.a_plus / TWO_PI,
            report.gamma_dba / TWO_PI,
            report.n_final,
            report.n_min_quantum,
            report.n_fn,
            report.t_mode,
        ])
    });
    for row in rows {
        table.push(row?);
    }
    Ok(table)
}

fn cmd_omit(config: RunConfig) -> Result<Table, CliError> {
    let setup = physics(&config)?;
    let (_, grid) = sweep(&config, &["probe_offset_hz"])?;
    let (op, _) = operating_point(
        &setup.cavity,
        &setup.mode,
        setup.drive_doc.p_in_w,
        TWO_PI * setup.drive_doc.detuning_hz,
    )?;
    let mut table = Table::new(vec!["probe_offset_hz", "t_p"]);
    let rows: Vec<Vec<f64>> = map_grid(&grid, |f_hz| {
        let t = cooling::omit_transmission(&setup.cavity, &setup.mode, &op, TWO_PI * f_hz);
        vec![*f_hz, t]
    });
    for row in rows {
        table.push(row);
    }
    Ok(table)
}

fn cmd_sphere_modes(radius_um: f64, material: &str) -> Result<Table, CliError> {
    if radius_um <= 0.0 {
        return Err(CliError::Validation("radius must be positive".into()));
    }
    let mat = match material {
        "silica" => ElasticMaterial::silica(),
        other => {
            return Err(CliError::Validation(format!(
                "unknown material `{other}` (available: silica)"
            )))
        }
    };
    let radius = radius_um * 1e-6;
    let mode = mechanics::sphere_fundamental(&mat, radius)?;
    let mut table =
        Table::new(vec!["radius_m", "k_root", "f_hz", "omega_rad_per_s", "m_eff_kg"]);
    table.push(vec![radius, mode.k_root, mode.omega / TWO_PI, mode.omega, mode.m_eff]);
    Ok(table)
}

fn cmd_tls_q(
    config: Option<RunConfig>,
    t_min_k: f64,
    t_max_k: f64,
    points: usize,
    freq_mhz: f64,
) -> Result<Table, CliError> {
    let bad_range = !(t_min_k.is_finite() && t_max_k.is_finite() && freq_mhz.is_finite())
        || t_min_k <= 0.0
        || t_max_k <= t_min_k
        || freq_mhz <= 0.0;
    if points < 2 || bad_range {
        return Err(CliError::Validation(
            "tls-q needs t_max_k > t_min_k > 0, points >= 2, freq_mhz > 0".into(),
        ));
    }
    let params = match config.and_then(|c| c.tls) {
        Some(doc) => doc.build()?,
        None => TlsParams::silica(),
    };
    let omega = TWO_PI * freq_mhz * 1e6;
    let grid: Vec<f64> = (0..points)
        .map(|i| t_min_k + (t_max_k - t_min_k) * i as f64 / (points - 1) as f64)
        .collect();
    let mut table = Table::new(vec!["t_k", "q_tls", "freq_shift_rel"]);
    let rows: Vec<Result<Vec<f64>, wgmom::Error>> = map_grid(&grid, |t| {
        Ok(vec![
            *t,
            mechanics::tls_quality_factor(&params, *t, omega)?,
            mechanics::tls_frequency_shift(&params, *t, omega)?,
        ])
    });
    for row in rows {
        table.push(row?);
    }
    Ok(table)
}

fn cmd_timedomain(config: RunConfig) -> Result<Table, CliError> {
    let setup = physics(&config)?;
    let td = config
        .timedomain
        .as_ref()
        .ok_or_else(|| CliError::Validation("missing `timedomain` section".into()))?;
    if td.points < 2 || !td.t_end_s.is_finite() || td.t_end_s <= 0.0 {
        return Err(CliError::Validation(
            "timedomain needs t_end_s > 0 and points >= 2".into(),
        ));
    }
    let drive = setup.drive_doc.build(&setup.cavity)?;
    let initial = timedomain::TrajectoryState {
        a: wgmom::num_complex::Complex64::new(0.0, 0.0),
        x: td.x0_m,
        v: td.v0_mps,
        t: 0.0,
    };
    let samples = timedomain::linspace(0.0, td.t_end_s, td.points);
    let opts = timedomain::IntegrateOptions { tol: td.tol, ..Default::default() };
    let traj =
        timedomain::integrate(&setup.cavity, &setup.mode, &drive, &initial, &samples, &opts)?;
    let mut table = Table::new(vec!["t_s", "re_a", "im_a", "x_m", "v_mps"]);
    for s in traj {
        table.push(vec![s.t, s.a.re, s.a.im, s.x, s.v]);
    }
    Ok(table)
}

fn cmd_reproduce(anchor: Option<&str>, all: bool) -> Result<(), CliError> {
    let registry = anchors::registry();
    let selected: Vec<&anchors::Anchor> = if all {
        registry.iter().collect()
    } else {
        let name = anchor.ok_or_else(|| {
            CliError::Validation(format!(
                "name an anchor or pass --all; available: {}",
                registry.iter().map(|a| a.name).collect::<Vec<_>>().join(", ")
            ))
        })?;
        let found = registry.iter().find(|a| a.name == name).ok_or_else(|| {
            CliError::Validation(format!(
                "unknown anchor `{name}`; available: {}",
                registry.iter().map(|a| a.name).collect::<Vec<_>>().join(", ")
            ))
        })?;
        vec![found]
    };
    let mut all_pass = true;
    for a in selected {
        let r = anchors::evaluate(a);
        let tol = if r.absolute {
            format!("abs {:.1e}", r.tolerance)
        } else {
            format!("±{:.1}%", r.tolerance * 100.0)
        };
        println!(
            "{:<20} computed {:<24} published {:<12} {:<10} {:<5} {}",
            r.name,
            fmt_f64(r.computed),
            r.published,
            tol,
            if r.pass { "pass" } else { "FAIL" },
            a.description
        );
        all_pass &= r.pass;
    }
    if all_pass {
        Ok(())
    } else {
        Err(CliError::AnchorFailed)
    }
}
