//! Direct numerical integration of the nonlinear coupled field/oscillator
//! equations, used as an independent cross-check of the linearized statics,
//! stability, backaction rates, and instability threshold.
//!
//! The equations are deterministic (no stochastic forcing): thermal-noise
//! statistics are handled analytically in `noisemeter`; the oracle role needs
//! reproducibility. Only growth/decay and threshold location are in scope;
//! post-threshold attractors (limit-cycle amplitude, multistability, chaos)
//! are not characterized.

use num_complex::Complex64;

use crate::constants::HBAR;
use crate::error::{ensure, Error, Result};
use crate::model::{CavityParams, Drive, MechMode};

/// Integration state: field amplitude (laser frame), displacement, velocity.
#[derive(Debug, Clone, Copy)]
pub struct TrajectoryState {
    pub a: Complex64,
    pub x: f64,
    pub v: f64,
    pub t: f64,
}

/// Options for the adaptive integrator.
#[derive(Debug, Clone, Copy)]
pub struct IntegrateOptions {
    /// Relative tolerance of the embedded error estimate, in [1e-12, 1e-4].
    pub tol: f64,
    /// Phase of the input field s̄_in (physically irrelevant; exposed to test
    /// rotating-frame gauge invariance).
    pub input_phase: f64,
    /// Hard cap on accepted+rejected steps.
    pub max_steps: usize,
}

impl Default for IntegrateOptions {
    fn default() -> Self {
        Self { tol: 1e-8, input_phase: 0.0, max_steps: 50_000_000 }
    }
}

/// In the laser rotating frame:
///   ȧ = (i(Δ − g0 x) − κ/2) a + √(η_c κ) s̄_in,
///   ẍ = −Γ_m ẋ − Ω_m² x − ħ g0 |a|²/m_eff.
#[derive(Debug, Clone, Copy)]
struct System {
    detuning: f64,
    half_kappa: f64,
    g0: f64,
    drive_term: Complex64,
    gamma_m: f64,
    omega_m_sq: f64,
    force_per_photon: f64, // −ħ g0/m_eff
}

impl System {
    fn new(cavity: &CavityParams, mode: &MechMode, drive: &Drive, input_phase: f64) -> Self {
        let s_in = drive.photon_flux().sqrt()
            * Complex64::from_polar(1.0, input_phase);
        Self {
            detuning: drive.detuning,
            half_kappa: cavity.half_kappa(),
            g0: cavity.g0,
            drive_term: cavity.kappa_ex().sqrt() * s_in,
            gamma_m: mode.gamma_m,
            omega_m_sq: mode.omega_m * mode.omega_m,
            force_per_photon: -HBAR * cavity.g0 / mode.m_eff,
        }
    }

    #[inline]
    fn rhs(&self, y: &[f64; 4]) -> [f64; 4] {
        let a = Complex64::new(y[0], y[1]);
        let da = Complex64::new(-self.half_kappa, self.detuning - self.g0 * y[2]) * a
            + self.drive_term;
        let photons = y[0] * y[0] + y[1] * y[1];
        [
            da.re,
            da.im,
            y[3],
            -self.gamma_m * y[3] - self.omega_m_sq * y[2] + self.force_per_photon * photons,
        ]
    }
}

// Dormand-Prince 5(4) tableau.
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// 4th-order embedded weights.
const E1: f64 = 5179.0 / 57600.0;
const E3: f64 = 7571.0 / 16695.0;
const E4: f64 = 393.0 / 640.0;
const E5: f64 = -92097.0 / 339200.0;
const E6: f64 = 187.0 / 2100.0;
const E7: f64 = 1.0 / 40.0;

/// Integrate the deterministic equations and return the state at each of the
/// (ascending) `sample_times`. Steps are clamped to land exactly on samples,
/// so sampled states carry no interpolation error.
pub fn integrate(
    cavity: &CavityParams,
    mode: &MechMode,
    drive: &Drive,
    initial: &TrajectoryState,
    sample_times: &[f64],
    options: &IntegrateOptions,
) -> Result<Vec<TrajectoryState>> {
    ensure(
        (1e-12..=1e-4).contains(&options.tol),
        "tolerance must lie in [1e-12, 1e-4]",
    )?;
    ensure(!sample_times.is_empty(), "no sample times requested")?;
    for w in sample_times.windows(2) {
        ensure(w[1] > w[0], "sample times must be strictly increasing")?;
    }
    ensure(sample_times[0] >= initial.t, "samples must not precede the initial time")?;

    let sys = System::new(cavity, mode, drive, options.input_phase);
    let mut t = initial.t;
    let mut y = [initial.a.re, initial.a.im, initial.x, initial.v];
    let mut k1 = sys.rhs(&y);

    // Per-component error scales: the field scale from the drive buildup, the
    // mechanical scales from the initial condition and the static response.
    let a_scale = (initial.a.norm())
        .max(sys.drive_term.norm() / sys.half_kappa.hypot(sys.detuning))
        .max(1e-6);
    let x_static = (HBAR * cavity.g0 / (mode.m_eff * mode.omega_m * mode.omega_m)).abs()
        * a_scale
        * a_scale;
    let x_scale = initial.x.abs().max(x_static).max(1e-18);
    let v_scale = x_scale * mode.omega_m;
    let scales = [a_scale, a_scale, x_scale, v_scale];

    let fastest = cavity.kappa.max(mode.omega_m).max(drive.detuning.abs());
    let mut h = (0.1 / fastest).min(
        sample_times
            .last()
            .map(|&tf| (tf - t).max(f64::MIN_POSITIVE))
            .unwrap(),
    );
    let h_min = 1e-6 / fastest * options.tol.max(1e-12);

    let mut out = Vec::with_capacity(sample_times.len());
    let mut sample_iter = sample_times.iter().copied().peekable();
    let mut err_prev: f64 = 1.0;
    let mut steps = 0usize;

    while let Some(&t_target) = sample_iter.peek() {
        if t >= t_target {
            out.push(TrajectoryState {
                a: Complex64::new(y[0], y[1]),
                x: y[2],
                v: y[3],
                t,
            });
            sample_iter.next();
            continue;
        }
        let h_try = h.min(t_target - t);
        steps += 1;
        if steps > options.max_steps {
            return Err(Error::Numerical("integrator step budget exhausted".into()));
        }

        // Dormand-Prince stages.
        let stage = |coeffs: &[(f64, &[f64; 4])]| {
            let mut s = y;
            for (c, k) in coeffs {
                for i in 0..4 {
                    s[i] += h_try * c * k[i];
                }
            }
            s
        };
        let k2 = sys.rhs(&stage(&[(A21, &k1)]));
        let k3 = sys.rhs(&stage(&[(A31, &k1), (A32, &k2)]));
        let k4 = sys.rhs(&stage(&[(A41, &k1), (A42, &k2), (A43, &k3)]));
        let k5 = sys.rhs(&stage(&[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]));
        let k6 = sys.rhs(&stage(&[
            (A61, &k1),
            (A62, &k2),
            (A63, &k3),
            (A64, &k4),
            (A65, &k5),
        ]));
        let mut y5 = y;
        for i in 0..4 {
            y5[i] += h_try
                * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] + B6 * k6[i]);
        }
        let k7 = sys.rhs(&y5);
        // Embedded 4th-order solution for the error estimate.
        let mut err_norm = 0.0_f64;
        for i in 0..4 {
            let y4 = y[i]
                + h_try
                    * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i]
                        + E7 * k7[i]);
            let scale = scales[i] + y[i].abs() + y5[i].abs();
            let e = (y5[i] - y4) / (options.tol * scale);
            err_norm += e * e;
        }
        err_norm = (err_norm / 4.0).sqrt();

        if err_norm <= 1.0 {
            t += h_try;
            y = y5;
            k1 = k7; // FSAL
            // PI step controller.
            let factor = 0.9 * err_norm.max(1e-10).powf(-0.7 / 5.0)
                * err_prev.max(1e-10).powf(0.4 / 5.0);
            h = h_try * factor.clamp(0.2, 5.0);
            err_prev = err_norm.max(1e-10);
        } else {
            h = h_try * (0.9 * err_norm.powf(-0.2)).clamp(0.1, 0.9);
            if h < h_min {
                return Err(Error::Numerical(format!(
                    "step size underflow at t = {t}: the system is too stiff for the \
                     requested tolerance (h = {h})"
                )));
            }
        }
        for v in y.iter() {
            if !v.is_finite() {
                return Err(Error::Numerical(format!(
                    "integration diverged at t = {t} (non-finite state)"
                )));
            }
        }
    }
    Ok(out)
}

/// Envelope classification of a ring-down/ring-up record: per-window RMS of
/// (x − x̄) over the last fifth of the samples compared with the middle fifth.
/// Positive return = growth, negative = decay (log-ratio per unit time).
pub fn envelope_rate(samples: &[TrajectoryState]) -> f64 {
    let n = samples.len();
    assert!(n >= 10, "envelope classification needs at least 10 samples");
    let mean: f64 = samples.iter().map(|s| s.x).sum::<f64>() / n as f64;
    let rms = |range: std::ops::Range<usize>| -> f64 {
        let m = range.len();
        (samples[range].iter().map(|s| (s.x - mean).powi(2)).sum::<f64>() / m as f64).sqrt()
    };
    let mid = rms(2 * n / 5..3 * n / 5);
    let late = rms(4 * n / 5..n);
    let t_mid = samples[n / 2].t;
    let t_late = samples[9 * n / 10].t;
    (late.max(1e-300) / mid.max(1e-300)).ln() / (t_late - t_mid)
}

/// Least-squares exponential fit of the envelope decay/growth rate of x(t)
/// around its mean, using per-period RMS bins. Returns the amplitude rate
/// (Γ/2 for an energy decay rate Γ).
pub fn fit_envelope_rate(samples: &[TrajectoryState], omega_mech: f64) -> Result<f64> {
    ensure(samples.len() >= 64, "too few samples for an envelope fit")?;
    let period = crate::constants::TWO_PI / omega_mech;
    let mean: f64 = samples.iter().map(|s| s.x).sum::<f64>() / samples.len() as f64;
    // Bin into whole multiples of the period, sized so roughly 64 bins span
    // the record and each holds enough samples for a stable RMS.
    let t0 = samples[0].t;
    let span = samples.last().unwrap().t - t0;
    let periods_per_bin = (span / period / 64.0).ceil().max(1.0);
    let bin_width = periods_per_bin * period;
    let mut bins: Vec<(f64, f64, usize)> = Vec::new();
    for s in samples {
        let idx = ((s.t - t0) / bin_width).floor() as usize;
        if bins.len() <= idx {
            bins.resize(idx + 1, (0.0, 0.0, 0));
        }
        let b = &mut bins[idx];
        b.0 += (s.x - mean) * (s.x - mean);
        b.1 += s.t;
        b.2 += 1;
    }
    let min_count = (samples.len() / bins.len().max(1) / 2).max(4);
    let pts: Vec<(f64, f64)> = bins
        .iter()
        .filter(|b| b.2 >= min_count && b.0 > 0.0)
        .map(|b| (b.1 / b.2 as f64, 0.5 * (b.0 / b.2 as f64).ln()))
        .collect();
    ensure(pts.len() >= 4, "too few full periods for an envelope fit")?;
    // Linear regression of ln(RMS) vs t.
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let denom = n * sxx - sx * sx;
    ensure(denom != 0.0, "degenerate envelope fit")?;
    Ok((n * sxy - sx * sy) / denom)
}

/// Locate the parametric-instability threshold power by bisecting on the
/// growth/decay of the mechanical envelope after transient discard.
///
/// `detuning` is the equilibrium detuning Δ̄ of the probed branch: for each
/// trial power the laser frequency is placed so that the static
/// radiation-pressure displacement lands the operating point exactly at Δ̄
/// (photon number and displacement then follow in closed form).
///
/// Converges to 0.5% relative in input power. Errors when the bracket does
/// not straddle the threshold.
pub fn threshold_search(
    cavity: &CavityParams,
    mode: &MechMode,
    detuning: f64,
    p_range: (f64, f64),
) -> Result<f64> {
    ensure(detuning > 0.0, "instability requires blue detuning")?;
    ensure(
        p_range.0 > 0.0 && p_range.1 > p_range.0,
        "power bracket must be positive and ordered",
    )?;
    let c2 = cavity.half_kappa().powi(2);
    let grows = |p_in: f64| -> Result<bool> {
        // Operating point at the prescribed equilibrium detuning.
        let omega_l = cavity.omega_c + detuning; // Δ̄ ≈ Δ up to the g0 x̄ shift
        let photons =
            cavity.kappa_ex() * (p_in / (HBAR * omega_l)) / (detuning * detuning + c2);
        let x_bar = -HBAR * cavity.g0 * photons / (mode.m_eff * mode.omega_m * mode.omega_m);
        let laser_detuning = detuning + cavity.g0 * x_bar;
        let drive = Drive::new(p_in, cavity.omega_c + laser_detuning, laser_detuning)?;
        let a_bar = steady_field_at(cavity, &drive, x_bar);
        // Small kick scaled so the frequency excursion stays ≪ κ.
        let kick = 1e-3 * cavity.kappa / cavity.g0.abs();
        let initial = TrajectoryState {
            a: a_bar,
            x: x_bar + kick,
            v: 0.0,
            t: 0.0,
        };
        // Long enough to resolve slow envelopes near the threshold.
        let t_end = 60.0 / mode.gamma_m;
        let n_samples = 4000;
        let samples: Vec<f64> = (1..=n_samples)
            .map(|i| t_end * i as f64 / n_samples as f64)
            .collect();
        let opts = IntegrateOptions { tol: 1e-7, ..Default::default() };
        let traj = integrate(cavity, mode, &drive, &initial, &samples, &opts)?;
        // Discard the transient fifth before classifying. Two guards around
        // the plain rate comparison: (a) far above threshold the oscillation
        // saturates into a limit cycle and the mid-vs-late windows flatten,
        // so a late amplitude well beyond the kick certifies growth; (b) deep
        // below threshold the envelope decays to the integrator noise floor,
        // where window ratios are meaningless, so growth additionally
        // requires the late envelope to remain at the kick scale.
        let tail = &traj[n_samples / 5..];
        let rate = envelope_rate(tail);
        let mean: f64 = tail.iter().map(|s| s.x).sum::<f64>() / tail.len() as f64;
        let late = &tail[4 * tail.len() / 5..];
        let late_rms = (late.iter().map(|s| (s.x - mean).powi(2)).sum::<f64>()
            / late.len() as f64)
            .sqrt();
        let kick_rms = kick / 2.0_f64.sqrt();
        Ok((rate > 0.0 && late_rms > kick_rms) || late_rms > 5.0 * kick_rms)
    };
    if grows(p_range.0)? {
        return Err(Error::Numerical(
            "lower bracket already self-oscillates; no sign change in range".into(),
        ));
    }
    if !grows(p_range.1)? {
        return Err(Error::Numerical(
            "upper bracket still decays; no sign change in range".into(),
        ));
    }
    let (mut lo, mut hi) = p_range;
    while (hi - lo) > 5e-3 * hi {
        let mid = 0.5 * (lo + hi);
        if grows(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Steady intracavity field at a displaced equilibrium (real-positive input
/// phase convention).
fn steady_field_at(cavity: &CavityParams, drive: &Drive, x_bar: f64) -> Complex64 {
    let delta_eff = drive.detuning - cavity.g0 * x_bar;
    cavity.kappa_ex().sqrt() * drive.photon_flux().sqrt()
        / Complex64::new(cavity.half_kappa(), -delta_eff)
}

/// Convenience: uniformly spaced sample times.
pub fn linspace(t0: f64, t1: f64, n: usize) -> Vec<f64> {
    (1..=n).map(|i| t0 + (t1 - t0) * i as f64 / n as f64).collect()
}
