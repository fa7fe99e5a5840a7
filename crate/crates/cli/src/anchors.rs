//! Registry of headline numbers the toolkit reproduces, with the published
//! value and tolerance pinned per anchor. `wgmom reproduce <name>` prints
//! computed vs published and a pass/fail verdict.

use wgmom::constants::{C_LIGHT, TWO_PI};
use wgmom::cooling;
use wgmom::dynba;
use wgmom::mechanics::{self, ElasticMaterial, TlsParams};
use wgmom::model::{finesse, n_bath, CavityParams, MechMode, OperatingPoint};
use wgmom::noisemeter;

pub struct Anchor {
    pub name: &'static str,
    pub description: &'static str,
    pub published: f64,
    /// Relative tolerance, or absolute when `absolute` is set.
    pub tolerance: f64,
    pub absolute: bool,
    pub compute: fn() -> f64,
}

pub fn registry() -> Vec<Anchor> {
    vec![
        Anchor {
            name: "sphere-91.2mhz",
            description: "fundamental breathing-mode frequency, silica sphere R = 25 um (Hz)",
            published: 91.2e6,
            tolerance: 5e-3,
            absolute: false,
            compute: || {
                let m = mechanics::sphere_fundamental(&ElasticMaterial::silica(), 25e-6)
                    .unwrap();
                m.omega / TWO_PI
            },
        },
        Anchor {
            name: "sphere-kr-2.4005",
            description: "characteristic-equation root kR for silica",
            published: 2.4005,
            tolerance: 1e-3,
            absolute: true,
            compute: || {
                mechanics::sphere_fundamental(&ElasticMaterial::silica(), 25e-6)
                    .unwrap()
                    .k_root
            },
        },
        Anchor {
            name: "meff-8470",
            description: "sphere effective mass coefficient m_eff/R^3 (kg/m^3)",
            published: 8470.0,
            tolerance: 0.01,
            absolute: false,
            compute: || {
                mechanics::sphere_effective_mass(&ElasticMaterial::silica(), 25e-6)
                    / 25e-6_f64.powi(3)
            },
        },
        Anchor {
            name: "sql-2.2am",
            description: "peak SQL amplitude for the 40.6 MHz, 10 ng toroid (m/rtHz)",
            published: 2.2e-18,
            tolerance: 0.05,
            absolute: false,
            compute: || {
                let mode =
                    MechMode::new(TWO_PI * 40.6e6, TWO_PI * 1.3e3, 10e-12, 300.0).unwrap();
                noisemeter::sql_spectrum(&mode, 1.0, mode.omega_m).sqrt()
            },
        },
        Anchor {
            name: "nfn-5200",
            description: "frequency-noise-limited occupancy floor (room-T run)",
            published: 5200.0,
            tolerance: 0.10,
            absolute: false,
            compute: || {
                let mode =
                    MechMode::new(TWO_PI * 40.6e6, TWO_PI * 1.3e3, 10e-12, 300.0).unwrap();
                let cavity =
                    CavityParams::wgm(TWO_PI * 3.0e14, TWO_PI * 5.8e6, 0.5, 38e-6).unwrap();
                let s_ww = (4e-6 * mode.omega_m).powi(2);
                cooling::frequency_noise_limit(&cavity, &mode, s_ww).unwrap()
            },
        },
        Anchor {
            name: "rsb-factor-23",
            description: "quantum limit of the sideband-factor-23 device",
            published: 1.2e-4,
            tolerance: 0.05,
            absolute: false,
            compute: || {
                let mode =
                    MechMode::new(TWO_PI * 73.5e6, TWO_PI * 35e3, 10e-12, 300.0).unwrap();
                let cavity =
                    CavityParams::wgm(TWO_PI * 2.8177e14, TWO_PI * 3.2e6, 0.5, 23.5e-6)
                        .unwrap();
                let op = OperatingPoint::from_photons(1e4, -mode.omega_m).unwrap();
                cooling::quantum_limit(&cavity, &mode, &op).unwrap()
            },
        },
        Anchor {
            name: "pthresh-4sqrt-etac",
            description: "P_thresh/P_SQL at eta_c = 1/2, kappa/Omega_m = 1/50",
            published: 2.0 * std::f64::consts::SQRT_2, // 4·√0.5
            tolerance: 0.01,
            absolute: false,
            compute: || {
                let mode =
                    MechMode::new(TWO_PI * 56.5e6, TWO_PI * 10e3, 10e-12, 300.0).unwrap();
                let cavity =
                    CavityParams::wgm(TWO_PI * 2.8e14, mode.omega_m / 50.0, 0.5, 25e-6)
                        .unwrap();
                dynba::instability_threshold(&cavity, &mode, mode.omega_m).unwrap()
                    / dynba::p_sql(&cavity, &mode)
            },
        },
        Anchor {
            name: "ratio-240",
            description: "pump-probe radiation-pressure/Kerr response ratio at Omega_m",
            published: 240.0,
            tolerance: 0.10,
            absolute: false,
            compute: || {
                let params = dynba::ResponseParams {
                    omega_c: TWO_PI * 1.934e14,
                    alpha: 5.5e-7,
                    dn_dt: 1.2e-5,
                    n: 1.45,
                    n2: 2.9e-20,
                    a_eff: 2.5e-12,
                    radius: 29e-6,
                    beta1: 1.8e4,
                    beta2: 570.0,
                    omega1: TWO_PI * 900.0,
                    omega2: TWO_PI * 69e3,
                    tau_abs: 100e-9,
                    mech: MechMode::new(TWO_PI * 58e6, TWO_PI * 15.7e3, 15e-12, 300.0)
                        .unwrap(),
                };
                let s = dynba::pump_probe_response(&params, params.mech.omega_m);
                s.radiation_pressure.norm() / s.kerr.norm()
            },
        },
        Anchor {
            name: "tls-qmin-500",
            description: "minimum TLS-limited quality factor at 40 MHz",
            published: 500.0,
            tolerance: 0.02,
            absolute: false,
            compute: || {
                let p = TlsParams::silica();
                let q = |t: f64| mechanics::tls_quality_factor(&p, t, TWO_PI * 40e6).unwrap();
                let t_min = wgmom::math::roots::golden_min(&q, 15.0, 200.0, 1e-6);
                q(t_min)
            },
        },
        Anchor {
            name: "nbath-600",
            description: "thermal occupancy of the 62 MHz mode at 1.8 K",
            published: 600.0,
            tolerance: 0.02,
            absolute: false,
            compute: || {
                let mode = MechMode::new(TWO_PI * 62e6, TWO_PI * 1e3, 1e-11, 1.8).unwrap();
                n_bath(&mode).unwrap()
            },
        },
        Anchor {
            name: "finesse-440k",
            description: "finesse of the 3.2 MHz-linewidth, R = 23.5 um device (n = 1.45)",
            published: 4.4e5,
            tolerance: 0.02,
            absolute: false,
            compute: || {
                let cavity =
                    CavityParams::wgm(TWO_PI * 2.9e14, TWO_PI * 3.2e6, 0.5, 23.5e-6).unwrap();
                let fsr = C_LIGHT / (1.45 * cavity.radius);
                finesse(&cavity, fsr).unwrap()
            },
        },
        Anchor {
            name: "tm-11k",
            description: "mode temperature at Gamma_eff/Gamma_m = 27 from 300 K (K)",
            published: 11.0,
            tolerance: 0.05,
            absolute: false,
            compute: || {
                let mode =
                    MechMode::new(TWO_PI * 57e6, TWO_PI * 10e3, 10e-12, 300.0).unwrap();
                dynba::mode_temperature(&mode, 27.0 * mode.gamma_m).unwrap()
            },
        },
        Anchor {
            name: "n63",
            description: "cryogenic sideband-cooled occupancy (published 63 ± 20)",
            published: 63.0,
            tolerance: 0.32,
            absolute: false,
            compute: || {
                let mode =
                    MechMode::new(TWO_PI * 65.2e6, TWO_PI * 10e3, 5.6e-12, 1.7).unwrap();
                let cavity =
                    CavityParams::wgm(TWO_PI * 3.845e14, TWO_PI * 19e6, 0.65, 26e-6).unwrap();
                let op1 = OperatingPoint::from_photons(1.0, -mode.omega_m).unwrap();
                let (am1, ap1) = cooling::scattering_rates(&cavity, &mode, &op1);
                let photons = 7.7 * mode.gamma_m / (am1 - ap1);
                let op = OperatingPoint::from_photons(photons, -mode.omega_m).unwrap();
                cooling::final_occupancy(&cavity, &mode, &op, None)
                    .unwrap()
                    .n_final
            },
        },
        Anchor {
            name: "omit-extinction",
            description: "probe extinction at critical coupling with the coupling laser off",
            published: 0.0,
            tolerance: 1e-12,
            absolute: true,
            compute: || {
                let mode =
                    MechMode::new(TWO_PI * 40e6, TWO_PI * 1.3e3, 10e-12, 300.0).unwrap();
                let cavity =
                    CavityParams::wgm(TWO_PI * 2.8177e14, TWO_PI * 5e6, 0.5, 40e-6).unwrap();
                let dark = OperatingPoint::from_photons(0.0, -mode.omega_m).unwrap();
                cooling::omit_transmission(&cavity, &mode, &dark, mode.omega_m)
            },
        },
        Anchor {
            name: "xzpf-145am",
            description: "zero-point motion of the 10 ng, 40 MHz mode (m)",
            published: 1.45e-16,
            tolerance: 0.01,
            absolute: false,
            compute: || {
                let mode =
                    MechMode::new(TWO_PI * 40e6, TWO_PI * 1.3e3, 10e-12, 300.0).unwrap();
                wgmom::model::x_zpf(&mode)
            },
        },
    ]
}

pub struct AnchorResult {
    pub name: &'static str,
    pub computed: f64,
    pub published: f64,
    pub tolerance: f64,
    pub absolute: bool,
    pub pass: bool,
}

pub fn evaluate(anchor: &Anchor) -> AnchorResult {
    let computed = (anchor.compute)();
    let pass = if anchor.absolute {
        (computed - anchor.published).abs() <= anchor.tolerance
    } else {
        (computed - anchor.published).abs() <= anchor.tolerance * anchor.published.abs()
    };
    AnchorResult {
        name: anchor.name,
        computed,
        published: anchor.published,
        tolerance: anchor.tolerance,
        absolute: anchor.absolute,
        pass,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_anchors_pass() {
        for anchor in registry() {
            let r = evaluate(&anchor);
            assert!(
                r.pass,
                "{}: computed {} vs published {} (tol {})",
                r.name, r.computed, r.published, r.tolerance
            );
        }
    }

    #[test]
    fn names_are_unique() {
        let reg = registry();
        for (i, a) in reg.iter().enumerate() {
            for b in &reg[i + 1..] {
                assert_ne!(a.name, b.name);
            }
        }
    }
}
