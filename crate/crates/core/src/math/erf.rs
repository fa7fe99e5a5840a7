//! Error function, accurate to ~1e-14 over the full range.

use std::f64::consts::PI;

/// erf(x) via Taylor series for small |x| and a Lentz continued fraction for
/// the complementary function at large |x|.
pub fn erf(x: f64) -> f64 {
    let ax = x.abs();
    let val = if ax < 2.0 { erf_series(ax) } else { 1.0 - erfc_cf(ax) };
    if x < 0.0 {
        -val
    } else {
        val
    }
}

fn erf_series(x: f64) -> f64 {
    // erf(x) = 2/√π Σ (−1)^n x^{2n+1} / (n! (2n+1))
    let mut term = x;
    let mut sum = x;
    let x2 = x * x;
    for n in 1..200 {
        term *= -x2 / n as f64;
        let add = term / (2.0 * n as f64 + 1.0);
        sum += add;
        if add.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    2.0 / PI.sqrt() * sum
}

fn erfc_cf(x: f64) -> f64 {
    // erfc(x) = e^{−x²}/√π · 1/(x + 1/2/(x + 1/(x + 3/2/(x + ...))))
    // evaluated with the modified Lentz algorithm.
    let tiny = 1e-300;
    let mut f = tiny;
    let mut c = f;
    let mut d = 0.0;
    for i in 0..300 {
        let (a, b) = if i == 0 {
            (1.0, x)
        } else {
            (i as f64 / 2.0, x)
        };
        d = b + a * d;
        if d.abs() < tiny {
            d = tiny;
        }
        c = b + a / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    (-x * x).exp() / PI.sqrt() * f
}
