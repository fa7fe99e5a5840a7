//! Scalar root finding and small-polynomial solvers.

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Brent's method on a bracketing interval [a, b] with f(a)·f(b) ≤ 0.
pub fn brent<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> Result<f64> {
    let (mut a, mut b) = (a, b);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa * fb > 0.0 {
        return Err(Error::Numerical(format!(
            "brent: no sign change on [{a}, {b}] (f = {fa}, {fb})"
        )));
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..200 {
        if fb.abs() > fc.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            // Inverse quadratic / secant step.
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let q0 = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * q0 * (q0 - r) - (b - a) * (r - 1.0));
                q = (q0 - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            if 2.0 * p < (3.0 * xm * q - (tol1 * q).abs()).min(e.abs() * q.abs()) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = f(b);
        if (fb > 0.0) == (fc > 0.0) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
    }
    Err(Error::Numerical("brent: iteration limit".into()))
}

/// Bisection to relative tolerance on x; requires a sign change.
pub fn bisect<F: Fn(f64) -> bool>(pred: &F, mut lo: f64, mut hi: f64, rel_tol: f64) -> f64 {
    // pred(lo) assumed false, pred(hi) assumed true; returns the boundary.
    while (hi - lo) > rel_tol * hi.abs() {
        let mid = 0.5 * (lo + hi);
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Golden-section minimization of a unimodal function on [a, b].
pub fn golden_min<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rel_tol: f64) -> f64 {
    let phi = (5.0_f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (a, b);
    let mut c = b - phi * (b - a);
    let mut d = a + phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > rel_tol * (a.abs() + b.abs()).max(1e-300) {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// All real roots of a3 x³ + a2 x² + a1 x + a0 = 0, Newton-polished and
/// sorted ascending. Degenerate (multiple) roots are deduplicated and
/// reported once with `multiplicity > 1`.
pub fn cubic_real_roots(a3: f64, a2: f64, a1: f64, a0: f64) -> Vec<CubicRoot> {
    if a3 == 0.0 {
        // Quadratic / linear fallback.
        return quadratic_real_roots(a2, a1, a0);
    }
    // Normalize: x³ + p x² + q x + r.
    let p = a2 / a3;
    let q = a1 / a3;
    let r = a0 / a3;
    // Depressed cubic t³ + at + b with x = t − p/3.
    let a = q - p * p / 3.0;
    let b = 2.0 * p * p * p / 27.0 - p * q / 3.0 + r;
    let shift = -p / 3.0;
    let disc = b * b / 4.0 + a * a * a / 27.0;
    let mut roots: Vec<f64> = Vec::new();
    if disc > 0.0 {
        // One real root (Cardano).
        let sq = disc.sqrt();
        let u = cbrt(-b / 2.0 + sq);
        let v = cbrt(-b / 2.0 - sq);
        roots.push(u + v + shift);
    } else {
        // Three real roots (trigonometric form).
        let m = (-a / 3.0).max(0.0).sqrt();
        if m == 0.0 {
            roots.push(shift); // triple root
        } else {
            let arg = (3.0 * b / (2.0 * a * m)).clamp(-1.0, 1.0);
            let theta = arg.acos() / 3.0;
            for k in 0..3 {
                let t = 2.0 * m * (theta - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos();
                roots.push(t + shift);
            }
        }
    }
    // Newton polish against the original polynomial.
    let f = |x: f64| ((a3 * x + a2) * x + a1) * x + a0;
    let df = |x: f64| (3.0 * a3 * x + 2.0 * a2) * x + a1;
    for x in roots.iter_mut() {
        for _ in 0..8 {
            let d = df(*x);
            if d == 0.0 {
                break;
            }
            let step = f(*x) / d;
            *x -= step;
            if step.abs() <= 1e-15 * x.abs().max(1e-300) {
                break;
            }
        }
    }
    roots.sort_by(|x, y| x.partial_cmp(y).unwrap());
    // Merge near-coincident roots into multiplicity flags.
    let scale = roots.iter().fold(1e-300_f64, |s, x| s.max(x.abs()));
    let mut out: Vec<CubicRoot> = Vec::new();
    for x in roots {
        match out.last_mut() {
            Some(last) if (x - last.x).abs() < 1e-7 * scale => last.multiplicity += 1,
            _ => out.push(CubicRoot { x, multiplicity: 1 }),
        }
    }
    out
}

#[derive(Debug, Clone, Copy)]
pub struct CubicRoot {
    pub x: f64,
    pub multiplicity: u8,
}

fn quadratic_real_roots(a: f64, b: f64, c: f64) -> Vec<CubicRoot> {
    if a == 0.0 {
        if b == 0.0 {
            return vec![];
        }
        return vec![CubicRoot { x: -c / b, multiplicity: 1 }];
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return vec![];
    }
    let sq = disc.sqrt();
    let q = -0.5 * (b + sq.copysign(b));
    let mut xs = if q == 0.0 {
        vec![0.0, 0.0]
    } else {
        vec![q / a, c / q]
    };
    xs.sort_by(|x, y| x.partial_cmp(y).unwrap());
    if (xs[1] - xs[0]).abs() < 1e-12 * xs[1].abs().max(1e-300) {
        vec![CubicRoot { x: xs[0], multiplicity: 2 }]
    } else {
        xs.into_iter().map(|x| CubicRoot { x, multiplicity: 1 }).collect()
    }
}

fn cbrt(x: f64) -> f64 {
    x.signum() * x.abs().powf(1.0 / 3.0)
}

/// All complex roots of a real-coefficient polynomial c[0] + c[1] x + ... +
/// c[n] x^n via Durand-Kerner iteration. Used for the 4x4 linearization's
/// characteristic quartic.
pub fn poly_roots(coeffs: &[f64]) -> Result<Vec<Complex64>> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return Ok(vec![]);
    }
    let lead = coeffs[n];
    if lead == 0.0 {
        return Err(Error::Numerical("poly_roots: zero leading coefficient".into()));
    }
    // Rescale the variable by the geometric mean of the root magnitudes so
    // the monic coefficients are O(1) even when the physical rates span many
    // decades (x = s·u).
    let scale = if coeffs[0] != 0.0 {
        (coeffs[0].abs() / lead.abs()).powf(1.0 / n as f64)
    } else {
        1.0
    };
    let monic: Vec<f64> = coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| c * scale.powi(k as i32 - n as i32) / lead)
        .collect();
    // Initial guesses on a circle whose radius bounds the scaled roots.
    let radius = 1.0
        + monic[..n]
            .iter()
            .fold(0.0_f64, |m, c| m.max(c.abs()));
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            Complex64::from_polar(radius, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64)
        })
        .collect();
    let eval = |x: Complex64| -> Complex64 {
        let mut acc = Complex64::new(monic[n], 0.0);
        for k in (0..n).rev() {
            acc = acc * x + monic[k];
        }
        acc
    };
    for _ in 0..500 {
        let mut max_step = 0.0_f64;
        for i in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    denom *= z[i] - z[j];
                }
            }
            let step = eval(z[i]) / denom;
            z[i] -= step;
            max_step = max_step.max(step.norm());
        }
        if max_step < 1e-14 * radius {
            return Ok(z.into_iter().map(|u| u * scale).collect());
        }
    }
    Err(Error::Numerical("poly_roots: Durand-Kerner did not converge".into()))
}
