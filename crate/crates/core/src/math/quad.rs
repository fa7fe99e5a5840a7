//! Adaptive Simpson quadrature and Gauss-Legendre nodes.

use crate::error::{Error, Result};

/// Adaptive Simpson integration of `f` over `[a, b]` to relative tolerance
/// `rel_tol` (with a small absolute floor). Returns an error if the recursion
/// depth is exhausted before the tolerance is met.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rel_tol: f64) -> Result<f64> {
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(a, b, fa, fm, fb);
    // One refinement to seed the absolute error budget; per-panel relative
    // control would stall on near-zero panels.
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let (flm, frm) = (f(lm), f(rm));
    let left0 = simpson(a, m, fa, flm, fm);
    let right0 = simpson(m, b, fm, frm, fb);
    let eps = rel_tol * (left0 + right0).abs().max(whole.abs()).max(1e-300);
    let mut budget = 200_000usize;
    let left = simpson_rec(f, a, m, fa, flm, fm, left0, 0.5 * eps, 50, &mut budget)?;
    let right = simpson_rec(f, m, b, fm, frm, fb, right0, 0.5 * eps, 50, &mut budget)?;
    Ok(left + right)
}

/// Adaptive Simpson over a set of breakpoints (useful when the integrand has
/// known narrow features: seed one panel per segment).
pub fn adaptive_simpson_segmented<F: Fn(f64) -> f64>(
    f: &F,
    breakpoints: &[f64],
    rel_tol: f64,
) -> Result<f64> {
    let mut total = 0.0;
    for w in breakpoints.windows(2) {
        total += adaptive_simpson(f, w[0], w[1], rel_tol)?;
    }
    Ok(total)
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn simpson_rec<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    eps: f64,
    depth: usize,
    budget: &mut usize,
) -> Result<f64> {
    if *budget == 0 {
        return Err(Error::Numerical(
            "adaptive quadrature: evaluation budget exhausted".into(),
        ));
    }
    *budget -= 1;
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let refined = left + right;
    let err = refined - whole;
    if err.abs() <= 15.0 * eps || depth == 0 {
        if depth == 0 && err.abs() > 15.0 * eps {
            return Err(Error::Numerical(
                "adaptive quadrature: max depth reached before convergence".into(),
            ));
        }
        return Ok(refined + err / 15.0);
    }
    let l = simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1, budget)?;
    let r = simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1, budget)?;
    Ok(l + r)
}

/// 64-point Gauss-Legendre integration of `f` over `[a, b]`.
///
/// Nodes/weights are generated by Newton iteration on the Legendre
/// polynomial, cached per call (cheap relative to physics integrands).
pub fn gauss_legendre<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, n: usize) -> f64 {
    let (nodes, weights) = gl_nodes(n);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut sum = 0.0;
    for (x, w) in nodes.iter().zip(weights.iter()) {
        sum += w * f(mid + half * x);
    }
    sum * half
}

/// Gauss-Legendre nodes and weights on [-1, 1].
pub fn gl_nodes(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Initial guess (Chebyshev-like).
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre recurrence for P_n(x) and derivative.
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let pk = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = pk;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Trapezoid rule on tabulated (possibly non-uniform) samples.
pub fn trapezoid(grid: &[f64], values: &[f64]) -> f64 {
    grid.windows(2)
        .zip(values.windows(2))
        .map(|(x, y)| 0.5 * (x[1] - x[0]) * (y[0] + y[1]))
        .sum()
}
