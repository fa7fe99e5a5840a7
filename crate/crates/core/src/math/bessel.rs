//! Bessel functions of the first kind, integer order.

/// J_n(x) for a range of orders 0..=n_max at once, via Miller's downward
/// recurrence normalized with J_0 + 2 Σ J_{2k} = 1.
///
/// Stable for all orders including n > x, where upward recurrence blows up.
pub fn jn_array(n_max: usize, x: f64) -> Vec<f64> {
    if x == 0.0 {
        let mut out = vec![0.0; n_max + 1];
        out[0] = 1.0;
        return out;
    }
    let ax = x.abs();
    // Start the downward recurrence well above both n_max and |x|.
    let start = n_max.max(ax as usize) + 16 + (ax.sqrt() as usize) * 2;
    let mut jp = 0.0_f64; // J_{k+1}
    let mut j = 1e-30_f64; // J_k (arbitrary seed)
    let mut norm = 0.0_f64;
    let mut out = vec![0.0; n_max + 1];
    for k in (0..=start).rev() {
        let jm = (2.0 * (k as f64 + 1.0) / ax) * j - jp; // J_k from J_{k+1}, J_{k+2}
        jp = j;
        j = jm;
        // Rescale to avoid overflow of the unnormalized recurrence.
        if j.abs() > 1e100 {
            j *= 1e-100;
            jp *= 1e-100;
            norm *= 1e-100;
            for v in out.iter_mut() {
                *v *= 1e-100;
            }
        }
        if k <= n_max {
            out[k] = j;
        }
        if k > 0 && k % 2 == 0 {
            norm += 2.0 * j;
        }
    }
    norm += j; // J_0 term
    for v in out.iter_mut() {
        *v /= norm;
    }
    // J_n(-x) = (-1)^n J_n(x)
    if x < 0.0 {
        for (k, v) in out.iter_mut().enumerate() {
            if k % 2 == 1 {
                *v = -*v;
            }
        }
    }
    out
}

/// J_n(x) for a single integer order n ≥ 0.
pub fn jn(n: usize, x: f64) -> f64 {
    jn_array(n, x)[n]
}

/// J_1(x), convenience wrapper.
pub fn j1(x: f64) -> f64 {
    jn(1, x)
}

#[cfg(test)]
mod tests {
    use super::*;

    // Reference values from Abramowitz & Stegun tables.
    #[test]
    fn known_values() {
        assert!((jn(0, 1.0) - 0.7651976865579666).abs() < 1e-12);
        assert!((jn(1, 1.0) - 0.4400505857449335).abs() < 1e-12);
        assert!((jn(2, 1.0) - 0.1149034849319005).abs() < 1e-12);
        assert!((jn(0, 2.404825557695773) - 0.0).abs() < 1e-10); // first zero of J0
        assert!((jn(5, 10.0) + 0.2340615281867936).abs() < 1e-12);
        assert!((jn(1, 3.0) - 0.3390589585259365).abs() < 1e-12);
    }

    #[test]
    fn sum_rule() {
        // J_0^2 + 2 Σ_{n≥1} J_n^2 = 1
        for &x in &[0.5, 1.8, 2.4, 2.9, 7.3] {
            let j = jn_array((x as usize) + 25, x);
            let s = j[0] * j[0] + 2.0 * j.iter().skip(1).map(|v| v * v).sum::<f64>();
            assert!((s - 1.0).abs() < 1e-12, "sum rule violated at x={x}: {s}");
        }
    }

    #[test]
    fn negative_argument_parity() {
        for n in 0..5 {
            let sign = if n % 2 == 1 { -1.0 } else { 1.0 };
            assert!((jn_array(n, -2.3)[n] - sign * jn(n, 2.3)).abs() < 1e-14);
        }
    }
}
