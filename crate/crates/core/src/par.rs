//! Data-parallel evaluation of independent grid points.
//!
//! Every operation in this crate is a pure function of value types, so
//! parameter sweeps and spectra parallelize without coordination. With the
//! `parallel` feature (default) the grid map runs on the rayon thread pool;
//! without it, the same API degrades to a sequential loop. Results are
//! returned in grid order either way.

/// Map `f` over the grid, in parallel when the `parallel` feature is enabled.
#[cfg(feature = "parallel")]
pub fn map_grid<T, R, F>(grid: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    grid.par_iter().map(f).collect()
}

/// Map `f` over the grid (sequential fallback build).
#[cfg(not(feature = "parallel"))]
pub fn map_grid<T, R, F>(grid: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    grid.iter().map(f).collect()
}

/// Always-sequential map, kept available for benchmarking against the
/// parallel path.
pub fn map_grid_seq<T, R, F>(grid: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    grid.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_matches_sequential_order() {
        let grid: Vec<f64> = (0..10_000).map(|i| i as f64 * 0.1).collect();
        let f = |x: &f64| (x * 1.000001).sin() * x;
        let par = map_grid(&grid, f);
        let seq = map_grid_seq(&grid, f);
        assert_eq!(par.len(), seq.len());
        for (a, b) in par.iter().zip(&seq) {
            assert_eq!(a, b, "bitwise identical regardless of scheduling");
        }
    }
}
