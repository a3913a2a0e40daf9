//! Small shared helpers: seeded RNG construction and deterministic reductions.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Deterministic RNG from a run seed and a stream label, so independent
/// probes never share a stream.
pub fn seeded_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ stream.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

/// Standard complex Gaussian sample (Box-Muller on two uniforms).
pub fn gaussian_c64<R: Rng>(rng: &mut R) -> Complex64 {
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let r = (-2.0 * u1.ln()).sqrt();
    Complex64::new(r * u2.cos(), r * u2.sin()) / std::f64::consts::SQRT_2
}

/// Ordered (bit-reproducible) sum of per-item results.
///
/// With the `parallel` feature the map runs on the rayon pool but the final
/// reduction is a deterministic in-order fold.
#[cfg(feature = "parallel")]
pub fn ordered_sum<T, F>(n: usize, f: F) -> T
where
    T: std::iter::Sum<T> + Send,
    F: Fn(usize) -> T + Sync,
{
    use rayon::prelude::*;
    let parts: Vec<T> = (0..n).into_par_iter().map(&f).collect();
    parts.into_iter().sum()
}

#[cfg(not(feature = "parallel"))]
pub fn ordered_sum<T, F>(n: usize, f: F) -> T
where
    T: std::iter::Sum<T>,
    F: Fn(usize) -> T,
{
    (0..n).map(f).sum()
}

/// Evaluate `f` on `0..n`, collecting results in index order.
#[cfg(feature = "parallel")]
pub fn par_map<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn par_map<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..n).map(f).collect()
}

/// Least-squares slope of log|y| against log x, ignoring zero values.
/// Returns `None` when fewer than two usable points remain.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = xs
        .iter()
        .zip(ys)
        .filter(|(&x, &y)| x > 0.0 && y.abs() > 0.0)
        .map(|(&x, &y)| (x.ln(), y.abs().ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let denom = n * sxx - sx * sx;
    if denom.abs() < 1e-300 {
        return None;
    }
    Some((n * sxy - sx * sy) / denom)
}
