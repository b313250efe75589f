//! Oracles shared by the integration tests. Nothing here calls into the
//! library's own symbol, kappa or quadrature code.
#![allow(dead_code)]

use std::f64::consts::PI;

use frv_varma::Complex64;

pub fn mp_density(lambda: f64, r: f64) -> f64 {
    let lo = (1.0 - r.sqrt()).powi(2);
    let hi = (1.0 + r.sqrt()).powi(2);
    if lambda <= lo || lambda >= hi {
        return 0.0;
    }
    ((hi - lambda) * (lambda - lo)).sqrt() / (2.0 * PI * r * lambda)
}

pub fn mp_edges(r: f64) -> (f64, f64) {
    ((1.0 - r.sqrt()).powi(2), (1.0 + r.sqrt()).powi(2))
}

/// `|sum a_k e^{ikp}|^2 / |1 - sum b_j e^{ijp}|^2`.
pub fn symbol(a: &[f64], b: &[f64], p: f64) -> f64 {
    let num: Complex64 = a.iter().enumerate().map(|(k, &c)| Complex64::from_polar(c, k as f64 * p)).sum();
    let den: Complex64 = Complex64::new(1.0, 0.0)
        - b.iter().enumerate().map(|(j, &c)| Complex64::from_polar(c, (j + 1) as f64 * p)).sum::<Complex64>();
    num.norm_sqr() / den.norm_sqr()
}

/// `(1/2pi) int A(p) / (z - A(p)) dp` on a uniform periodic grid.
pub fn quadrature_m(a: &[f64], b: &[f64], z: Complex64, points: usize) -> Complex64 {
    let h = 2.0 * PI / points as f64;
    (0..points)
        .map(|k| {
            let s = symbol(a, b, -PI + h * k as f64);
            Complex64::new(s, 0.0) / (z - s)
        })
        .sum::<Complex64>()
        / points as f64
}

/// `(1/2pi) int cos(d p) A(p) dp`.
pub fn inverse_fourier(a: &[f64], b: &[f64], d: i64, points: usize) -> f64 {
    let h = 2.0 * PI / points as f64;
    (0..points)
        .map(|k| {
            let p = -PI + h * k as f64;
            symbol(a, b, p) * (d as f64 * p).cos()
        })
        .sum::<f64>()
        / points as f64
}

pub fn var1_autocov(a0: f64, b1: f64, d: i64) -> f64 {
    a0 * a0 / (1.0 - b1 * b1) * b1.powi(d.unsigned_abs() as i32)
}

pub fn varma11_autocov(a0: f64, a1: f64, b1: f64, d: i64) -> f64 {
    let delta = if d == 0 { 1.0 } else { 0.0 };
    -a0 * a1 / b1 * delta + (a1 + a0 * b1) * (a0 + a1 * b1) / (b1 * (1.0 - b1 * b1)) * b1.powi(d.unsigned_abs() as i32)
}

/// Sample `(1/n) sum y_t y_{t+lag}` with a batch-means standard error.
pub fn sample_autocov(y: &[f64], lag: usize, batches: usize) -> (f64, f64) {
    let n = y.len() - lag;
    let products: Vec<f64> = (0..n).map(|t| y[t] * y[t + lag]).collect();
    let mean = products.iter().sum::<f64>() / n as f64;
    let size = n / batches;
    let means: Vec<f64> =
        (0..batches).map(|b| products[b * size..(b + 1) * size].iter().sum::<f64>() / size as f64).collect();
    let bm = means.iter().sum::<f64>() / batches as f64;
    let var = means.iter().map(|m| (m - bm).powi(2)).sum::<f64>() / (batches - 1) as f64;
    (mean, (var / batches as f64).sqrt())
}

pub fn trapezoid(x: &[f64], y: &[f64]) -> f64 {
    (1..x.len()).map(|i| 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1])).sum()
}

/// Deterministic complex test points off the real axis.
pub fn test_points(count: usize, seed: u64) -> Vec<Complex64> {
    let mut s = seed;
    let mut next = || {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (s >> 11) as f64 / (1u64 << 53) as f64
    };
    (0..count)
        .map(|_| {
            let re = -2.0 + 6.0 * next();
            let im = (0.05 + 2.0 * next()) * if next() < 0.5 { -1.0 } else { 1.0 };
            Complex64::new(re, im)
        })
        .collect()
}
