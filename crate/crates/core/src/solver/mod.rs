//! Limiting eigenvalue density of the Pearson estimator.
//!
//! Two routes produce a [`DensityCurve`]: root selection on the polynomial
//! equation of the order-one families, and Newton continuation on the
//! general equation with a residue-evaluated `M_A`. Both march down from a
//! far point on the real axis where the physical branch is pinned by its
//! large-`z` expansion.

mod equations;
mod track;

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

pub use equations::{
    build_var1_equation, build_varma11_equation, build_vma1_equation, PolySpectralEquation, SpectralFamily,
};
pub use track::{GeneralTracker, PolyTracker, Tracked, Tracker, AMBIGUITY_TOLERANCE};

use crate::error::{Error, Result};
use crate::process::ProcessSpec;
use crate::transforms::{density_from_green, MTransform};

/// Default imaginary offset of the general route.
pub const DEFAULT_EPSILON: f64 = 1e-6;
/// Default number of grid points.
pub const DEFAULT_POINTS: usize = 1000;
/// Relative margin added on both sides of the support.
pub const GRID_MARGIN: f64 = 0.05;
/// Edge bisection stops at this relative width.
pub const EDGE_TOLERANCE: f64 = 1e-8;

const SCAN_POINTS: usize = 2000;
const MARCH_STEPS: usize = 60;
const SYMBOL_SAMPLES: usize = 4096;
const EDGE_SAMPLES: usize = 130;
const EDGE_RATIO: f64 = 0.85;
const EDGE_CELLS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Polynomial,
    General,
    #[default]
    Auto,
}

impl std::str::FromStr for Route {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "polynomial" | "poly" => Ok(Self::Polynomial),
            "general" => Ok(Self::General),
            "auto" => Ok(Self::Auto),
            other => Err(Error::InvalidArgument(format!("unknown route '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DensityCurve {
    pub lambdas: Vec<f64>,
    pub rho: Vec<f64>,
    #[serde(skip)]
    pub m_values: Vec<Complex64>,
    pub r: f64,
    pub process: ProcessSpec,
    pub route: Route,
    pub epsilon: f64,
    pub support_intervals: Vec<(f64, f64)>,
    /// Extra `(lambda, rho)` samples inside grid cells cut by a support edge.
    #[serde(skip)]
    pub edge_samples: Vec<(f64, f64)>,
    /// Mass of the continuous part.
    pub normalization: f64,
    /// Point mass at zero, `1 - 1/r` when `r > 1`.
    pub atom: f64,
    pub first_moment: f64,
    pub second_moment: f64,
    /// Grid points where two admissible roots nearly coincided.
    pub flagged: Vec<f64>,
}

impl DensityCurve {
    pub fn peak(&self) -> (f64, f64) {
        self.lambdas
            .iter()
            .zip(&self.rho)
            .fold((f64::NAN, f64::NEG_INFINITY), |best, (&l, &p)| if p > best.1 { (l, p) } else { best })
    }

    /// Linear interpolation, zero outside the grid.
    pub fn interpolate(&self, lambda: f64) -> f64 {
        let n = self.lambdas.len();
        if n == 0 || lambda < self.lambdas[0] || lambda > self.lambdas[n - 1] {
            return 0.0;
        }
        let k = self.lambdas.partition_point(|&l| l <= lambda);
        if k == 0 {
            return self.rho[0];
        }
        if k >= n {
            return self.rho[n - 1];
        }
        let (l0, l1) = (self.lambdas[k - 1], self.lambdas[k]);
        let t = if l1 > l0 { (lambda - l0) / (l1 - l0) } else { 0.0 };
        self.rho[k - 1] * (1.0 - t) + self.rho[k] * t
    }

    /// Cumulative trapezoid of the continuous part, plus the atom.
    pub fn cdf(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.lambdas.len());
        let mut acc = self.atom;
        for k in 0..self.lambdas.len() {
            if k > 0 {
                acc += 0.5 * (self.rho[k] + self.rho[k - 1]) * (self.lambdas[k] - self.lambdas[k - 1]);
            }
            out.push(acc);
        }
        out
    }

    /// Grid and edge samples merged in ascending order.
    pub fn samples(&self) -> (Vec<f64>, Vec<f64>) {
        let mut all: Vec<(f64, f64)> = self
            .lambdas
            .iter()
            .copied()
            .zip(self.rho.iter().copied())
            .chain(self.edge_samples.iter().copied())
            .collect();
        all.sort_by(|a, b| a.0.total_cmp(&b.0));
        all.dedup_by(|a, b| a.0 == b.0);
        all.into_iter().unzip()
    }

    pub fn support_span(&self) -> Option<(f64, f64)> {
        let lo = self.support_intervals.first()?.0;
        let hi = self.support_intervals.last()?.1;
        Some((lo, hi))
    }
}

/// `int lambda^k rho(lambda) d lambda` by the trapezoid rule, `k <= 4`.
///
/// The atom at zero contributes only to `k = 0`.
pub fn curve_moments(curve: &DensityCurve, k: u32) -> Result<f64> {
    if k > 4 {
        return Err(Error::InvalidArgument(format!("moment order {k} exceeds 4")));
    }
    let (lambdas, rho) = curve.samples();
    let f = |i: usize| lambdas[i].powi(k as i32) * rho[i];
    let mut sum = 0.0;
    for i in 1..lambdas.len() {
        let (x0, x1) = (lambdas[i - 1], lambdas[i]);
        if curve.support_intervals.is_empty() {
            sum += 0.5 * (f(i) + f(i - 1)) * (x1 - x0);
            continue;
        }
        // cells cut by a support edge get a square-root profile from the edge
        for &(lo, hi) in &curve.support_intervals {
            let (a, b) = (x0.max(lo), x1.min(hi));
            if a >= b {
                continue;
            }
            sum += match (a > x0, b < x1) {
                (false, false) => 0.5 * (f(i) + f(i - 1)) * (x1 - x0),
                (true, false) => 2.0 / 3.0 * f(i) * (x1 - a),
                (false, true) => 2.0 / 3.0 * f(i - 1) * (b - x0),
                (true, true) => 0.0,
            };
        }
    }
    if k == 0 {
        sum += curve.atom;
    }
    Ok(sum)
}

/// `A(0)` and `sum_d A(d)^2`, by Parseval on the symbol.
pub fn autocov_moments(spec: &ProcessSpec) -> (f64, f64) {
    let symbol = spec.symbol();
    let (mut s1, mut s2) = (0.0, 0.0);
    for k in 0..SYMBOL_SAMPLES {
        let v = symbol.at(PI * (k as f64 + 0.5) / SYMBOL_SAMPLES as f64);
        s1 += v;
        s2 += v * v;
    }
    (s1 / SYMBOL_SAMPLES as f64, s2 / SYMBOL_SAMPLES as f64)
}

/// Theoretical first two moments of the limiting density.
pub fn theoretical_moments(spec: &ProcessSpec, r: f64) -> (f64, f64) {
    let (a0, sum_sq) = autocov_moments(spec);
    (a0, a0 * a0 + r * sum_sq)
}

fn check_r(r: f64) -> Result<()> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidArgument(format!("r = {r} must be positive and finite")));
    }
    Ok(())
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.len() < 2 {
        return Err(Error::InvalidArgument("the grid needs at least two points".into()));
    }
    if grid.iter().any(|l| !l.is_finite() || *l < 0.0) {
        return Err(Error::InvalidArgument("grid points must be finite and non-negative".into()));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument("the grid must be strictly increasing".into()));
    }
    Ok(())
}

/// Everything needed to trace a process at a given `r`.
struct Context {
    spec: ProcessSpec,
    r: f64,
    route: Route,
    tracker: Box<dyn Tracker + Sync>,
    upper: f64,
    lower: f64,
    far_seed: (f64, Complex64),
}

impl Context {
    fn new(spec: &ProcessSpec, r: f64, route: Route, epsilon: Option<f64>) -> Result<Self> {
        check_r(r)?;
        let (resolved, tracker): (Route, Box<dyn Tracker + Sync>) = match route {
            Route::Polynomial => (Route::Polynomial, poly_tracker(spec, r, epsilon)?),
            Route::General => (Route::General, general_tracker(spec, r, epsilon)?),
            Route::Auto => match SpectralFamily::for_spec(spec) {
                Ok(_) => (Route::Polynomial, poly_tracker(spec, r, epsilon)?),
                Err(_) => (Route::General, general_tracker(spec, r, epsilon)?),
            },
        };
        let (amin, amax) = spec.symbol().range();
        let sr = r.sqrt();
        let upper = 1.1 * amax * (1.0 + sr).powi(2);
        let lower = if (r - 1.0).abs() < 1e-9 {
            1e-9 * upper
        } else {
            (0.5 * amin.max(0.0) * (1.0 - sr).powi(2)).max(1e-9 * upper)
        };
        let (m1, sum_sq) = autocov_moments(spec);
        let m2 = m1 * m1 + r * sum_sq;
        let z_far = 8.0 * upper;
        let seed = Complex64::new(m1 / z_far + m2 / (z_far * z_far), 0.0);
        Ok(Self { spec: spec.clone(), r, route: resolved, tracker, upper, lower, far_seed: (z_far, seed) })
    }

    fn epsilon(&self) -> f64 {
        self.tracker.epsilon()
    }

    fn rho(&self, lambda: f64, m: Complex64) -> f64 {
        if lambda <= 0.0 {
            return 0.0;
        }
        density_from_green(self.tracker.green(lambda, m), self.epsilon())
    }

    /// Physical value at `target`, marched geometrically from the far seed.
    fn seed_at(&self, target: f64) -> Result<Complex64> {
        let (z_far, guess) = self.far_seed;
        let mut m = self.tracker.step(z_far, guess)?.m;
        if target >= z_far {
            return Ok(m);
        }
        let ratio = (target / z_far).powf(1.0 / MARCH_STEPS as f64);
        let mut lambda = z_far;
        for _ in 0..MARCH_STEPS {
            lambda *= ratio;
            m = self.tracker.step(lambda.max(target), m)?.m;
        }
        Ok(m)
    }

    /// Tracks along `grid` (ascending) from its top end downwards.
    fn trace(&self, grid: &[f64]) -> Result<(Vec<Complex64>, Vec<f64>, Vec<bool>)> {
        let n = grid.len();
        let mut ms = vec![Complex64::new(0.0, 0.0); n];
        let mut rho = vec![0.0; n];
        let mut flags = vec![false; n];
        let top = grid[n - 1];
        let mut m = self.seed_at(top)?;
        for k in (0..n).rev() {
            let lambda = grid[k];
            if lambda <= 0.0 {
                ms[k] = m;
                continue;
            }
            let t = self.tracker.step(lambda, m)?;
            m = t.m;
            ms[k] = m;
            flags[k] = t.flagged;
            rho[k] = self.rho(lambda, m);
        }
        Ok((ms, rho, flags))
    }

    /// Bisects between an outside point and an inside point.
    fn refine_edge(&self, mut outside: (f64, Complex64), mut inside: (f64, Complex64), threshold: f64) -> f64 {
        for _ in 0..80 {
            let width = (inside.0 - outside.0).abs();
            if width <= EDGE_TOLERANCE * inside.0.abs().max(1.0) {
                break;
            }
            let mid = 0.5 * (inside.0 + outside.0);
            let Ok(t) = self.tracker.step(mid, inside.1) else {
                break;
            };
            if self.rho(mid, t.m) > threshold {
                inside = (mid, t.m);
            } else {
                outside = (mid, t.m);
            }
        }
        0.5 * (inside.0 + outside.0)
    }

    fn threshold(&self, peak: f64) -> f64 {
        if self.epsilon() > 0.0 {
            1e-3 * peak
        } else {
            1e-7 * peak
        }
    }

    /// Maximal runs of above-threshold points, edges refined by bisection.
    fn intervals(&self, grid: &[f64], ms: &[Complex64], rho: &[f64]) -> Vec<(f64, f64)> {
        let peak = rho.iter().cloned().fold(0.0, f64::max);
        if peak <= 0.0 {
            return Vec::new();
        }
        let threshold = self.threshold(peak);
        let inside: Vec<bool> = rho.iter().map(|&p| p > threshold).collect();
        let mut out = Vec::new();
        let mut k = 0;
        while k < grid.len() {
            if !inside[k] {
                k += 1;
                continue;
            }
            let start = k;
            while k < grid.len() && inside[k] {
                k += 1;
            }
            let end = k - 1;
            let lo = if start == 0 {
                grid[0]
            } else {
                self.refine_edge((grid[start - 1], ms[start - 1]), (grid[start], ms[start]), threshold)
            };
            let hi = if end + 1 == grid.len() {
                grid[end]
            } else {
                self.refine_edge((grid[end + 1], ms[end + 1]), (grid[end], ms[end]), threshold)
            };
            out.push((lo, hi));
        }
        out
    }

    /// Geometric samples from each refined edge out to `EDGE_CELLS` grid
    /// points inside, capped at the middle of the interval.
    fn edge_samples(&self, grid: &[f64], ms: &[Complex64], intervals: &[(f64, f64)]) -> Vec<(f64, f64)> {
        let mut out = Vec::new();
        for &(lo, hi) in intervals {
            let first = grid.partition_point(|&l| l < lo);
            let last = grid.partition_point(|&l| l <= hi);
            if first >= last {
                continue;
            }
            let mid = (first + last) / 2;
            if first > 0 && grid[first] > lo {
                let k = (first + EDGE_CELLS).min(mid.max(first));
                self.sample_towards(lo, (grid[k], ms[k]), &mut out);
            }
            if last < grid.len() && grid[last - 1] < hi {
                let k = (last - 1).saturating_sub(EDGE_CELLS).max(mid.min(last - 1));
                self.sample_towards(hi, (grid[k], ms[k]), &mut out);
            }
        }
        out
    }

    fn sample_towards(&self, edge: f64, (from, mut m): (f64, Complex64), out: &mut Vec<(f64, f64)>) {
        for s in 1..=EDGE_SAMPLES + 1 {
            let lambda = if s > EDGE_SAMPLES { edge } else { edge + (from - edge) * EDGE_RATIO.powi(s as i32) };
            let Ok(t) = self.tracker.step(lambda, m) else {
                return;
            };
            m = t.m;
            out.push((lambda, self.rho(lambda, m)));
        }
    }

    fn detect_support(&self) -> Result<Vec<(f64, f64)>> {
        let grid = linspace(self.lower, self.upper, SCAN_POINTS);
        let (ms, rho, _) = self.trace(&grid)?;
        let intervals = self.intervals(&grid, &ms, &rho);
        if intervals.is_empty() {
            return Err(Error::Solver { lambda: self.upper, reason: "no support detected".into() });
        }
        Ok(intervals)
    }

    fn curve(&self, grid: &[f64]) -> Result<DensityCurve> {
        check_grid(grid)?;
        let (ms, mut rho, flags) = self.trace(grid)?;
        let intervals = self.intervals(grid, &ms, &rho);
        for (k, &lambda) in grid.iter().enumerate() {
            if !intervals.iter().any(|&(lo, hi)| lambda >= lo && lambda <= hi) {
                rho[k] = 0.0;
            }
        }
        let edge_samples = self.edge_samples(grid, &ms, &intervals);
        let atom = if self.r > 1.0 { 1.0 - 1.0 / self.r } else { 0.0 };
        let mut curve = DensityCurve {
            lambdas: grid.to_vec(),
            rho,
            m_values: ms,
            r: self.r,
            process: self.spec.clone(),
            route: self.route,
            epsilon: self.epsilon(),
            support_intervals: intervals,
            edge_samples,
            normalization: 0.0,
            atom,
            first_moment: 0.0,
            second_moment: 0.0,
            flagged: grid.iter().zip(&flags).filter(|(_, f)| **f).map(|(l, _)| *l).collect(),
        };
        curve.normalization = curve_moments(&curve, 0)? - atom;
        curve.first_moment = curve_moments(&curve, 1)?;
        curve.second_moment = curve_moments(&curve, 2)?;
        Ok(curve)
    }
}

fn poly_tracker(spec: &ProcessSpec, r: f64, epsilon: Option<f64>) -> Result<Box<dyn Tracker + Sync>> {
    let family = SpectralFamily::for_spec(spec)?;
    let epsilon = epsilon.unwrap_or(0.0);
    if !(epsilon >= 0.0 && epsilon.is_finite()) {
        return Err(Error::InvalidArgument(format!("epsilon = {epsilon} must be non-negative")));
    }
    let (_, amax) = spec.symbol().range();
    Ok(Box::new(PolyTracker::new(PolySpectralEquation::new(family, r)?, epsilon, amax)))
}

fn general_tracker(spec: &ProcessSpec, r: f64, epsilon: Option<f64>) -> Result<Box<dyn Tracker + Sync>> {
    let epsilon = epsilon.unwrap_or(DEFAULT_EPSILON);
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::InvalidArgument(format!("the general route needs a positive epsilon, got {epsilon}")));
    }
    Ok(Box::new(GeneralTracker { transform: MTransform::general_for(spec), r, epsilon }))
}

pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect()
}

/// `points` uniform points over the support widened by [`GRID_MARGIN`] of
/// its width on both sides, clipped at zero.
pub fn default_grid(intervals: &[(f64, f64)], points: usize) -> Result<Vec<f64>> {
    let (lo, hi) = match (intervals.first(), intervals.last()) {
        (Some(a), Some(b)) => (a.0, b.1),
        _ => return Err(Error::InvalidArgument("empty support".into())),
    };
    let width = hi - lo;
    Ok(linspace((lo - GRID_MARGIN * width).max(0.0), hi + GRID_MARGIN * width, points.max(2)))
}

/// Support intervals of the limiting density.
pub fn detect_support(spec: &ProcessSpec, r: f64, route: Route, epsilon: Option<f64>) -> Result<Vec<(f64, f64)>> {
    Context::new(spec, r, route, epsilon)?.detect_support()
}

/// Polynomial route on an explicit ascending grid. `epsilon = 0` reads the
/// density off the real axis.
pub fn solve_density_polynomial(spec: &ProcessSpec, r: f64, grid: &[f64], epsilon: f64) -> Result<DensityCurve> {
    Context::new(spec, r, Route::Polynomial, Some(epsilon))?.curve(grid)
}

/// General route on an explicit ascending grid.
pub fn solve_density_general(spec: &ProcessSpec, r: f64, grid: &[f64], epsilon: f64) -> Result<DensityCurve> {
    Context::new(spec, r, Route::General, Some(epsilon))?.curve(grid)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveOptions {
    pub points: usize,
    pub route: Route,
    /// `None` picks 0 for the polynomial route and [`DEFAULT_EPSILON`] otherwise.
    pub epsilon: Option<f64>,
}

impl Default for CurveOptions {
    fn default() -> Self {
        Self { points: DEFAULT_POINTS, route: Route::Auto, epsilon: None }
    }
}

/// Detects the support, lays out the default grid and solves on it.
pub fn density_curve(spec: &ProcessSpec, r: f64, options: &CurveOptions) -> Result<DensityCurve> {
    if options.points < 2 {
        return Err(Error::InvalidArgument("at least two grid points are needed".into()));
    }
    let ctx = Context::new(spec, r, options.route, options.epsilon)?;
    let support = ctx.detect_support()?;
    let grid = default_grid(&support, options.points)?;
    ctx.curve(&grid)
}

/// `|r M - M_A(z / (r (1 + M)))|` at every grid point of `curve`.
pub fn fundamental_residuals(curve: &DensityCurve) -> Result<Vec<f64>> {
    let transform = MTransform::closed_form_for(&curve.process);
    curve
        .lambdas
        .iter()
        .zip(&curve.m_values)
        .map(|(&lambda, &m)| {
            if lambda <= 0.0 {
                return Ok(0.0);
            }
            let z = Complex64::new(lambda, curve.epsilon);
            let w = z / (curve.r * (1.0 + m));
            Ok((curve.r * m - transform.eval(w)?).norm())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp_density(lambda: f64, r: f64) -> f64 {
        let lo = (1.0 - r.sqrt()).powi(2);
        let hi = (1.0 + r.sqrt()).powi(2);
        if lambda <= lo || lambda >= hi {
            return 0.0;
        }
        ((hi - lambda) * (lambda - lo)).sqrt() / (2.0 * PI * r * lambda)
    }

    #[test]
    fn white_noise_matches_marchenko_pastur() {
        let spec = ProcessSpec::white_noise();
        for r in [0.1, 0.5] {
            let curve = density_curve(&spec, r, &CurveOptions::default()).unwrap();
            let worst =
                curve.lambdas.iter().zip(&curve.rho).map(|(&l, &p)| (p - mp_density(l, r)).abs()).fold(0.0, f64::max);
            assert!(worst < 1e-6, "r = {r}: {worst}");
            let (lo, hi) = curve.support_span().unwrap();
            assert!((lo - (1.0 - r.sqrt()).powi(2)).abs() < 1e-6);
            assert!((hi - (1.0 + r.sqrt()).powi(2)).abs() < 1e-6);
        }
    }

    #[test]
    fn varma11_curve_is_normalized() {
        let spec = ProcessSpec::varma(&[1.0, 0.3], &[0.2]).unwrap();
        let curve = density_curve(&spec, 0.25, &CurveOptions::default()).unwrap();
        assert!((curve.normalization - 1.0).abs() < 2e-3, "{}", curve.normalization);
        let (m1, _) = theoretical_moments(&spec, 0.25);
        assert!((curve.first_moment - m1).abs() < 2e-3);
        assert!(curve.flagged.is_empty());
        assert_eq!(curve.support_intervals.len(), 1);
    }

    #[test]
    fn residuals_are_small_on_the_polynomial_route() {
        let spec = ProcessSpec::var(1.0, &[0.5]).unwrap();
        let curve = density_curve(&spec, 0.3, &CurveOptions { points: 200, ..Default::default() }).unwrap();
        let worst = fundamental_residuals(&curve).unwrap().into_iter().fold(0.0, f64::max);
        assert!(worst < 1e-9, "{worst}");
    }

    #[test]
    fn rectangular_ratio_above_one_has_an_atom() {
        let curve = density_curve(&ProcessSpec::white_noise(), 2.0, &CurveOptions::default()).unwrap();
        assert!((curve.atom - 0.5).abs() < 1e-15);
        assert!((curve.normalization - 0.5).abs() < 2e-3);
    }

    #[test]
    fn general_route_agrees_with_polynomial_route() {
        let spec = ProcessSpec::vma(&[1.0, 0.4]).unwrap();
        let support = detect_support(&spec, 0.2, Route::Polynomial, None).unwrap();
        let grid = default_grid(&support, 120).unwrap();
        let poly = solve_density_polynomial(&spec, 0.2, &grid, 1e-6).unwrap();
        let general = solve_density_general(&spec, 0.2, &grid, 1e-6).unwrap();
        let worst = poly.rho.iter().zip(&general.rho).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        assert!(worst < 1e-6, "{worst}");
    }

    #[test]
    fn rejects_bad_arguments() {
        let spec = ProcessSpec::white_noise();
        assert!(density_curve(&spec, -1.0, &CurveOptions::default()).is_err());
        assert!(solve_density_polynomial(&spec, 0.5, &[1.0, 0.5], 0.0).is_err());
        assert!(solve_density_general(&spec, 0.5, &[0.5, 1.0], 0.0).is_err());
        let var2 = ProcessSpec::var(1.0, &[0.3, 0.2]).unwrap();
        assert!(matches!(solve_density_polynomial(&var2, 0.5, &[0.5, 1.0], 0.0), Err(Error::DegenerateFamily(_))));
    }

    #[test]
    fn moment_order_is_bounded() {
        let curve = density_curve(&ProcessSpec::white_noise(), 0.5, &CurveOptions { points: 50, ..Default::default() })
            .unwrap();
        assert!(curve_moments(&curve, 5).is_err());
    }
}
