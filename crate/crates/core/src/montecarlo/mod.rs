//! Monte Carlo panels of decoupled processes and their Pearson spectra.

mod eigen;
mod rng;

use std::io::{Read, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use eigen::{eigen_decomposition, eigenvalues_symmetric, EigenDecomposition, SymMatrix};
pub use rng::{splitmix64, GaussianStream};

use crate::error::{Error, Result};
use crate::process::{ProcessKind, ProcessSpec};

/// Burn-in floor of the automatic rule.
pub const MIN_AUTO_BURN_IN: usize = 1000;
/// Characteristic times per automatic burn-in.
pub const BURN_IN_TIMES: f64 = 50.0;
/// Upper bound of the automatic bin count.
pub const MAX_AUTO_BINS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
pub enum BurnIn {
    #[default]
    Auto,
    Explicit(usize),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationConfig {
    n: usize,
    t: usize,
    replicas: usize,
    seed: u64,
    burn_in: BurnIn,
    process: ProcessSpec,
}

impl SimulationConfig {
    pub fn new(n: usize, t: usize, replicas: usize, seed: u64, burn_in: BurnIn, process: ProcessSpec) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!("N = {n} must exceed 1")));
        }
        if t < 1 {
            return Err(Error::InvalidArgument("T must be positive".into()));
        }
        if replicas < 1 {
            return Err(Error::InvalidArgument("at least one replica is needed".into()));
        }
        if let BurnIn::Explicit(b) = burn_in {
            let needed = process.ar_order() + process.ma_order();
            if b < needed {
                return Err(Error::InvalidArgument(format!("explicit burn-in {b} is shorter than q1 + q2 = {needed}")));
            }
        }
        Ok(Self { n, t, replicas, seed, burn_in, process })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn replicas(&self) -> usize {
        self.replicas
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn process(&self) -> &ProcessSpec {
        &self.process
    }

    pub fn r(&self) -> f64 {
        self.n as f64 / self.t as f64
    }

    pub fn burn_in(&self) -> BurnIn {
        self.burn_in
    }

    pub fn with_burn_in(mut self, burn_in: BurnIn) -> Result<Self> {
        self = Self::new(self.n, self.t, self.replicas, self.seed, burn_in, self.process)?;
        Ok(self)
    }

    pub fn with_replicas(self, replicas: usize) -> Result<Self> {
        Self::new(self.n, self.t, replicas, self.seed, self.burn_in, self.process)
    }

    /// Steps discarded before the kept window.
    ///
    /// A pure moving average is exact after its `q2` lags, which are drawn
    /// separately, so its automatic burn-in is zero.
    pub fn effective_burn_in(&self) -> usize {
        match self.burn_in {
            BurnIn::Explicit(b) => b,
            BurnIn::Auto => {
                if self.process.kind() == ProcessKind::Vma || self.process.ar_order() == 0 {
                    0
                } else {
                    let t_max = self.process.max_characteristic_time();
                    MIN_AUTO_BURN_IN.max((BURN_IN_TIMES * t_max).ceil() as usize)
                }
            }
        }
    }
}

/// `N x T` panel, row `i` holding the time series of variable `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct DataPanel {
    n: usize,
    t: usize,
    data: Vec<f64>,
}

impl DataPanel {
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let t = rows.first().map_or(0, Vec::len);
        if n == 0 || t == 0 || rows.iter().any(|r| r.len() != t) {
            return Err(Error::InvalidArgument("panel rows must be nonempty and of equal length".into()));
        }
        if rows.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument("panel entries must be finite".into()));
        }
        Ok(Self { n, t, data: rows.iter().flatten().copied().collect() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.t..(i + 1) * self.t]
    }

    pub fn get(&self, i: usize, a: usize) -> f64 {
        self.data[i * self.t + a]
    }
}

/// One series of length `len` from `Y_t = sum_k a_k e_{t-k} + sum_b b_b Y_{t-b}`,
/// started from zero `burn` steps before the kept window.
///
/// Innovations are drawn newest first, so the kept window does not depend on
/// the burn-in length.
pub fn simulate_series(spec: &ProcessSpec, len: usize, burn: usize, stream: &mut GaussianStream) -> Vec<f64> {
    let ma = spec.ma_coeffs();
    let ar = spec.ar_coeffs();
    let q2 = ma.len() - 1;
    let steps = burn + len;
    let total = steps + q2;
    let mut innovations = vec![0.0; total];
    for slot in innovations.iter_mut().rev() {
        *slot = stream.next_normal();
    }
    let mut y = vec![0.0; steps];
    for t in 0..steps {
        let mut v = 0.0;
        for (k, &a) in ma.iter().enumerate() {
            v += a * innovations[t + q2 - k];
        }
        for (b, &coef) in ar.iter().enumerate() {
            if t > b {
                v += coef * y[t - 1 - b];
            }
        }
        y[t] = v;
    }
    y.split_off(burn)
}

pub fn simulate_panel(config: &SimulationConfig, replica_index: usize) -> Result<DataPanel> {
    let burn = config.effective_burn_in();
    let mut data = Vec::with_capacity(config.n * config.t);
    for i in 0..config.n {
        let mut stream = GaussianStream::new(config.seed, replica_index as u64, i as u64);
        data.extend(simulate_series(&config.process, config.t, burn, &mut stream));
    }
    if data.iter().any(|x| !x.is_finite()) {
        return Err(Error::Numeric("simulated panel has non-finite entries".into()));
    }
    Ok(DataPanel { n: config.n, t: config.t, data })
}

/// `c = (1/T) Y Y^T`.
pub fn pearson_estimator(panel: &DataPanel) -> SymMatrix {
    gram_rows(panel.n, panel.t, &panel.data, 1.0 / panel.t as f64)
}

/// `a = (1/N) Y^T Y`.
pub fn dual_estimator(panel: &DataPanel) -> SymMatrix {
    let (n, t) = (panel.n, panel.t);
    let mut transposed = vec![0.0; n * t];
    for i in 0..n {
        for a in 0..t {
            transposed[a * n + i] = panel.data[i * t + a];
        }
    }
    gram_rows(t, n, &transposed, 1.0 / n as f64)
}

fn gram_rows(rows: usize, cols: usize, data: &[f64], scale: f64) -> SymMatrix {
    let mut out = vec![0.0; rows * rows];
    for i in 0..rows {
        let ri = &data[i * cols..(i + 1) * cols];
        for j in 0..=i {
            let rj = &data[j * cols..(j + 1) * cols];
            let s: f64 = ri.iter().zip(rj).map(|(x, y)| x * y).sum::<f64>() * scale;
            out[i * rows + j] = s;
            out[j * rows + i] = s;
        }
    }
    SymMatrix::from_raw(rows, out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DualityReport {
    pub skipped: bool,
    pub matched_pairs: usize,
    pub zero_modes: usize,
    pub expected_zero_modes: usize,
    pub max_relative_deviation: f64,
    pub passed: bool,
}

/// Relative tolerance for matched nonzero eigenvalues and zero modes.
pub const DUALITY_TOLERANCE: f64 = 1e-8;

/// Compares the spectra of `c` and of the dual `a`: the nonzero eigenvalues
/// agree after rescaling by `T / N`, and the larger matrix carries `|T - N|`
/// extra zero modes.
pub fn dual_estimator_spectrum_check(panel: &DataPanel) -> Result<DualityReport> {
    let (n, t) = (panel.n, panel.t);
    if n == t {
        return Ok(DualityReport {
            skipped: true,
            matched_pairs: 0,
            zero_modes: 0,
            expected_zero_modes: 0,
            max_relative_deviation: 0.0,
            passed: true,
        });
    }
    let c = eigenvalues_symmetric(&pearson_estimator(panel))?;
    let a = eigenvalues_symmetric(&dual_estimator(panel))?;
    let scale = t as f64 / n as f64;
    let c_scaled: Vec<f64> = c.iter().map(|x| x * scale).collect();
    let (small, large) = if n < t { (&c_scaled, &a) } else { (&a, &c_scaled) };
    let max = large.iter().chain(small.iter()).fold(0.0f64, |m, x| m.max(x.abs()));
    let extra = large.len() - small.len();
    let zero_modes = large.iter().filter(|x| x.abs() < DUALITY_TOLERANCE * max).count();
    let top = &large[extra..];
    let max_relative_deviation = small
        .iter()
        .zip(top)
        .map(|(x, y)| (x - y).abs() / x.abs().max(y.abs()).max(DUALITY_TOLERANCE * max))
        .fold(0.0, f64::max);
    let passed = zero_modes == extra && max_relative_deviation < DUALITY_TOLERANCE;
    Ok(DualityReport {
        skipped: false,
        matched_pairs: small.len(),
        zero_modes,
        expected_zero_modes: extra,
        max_relative_deviation,
        passed,
    })
}

/// Sorted spectrum of the Pearson estimator of one replica, tiny negatives
/// clamped to zero.
pub fn replica_spectrum(config: &SimulationConfig, replica_index: usize) -> Result<Vec<f64>> {
    let panel = simulate_panel(config, replica_index)?;
    let mut vals = eigenvalues_symmetric(&pearson_estimator(&panel))?;
    let max = vals.last().copied().unwrap_or(0.0).abs();
    for v in vals.iter_mut() {
        if *v < 0.0 {
            if *v < -1e-10 * max.max(1.0) {
                return Err(Error::Numeric(format!("estimator eigenvalue {v} is negative")));
            }
            *v = 0.0;
        }
    }
    Ok(vals)
}

fn thread_pool() -> Result<Option<rayon::ThreadPool>> {
    let Ok(raw) = std::env::var("FRV_THREADS") else {
        return Ok(None);
    };
    let threads: usize =
        raw.trim().parse().map_err(|_| Error::InvalidArgument(format!("FRV_THREADS = '{raw}' is not a count")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map(Some)
        .map_err(|e| Error::Numeric(format!("thread pool: {e}")))
}

/// Spectra of all replicas, in replica order.
pub fn simulate_spectra(config: &SimulationConfig) -> Result<Vec<Vec<f64>>> {
    let run = || -> Result<Vec<Vec<f64>>> {
        (0..config.replicas).into_par_iter().map(|k| replica_spectrum(config, k)).collect()
    };
    match thread_pool()? {
        Some(pool) => pool.install(run),
        None => run(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Bins {
    #[default]
    Auto,
    Fixed(usize),
}

impl Bins {
    pub fn resolve(self, count: usize) -> usize {
        match self {
            Bins::Fixed(b) => b.max(1),
            Bins::Auto => ((count as f64).sqrt().ceil() as usize).clamp(1, MAX_AUTO_BINS),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub density: Vec<f64>,
    /// Values that fell outside `edges`.
    pub outside: usize,
    pub count: usize,
}

impl Histogram {
    /// Uniform bins over `[lo, hi]`; densities are normalised by the total
    /// count, so values outside the range lower the area below one.
    pub fn from_values(values: &[f64], bins: usize, lo: f64, hi: f64) -> Result<Self> {
        if bins == 0 || !(hi > lo) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::InvalidArgument(format!("bad histogram layout: {bins} bins on [{lo}, {hi}]")));
        }
        let width = (hi - lo) / bins as f64;
        let mut counts = vec![0usize; bins];
        let mut outside = 0;
        for &v in values {
            if v < lo || v > hi || !v.is_finite() {
                outside += 1;
                continue;
            }
            let k = (((v - lo) / width) as usize).min(bins - 1);
            counts[k] += 1;
        }
        let edges = (0..=bins).map(|k| lo + width * k as f64).collect();
        let total = values.len().max(1) as f64;
        let density = counts.iter().map(|&c| c as f64 / (total * width)).collect();
        Ok(Self { edges, density, outside, count: values.len() })
    }

    /// Bins spanning the sample range exactly.
    pub fn auto(values: &[f64], bins: Bins) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidArgument("no values to bin".into()));
        }
        let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
        let mut hi = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if hi <= lo {
            hi = lo + lo.abs().max(1.0) * 1e-9;
        }
        Self::from_values(values, bins.resolve(values.len()), lo, hi)
    }

    pub fn area(&self) -> f64 {
        self.density.iter().zip(self.edges.windows(2)).map(|(d, w)| d * (w[1] - w[0])).sum()
    }

    pub fn centers(&self) -> Vec<f64> {
        self.edges.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect()
    }
}

#[derive(Debug, Clone)]
pub struct SpectrumSample {
    /// Sorted eigenvalues, one list per replica.
    pub eigenvalues: Vec<Vec<f64>>,
    pub histogram: Histogram,
}

impl SpectrumSample {
    pub fn pooled(&self) -> Vec<f64> {
        self.eigenvalues.iter().flatten().copied().collect()
    }

    /// Mean over replicas of the per-replica `k`-th spectral moment, with its
    /// standard error.
    pub fn moment(&self, k: i32) -> (f64, f64) {
        replica_moment(&self.eigenvalues, k)
    }
}

pub fn replica_moment(spectra: &[Vec<f64>], k: i32) -> (f64, f64) {
    let per: Vec<f64> =
        spectra.iter().map(|s| s.iter().map(|x| x.powi(k)).sum::<f64>() / s.len().max(1) as f64).collect();
    let n = per.len() as f64;
    let mean = per.iter().sum::<f64>() / n;
    if per.len() < 2 {
        return (mean, f64::NAN);
    }
    let var = per.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Simulates every replica and pools the eigenvalues into one histogram.
pub fn aggregate_spectrum(config: &SimulationConfig, bins: Bins) -> Result<SpectrumSample> {
    let eigenvalues = simulate_spectra(config)?;
    let pooled: Vec<f64> = eigenvalues.iter().flatten().copied().collect();
    let histogram = Histogram::auto(&pooled, bins)?;
    Ok(SpectrumSample { eigenvalues, histogram })
}

#[derive(Debug, Serialize, Deserialize)]
struct EigenRow {
    replica: usize,
    index: usize,
    eigenvalue: f64,
}

/// CSV with header `replica,index,eigenvalue`.
pub fn write_eigenvalues_csv<W: Write>(writer: W, spectra: &[Vec<f64>]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["replica", "index", "eigenvalue"])?;
    for (replica, spectrum) in spectra.iter().enumerate() {
        for (index, &v) in spectrum.iter().enumerate() {
            w.write_record([replica.to_string(), index.to_string(), crate::report::format_f64(v)])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn read_eigenvalues_csv<R: Read>(reader: R) -> Result<Vec<Vec<f64>>> {
    let mut r = csv::Reader::from_reader(reader);
    let mut out: Vec<Vec<f64>> = Vec::new();
    for row in r.deserialize() {
        let row: EigenRow = row?;
        if row.replica >= out.len() {
            out.resize(row.replica + 1, Vec::new());
        }
        if row.index != out[row.replica].len() {
            return Err(Error::InvalidArgument(format!(
                "eigenvalue rows out of order at replica {}, index {}",
                row.replica, row.index
            )));
        }
        out[row.replica].push(row.eigenvalue);
    }
    Ok(out)
}
