//! Theory-versus-simulation comparison, file formats and plots.

pub mod cli;
mod svg;

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

pub use svg::{density_svg, histogram_svg, overlay_svg};

use crate::error::{Error, Result};
use crate::montecarlo::{replica_moment, Bins, Histogram};
use crate::solver::{curve_moments, DensityCurve, GRID_MARGIN};

pub const REPORT_SCHEMA: u32 = 1;
pub const DEFAULT_L1_MAX: f64 = 0.08;

/// Seventeen significant digits, enough to round-trip any `f64`.
pub fn format_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn parse_f64(s: &str) -> Result<f64> {
    s.trim().parse().map_err(|_| Error::InvalidArgument(format!("'{s}' is not a number")))
}

fn write_columns<W: Write>(writer: W, header: &[&str], rows: impl Iterator<Item = Vec<String>>) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush()?;
    Ok(())
}

fn read_columns<R: Read>(reader: R, header: &[&str]) -> Result<Vec<Vec<f64>>> {
    let mut r = csv::Reader::from_reader(reader);
    let found: Vec<String> = r.headers()?.iter().map(str::to_owned).collect();
    if found != header {
        return Err(Error::InvalidArgument(format!("expected header {header:?}, found {found:?}")));
    }
    let mut out = Vec::new();
    for record in r.records() {
        let record = record?;
        out.push(record.iter().map(parse_f64).collect::<Result<Vec<f64>>>()?);
    }
    Ok(out)
}

/// `lambda,density`
pub fn write_density_csv<W: Write>(writer: W, lambdas: &[f64], rho: &[f64]) -> Result<()> {
    write_columns(
        writer,
        &["lambda", "density"],
        lambdas.iter().zip(rho).map(|(l, p)| vec![format_f64(*l), format_f64(*p)]),
    )
}

pub fn read_density_csv<R: Read>(reader: R) -> Result<(Vec<f64>, Vec<f64>)> {
    let rows = read_columns(reader, &["lambda", "density"])?;
    Ok(rows.into_iter().map(|r| (r[0], r[1])).unzip())
}

/// `bin_lo,bin_hi,density`
pub fn write_histogram_csv<W: Write>(writer: W, hist: &Histogram) -> Result<()> {
    write_columns(
        writer,
        &["bin_lo", "bin_hi", "density"],
        hist.edges.windows(2).zip(&hist.density).map(|(e, d)| vec![format_f64(e[0]), format_f64(e[1]), format_f64(*d)]),
    )
}

/// Bin edges and densities of a histogram file.
pub fn read_histogram_csv<R: Read>(reader: R) -> Result<(Vec<f64>, Vec<f64>)> {
    let rows = read_columns(reader, &["bin_lo", "bin_hi", "density"])?;
    let mut edges: Vec<f64> = rows.iter().map(|r| r[0]).collect();
    if let Some(last) = rows.last() {
        edges.push(last[1]);
    }
    Ok((edges, rows.iter().map(|r| r[2]).collect()))
}

/// `lag,value`
pub fn write_autocov_csv<W: Write>(writer: W, values: &[f64]) -> Result<()> {
    write_columns(
        writer,
        &["lag", "value"],
        values.iter().enumerate().map(|(d, v)| vec![d.to_string(), format_f64(*v)]),
    )
}

pub fn read_autocov_csv<R: Read>(reader: R) -> Result<Vec<f64>> {
    Ok(read_columns(reader, &["lag", "value"])?.into_iter().map(|r| r[1]).collect())
}

/// Piecewise-linear density read from a `lambda,density` table.
#[derive(Debug, Clone, PartialEq)]
pub struct TheoryCurve {
    pub lambdas: Vec<f64>,
    pub rho: Vec<f64>,
    pub atom: f64,
    pub support: (f64, f64),
    pub flagged: Vec<f64>,
    pub moments: [f64; 2],
}

impl TheoryCurve {
    pub fn from_curve(curve: &DensityCurve) -> Result<Self> {
        let support = curve
            .support_span()
            .ok_or_else(|| Error::Solver { lambda: f64::NAN, reason: "curve has no support".into() })?;
        let (lambdas, rho) = curve.samples();
        Ok(Self {
            lambdas,
            rho,
            atom: curve.atom,
            support,
            flagged: curve.flagged.clone(),
            moments: [curve_moments(curve, 1)?, curve_moments(curve, 2)?],
        })
    }

    /// From tabulated values; the support is the span of positive density.
    pub fn from_table(lambdas: Vec<f64>, rho: Vec<f64>) -> Result<Self> {
        if lambdas.len() < 2 || lambdas.len() != rho.len() || lambdas.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidArgument("density table must be ascending with two rows or more".into()));
        }
        let positive: Vec<f64> = lambdas.iter().zip(&rho).filter(|(_, p)| **p > 0.0).map(|(l, _)| *l).collect();
        let (Some(&lo), Some(&hi)) = (positive.first(), positive.last()) else {
            return Err(Error::Domain("density table is identically zero".into()));
        };
        let trap = |k: u32| -> f64 {
            (1..lambdas.len())
                .map(|i| {
                    let f = |j: usize| lambdas[j].powi(k as i32) * rho[j];
                    0.5 * (f(i) + f(i - 1)) * (lambdas[i] - lambdas[i - 1])
                })
                .sum()
        };
        let moments = [trap(1), trap(2)];
        Ok(Self { lambdas, rho, atom: 0.0, support: (lo, hi), flagged: Vec::new(), moments })
    }

    /// CDF including the atom at zero, constant outside the grid.
    pub fn cdf(&self, x: f64) -> f64 {
        if x < 0.0 {
            return 0.0;
        }
        let n = self.lambdas.len();
        let mut acc = self.atom;
        if x <= self.lambdas[0] {
            return acc;
        }
        for i in 1..n {
            let (l0, l1) = (self.lambdas[i - 1], self.lambdas[i]);
            if x >= l1 {
                acc += 0.5 * (self.rho[i] + self.rho[i - 1]) * (l1 - l0);
            } else {
                let t = (x - l0) / (l1 - l0);
                let rx = self.rho[i - 1] + t * (self.rho[i] - self.rho[i - 1]);
                acc += 0.5 * (self.rho[i - 1] + rx) * (x - l0);
                return acc;
            }
        }
        acc
    }

    fn sorted_cdf(&self, sorted: &[f64]) -> Vec<f64> {
        // single sweep for ascending queries
        let mut out = Vec::with_capacity(sorted.len());
        let mut i = 1;
        let mut acc = self.atom;
        let n = self.lambdas.len();
        for &x in sorted {
            if x < 0.0 {
                out.push(0.0);
                continue;
            }
            if x <= self.lambdas[0] {
                out.push(self.atom);
                continue;
            }
            while i < n && self.lambdas[i] <= x {
                acc += 0.5 * (self.rho[i] + self.rho[i - 1]) * (self.lambdas[i] - self.lambdas[i - 1]);
                i += 1;
            }
            if i >= n {
                out.push(acc);
                continue;
            }
            let (l0, l1) = (self.lambdas[i - 1], self.lambdas[i]);
            let t = (x - l0) / (l1 - l0);
            let rx = self.rho[i - 1] + t * (self.rho[i] - self.rho[i - 1]);
            out.push(acc + 0.5 * (self.rho[i - 1] + rx) * (x - l0));
        }
        out
    }

    /// Comparison window: the support widened by its margin on both sides.
    pub fn window(&self) -> (f64, f64) {
        let (lo, hi) = self.support;
        let w = hi - lo;
        ((lo - GRID_MARGIN * w).max(0.0), hi + GRID_MARGIN * w)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentRow {
    pub k: u32,
    pub theory: f64,
    pub empirical: f64,
    pub standard_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct ConfigEcho {
    pub process: Option<serde_json::Value>,
    pub r: Option<f64>,
    pub n: Option<usize>,
    pub t: Option<usize>,
    pub replicas: Option<usize>,
    pub seed: Option<u64>,
    pub route: Option<String>,
    pub epsilon: Option<f64>,
    pub points: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub schema: u32,
    pub l1_distance: f64,
    pub ks_distance: f64,
    pub moment_table: Vec<MomentRow>,
    pub flagged_solver_points: Vec<f64>,
    pub window: (f64, f64),
    pub bins: usize,
    /// Share of eigenvalues outside the window.
    pub outside_fraction: f64,
    pub crop_support: bool,
    pub l1_max: f64,
    pub config: ConfigEcho,
}

impl ComparisonReport {
    pub fn passed(&self) -> bool {
        self.l1_distance < self.l1_max
    }

    /// `0` when the L1 distance is below the threshold, `1` otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let report: Self = serde_json::from_str(s)?;
        if report.schema != REPORT_SCHEMA {
            return Err(Error::InvalidArgument(format!("unsupported report schema {}", report.schema)));
        }
        Ok(report)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompareOptions {
    pub bins: Bins,
    pub crop_support: bool,
    pub l1_max: f64,
}

impl Default for CompareOptions {
    fn default() -> Self {
        Self { bins: Bins::Auto, crop_support: false, l1_max: DEFAULT_L1_MAX }
    }
}

/// The shared-binning histogram used by [`compare_spectra`].
pub fn comparison_histogram(theory: &TheoryCurve, pooled: &[f64], options: &CompareOptions) -> Result<Histogram> {
    let (lo, hi) = theory.window();
    let inside: Vec<f64>;
    let values = if options.crop_support {
        inside = pooled.iter().copied().filter(|v| *v >= lo && *v <= hi).collect();
        &inside[..]
    } else {
        pooled
    };
    if values.is_empty() {
        return Err(Error::Domain("no eigenvalue falls inside the theory window".into()));
    }
    Histogram::from_values(values, options.bins.resolve(values.len()), lo, hi)
}

/// L1 and KS distances between pooled eigenvalues and a theory density.
///
/// Both sides are binned on the theory support widened by its margin; the
/// empirical mass outside the window counts fully towards L1 unless
/// `crop_support` drops those eigenvalues first.
pub fn compare_spectra(
    theory: &TheoryCurve,
    spectra: &[Vec<f64>],
    options: &CompareOptions,
) -> Result<ComparisonReport> {
    let mut pooled: Vec<f64> = spectra.iter().flatten().copied().collect();
    if pooled.is_empty() {
        return Err(Error::InvalidArgument("no eigenvalues to compare".into()));
    }
    pooled.sort_by(f64::total_cmp);
    let (lo, hi) = theory.window();
    let outside = pooled.iter().filter(|v| **v < lo || **v > hi).count();
    if outside == pooled.len() {
        return Err(Error::Domain(format!(
            "simulated spectrum [{}, {}] does not overlap the theory window [{lo}, {hi}]",
            pooled[0],
            pooled[pooled.len() - 1]
        )));
    }
    let hist = comparison_histogram(theory, &pooled, options)?;
    let mut l1 = 0.0;
    for (edge, density) in hist.edges.windows(2).zip(&hist.density) {
        let width = edge[1] - edge[0];
        let theory_mass = theory.cdf(edge[1]) - theory.cdf(edge[0]);
        l1 += (density * width - theory_mass).abs();
    }
    let theory_outside = theory.cdf(lo) + (theory.cdf(f64::INFINITY) - theory.cdf(hi));
    let empirical_outside = if options.crop_support { 0.0 } else { outside as f64 / pooled.len() as f64 };
    l1 += theory_outside + empirical_outside;

    let used: Vec<f64> =
        if options.crop_support { pooled.iter().copied().filter(|v| *v >= lo && *v <= hi).collect() } else { pooled };
    let ks = ks_distance(theory, &used);

    let moment_table = (1..=2)
        .map(|k| {
            let (empirical, standard_error) = replica_moment(spectra, k as i32);
            MomentRow { k, theory: theory.moments[k as usize - 1], empirical, standard_error }
        })
        .collect();

    Ok(ComparisonReport {
        schema: REPORT_SCHEMA,
        l1_distance: l1,
        ks_distance: ks,
        moment_table,
        flagged_solver_points: theory.flagged.clone(),
        window: (lo, hi),
        bins: hist.density.len(),
        outside_fraction: outside as f64 / spectra.iter().map(Vec::len).sum::<usize>() as f64,
        crop_support: options.crop_support,
        l1_max: options.l1_max,
        config: ConfigEcho::default(),
    })
}

/// `sup |F_emp - F_theory|` over the sorted sample.
pub fn ks_distance(theory: &TheoryCurve, sorted: &[f64]) -> f64 {
    let n = sorted.len() as f64;
    theory
        .sorted_cdf(sorted)
        .iter()
        .enumerate()
        .map(|(i, f)| (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs()))
        .fold(0.0, f64::max)
}

/// `int |rho_a - rho_b|` on the union of both grids, linear interpolation.
pub fn curve_l1_distance(a: &DensityCurve, b: &DensityCurve) -> f64 {
    let mut grid: Vec<f64> = a.lambdas.iter().chain(&b.lambdas).copied().collect();
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    let diff: Vec<f64> = grid.iter().map(|&l| (a.interpolate(l) - b.interpolate(l)).abs()).collect();
    (1..grid.len()).map(|i| 0.5 * (diff[i] + diff[i - 1]) * (grid[i] - grid[i - 1])).sum::<f64>()
        + (a.atom - b.atom).abs()
}
