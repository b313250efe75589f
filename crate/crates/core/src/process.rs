//! Decoupled VMA / VAR / VARMA process specifications, their covariance
//! weights, Fourier symbols and auto-covariance functions.
//!
//! Every variable follows the same scalar recursion
//!
//! ```text
//! Y_a - sum_{b=1..q1} ar[b] Y_{a-b} = sum_{k=0..q2} ma[k] eps_{a-k}
//! ```
//!
//! with standard Gaussian innovations. The AR part is stored without its
//! implicit leading coefficient `b_0 = -1`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyroots::{self, Polynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProcessKind {
    Vma,
    Var,
    Varma,
}

impl std::str::FromStr for ProcessKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "vma" => Ok(ProcessKind::Vma),
            "var" => Ok(ProcessKind::Var),
            "varma" => Ok(ProcessKind::Varma),
            other => Err(Error::InvalidArgument(format!("unknown process kind '{other}'"))),
        }
    }
}

/// Coefficients of a decoupled linear process.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProcessSpec {
    kind: ProcessKind,
    ma: Vec<f64>,
    ar: Vec<f64>,
}

impl ProcessSpec {
    /// Validates the coefficient layout for `kind` and weak stationarity.
    pub fn new(kind: ProcessKind, ma: Vec<f64>, ar: Vec<f64>) -> Result<Self> {
        if ma.iter().chain(ar.iter()).any(|c| !c.is_finite()) {
            return Err(Error::InvalidArgument("coefficients must be finite".into()));
        }
        match kind {
            ProcessKind::Vma if ma.is_empty() || !ar.is_empty() => {
                return Err(Error::InvalidArgument(
                    "VMA needs moving-average coefficients and no autoregressive ones".into(),
                ))
            }
            ProcessKind::Var if ma.len() != 1 || ar.is_empty() => {
                return Err(Error::InvalidArgument(
                    "VAR needs exactly one noise amplitude a0 and at least one autoregressive coefficient".into(),
                ))
            }
            ProcessKind::Varma if ma.is_empty() || ar.is_empty() => {
                return Err(Error::InvalidArgument(
                    "VARMA needs both moving-average and autoregressive coefficients".into(),
                ))
            }
            _ => {}
        }
        if ma[0] == 0.0 {
            return Err(Error::InvalidArgument("a0 must be nonzero".into()));
        }
        let spec = Self { kind, ma, ar };
        for x in spec.ar_inverse_roots()? {
            if x.norm() >= 1.0 - 1e-12 {
                return Err(Error::NonStationary(format!(
                    "autoregressive characteristic root {} is not outside the unit circle",
                    x.inv()
                )));
            }
        }
        Ok(spec)
    }

    pub fn vma(ma: &[f64]) -> Result<Self> {
        Self::new(ProcessKind::Vma, ma.to_vec(), Vec::new())
    }

    pub fn var(a0: f64, ar: &[f64]) -> Result<Self> {
        Self::new(ProcessKind::Var, vec![a0], ar.to_vec())
    }

    pub fn varma(ma: &[f64], ar: &[f64]) -> Result<Self> {
        Self::new(ProcessKind::Varma, ma.to_vec(), ar.to_vec())
    }

    /// Unit-variance white noise; its auto-covariance matrix is the identity.
    pub fn white_noise() -> Self {
        Self { kind: ProcessKind::Vma, ma: vec![1.0], ar: Vec::new() }
    }

    pub fn kind(&self) -> ProcessKind {
        self.kind
    }

    pub fn ma_coeffs(&self) -> &[f64] {
        &self.ma
    }

    pub fn ar_coeffs(&self) -> &[f64] {
        &self.ar
    }

    /// Moving-average order `q2`.
    pub fn ma_order(&self) -> usize {
        self.ma.len() - 1
    }

    /// Autoregressive order `q1`.
    pub fn ar_order(&self) -> usize {
        self.ar.len()
    }

    /// `[b_0, b_1, ..]` with the convention `b_0 = -1`.
    pub fn ar_polynomial_coeffs(&self) -> Vec<f64> {
        std::iter::once(-1.0).chain(self.ar.iter().copied()).collect()
    }

    /// Covariance weights of the moving-average part (matrix A(1)).
    pub fn ma_kappas(&self) -> KappaVector {
        KappaVector::from_coeffs_unchecked(&self.ma, KappaLabel::K1)
    }

    /// Covariance weights of the autoregressive part taken as a VMA with
    /// `a_0 = 1`, `a_b = -b_b` (matrix A(4)).
    pub fn ar_kappas(&self) -> KappaVector {
        KappaVector::from_coeffs_unchecked(&self.ar_polynomial_coeffs(), KappaLabel::K4)
    }

    /// For a VAR process: weights of the VMA with `a_0 = 1/a0`,
    /// `a_b = -b_b/a0` whose auto-covariance matrix A(2) inverts the VAR one.
    pub fn dual_vma(&self) -> Option<ProcessSpec> {
        if self.kind != ProcessKind::Var {
            return None;
        }
        let a0 = self.ma[0];
        let mut ma = vec![1.0 / a0];
        ma.extend(self.ar.iter().map(|b| -b / a0));
        Some(Self { kind: ProcessKind::Vma, ma, ar: Vec::new() })
    }

    /// The Fourier symbol as a ratio of cosine series.
    pub fn symbol(&self) -> RationalSymbol {
        RationalSymbol::new(self.ma_kappas().values, self.ar_kappas().values)
    }

    pub fn fourier_symbol(&self, p: f64) -> Result<f64> {
        fourier_symbol(self, p)
    }

    /// Inverse roots `x~` of the autoregressive characteristic polynomial;
    /// stationarity means all of them lie inside the unit disk.
    pub fn ar_inverse_roots(&self) -> Result<Vec<Complex64>> {
        // x^q - b_1 x^{q-1} - ... - b_q
        let q = self.ar.len();
        if q == 0 {
            return Ok(Vec::new());
        }
        let mut coeffs = vec![0.0; q + 1];
        coeffs[q] = 1.0;
        for (beta, &b) in self.ar.iter().enumerate() {
            coeffs[q - 1 - beta] = -b;
        }
        polyroots::find_roots(&Polynomial::from_real(&coeffs))
    }

    /// Largest characteristic decay time of the autoregressive part (0 without one).
    pub fn max_characteristic_time(&self) -> f64 {
        self.ar_inverse_roots().unwrap_or_default().iter().map(|x| characteristic_time(*x)).fold(0.0, f64::max)
    }
}

pub fn characteristic_time(root: Complex64) -> f64 {
    let modulus = root.norm();
    if modulus == 0.0 {
        0.0
    } else {
        -1.0 / modulus.ln()
    }
}

/// Which auto-covariance matrix a weight vector parameterizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum KappaLabel {
    /// Generic VMA(q) matrix.
    K1,
    /// VMA dual of a VAR process, `a_0 = 1/a0`, `a_b = -b_b/a0`.
    K2,
    /// VMA built from the AR part with `a_0 = 1`, `a_b = -b_b`.
    K4,
}

/// Banded covariance weights `kappa_d = sum_k c_k c_{k+d}`, `d = 0..q`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KappaVector {
    pub values: Vec<f64>,
    pub label: KappaLabel,
}

impl KappaVector {
    fn from_coeffs_unchecked(coeffs: &[f64], label: KappaLabel) -> Self {
        let q = coeffs.len().saturating_sub(1);
        let values = (0..=q).map(|d| (0..=q - d).map(|k| coeffs[k] * coeffs[k + d]).sum()).collect();
        Self { values, label }
    }

    pub fn order(&self) -> usize {
        self.values.len() - 1
    }

    /// `kappa_0 + 2 sum_d kappa_d cos(d p)`.
    pub fn symbol_at(&self, p: f64) -> f64 {
        cosine_series(&self.values, p)
    }
}

/// Covariance weights of the coefficient list `coeffs`, labelled as A(1).
pub fn compute_kappas(coeffs: &[f64]) -> Result<KappaVector> {
    compute_kappas_labelled(coeffs, KappaLabel::K1)
}

pub fn compute_kappas_labelled(coeffs: &[f64], label: KappaLabel) -> Result<KappaVector> {
    if coeffs.is_empty() {
        return Err(Error::InvalidArgument("kappa computation needs at least one coefficient".into()));
    }
    let kappas = KappaVector::from_coeffs_unchecked(coeffs, label);
    if kappas.values[0] <= 0.0 {
        return Err(Error::InvalidArgument("all coefficients vanish".into()));
    }
    Ok(kappas)
}

fn cosine_series(kappas: &[f64], p: f64) -> f64 {
    kappas[0] + 2.0 * kappas.iter().enumerate().skip(1).map(|(d, k)| k * (d as f64 * p).cos()).sum::<f64>()
}

/// Rewrites `kappa_0 + 2 sum_d kappa_d cos(d p)` as a polynomial in
/// `y = 2 cos p` (ascending coefficients).
///
/// Uses `2 cos(d p) = C_d(y)` with `C_0 = 2`, `C_1 = y`,
/// `C_{d+1} = y C_d - C_{d-1}`; the recurrence has integer coefficients.
pub fn cosine_series_in_y(kappas: &[f64]) -> Vec<f64> {
    let q = kappas.len() - 1;
    let mut out = vec![0.0; q + 1];
    out[0] = kappas[0];
    let mut prev: Vec<i64> = vec![2];
    let mut curr: Vec<i64> = vec![0, 1];
    for (d, &kappa) in kappas.iter().enumerate().skip(1) {
        for (k, &c) in curr.iter().enumerate() {
            out[k] += kappa * c as f64;
        }
        if d < q {
            let mut next = vec![0i64; curr.len() + 1];
            for (k, &c) in curr.iter().enumerate() {
                next[k + 1] += c;
            }
            for (k, &c) in prev.iter().enumerate() {
                next[k] -= c;
            }
            prev = std::mem::replace(&mut curr, next);
        }
    }
    out
}

/// Fourier symbol `num(p) / den(p)` of a VARMA auto-covariance, with both
/// parts given as cosine-series weights.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RationalSymbol {
    pub numerator: Vec<f64>,
    pub denominator: Vec<f64>,
}

impl RationalSymbol {
    pub fn new(numerator: Vec<f64>, denominator: Vec<f64>) -> Self {
        Self { numerator, denominator }
    }

    /// Symbol of a banded (VMA) auto-covariance.
    pub fn banded(kappas: &[f64]) -> Self {
        Self::new(kappas.to_vec(), vec![1.0])
    }

    pub fn at(&self, p: f64) -> f64 {
        cosine_series(&self.numerator, p) / cosine_series(&self.denominator, p)
    }

    pub fn numerator_in_y(&self) -> Vec<f64> {
        cosine_series_in_y(&self.numerator)
    }

    pub fn denominator_in_y(&self) -> Vec<f64> {
        cosine_series_in_y(&self.denominator)
    }

    /// Minimum and maximum over a dense uniform sample of `[0, pi]`.
    pub fn range(&self) -> (f64, f64) {
        const SAMPLES: usize = 4096;
        (0..=SAMPLES)
            .map(|k| self.at(PI * k as f64 / SAMPLES as f64))
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
    }

    /// Trapezoid inverse Fourier transform `(1/2pi) int e^{-i d p} A(p) dp`.
    pub fn inverse_fourier(&self, lag: i64, points: usize) -> f64 {
        let h = 2.0 * PI / points as f64;
        (0..points)
            .map(|k| {
                let p = -PI + h * k as f64;
                self.at(p) * (lag as f64 * p).cos()
            })
            .sum::<f64>()
            / points as f64
    }
}

/// Fourier symbol of the process auto-covariance at momentum `p`.
pub fn fourier_symbol(spec: &ProcessSpec, p: f64) -> Result<f64> {
    if !p.is_finite() {
        return Err(Error::InvalidArgument("momentum must be finite".into()));
    }
    let value = spec.symbol().at(p);
    if value.is_nan() || value <= 0.0 {
        return Err(Error::NonStationary(format!("Fourier symbol {value} at p = {p} is not positive")));
    }
    Ok(value)
}

/// One exponential mode `weight * root^|d|` of a VAR auto-covariance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecayMode {
    pub weight: Complex64,
    pub root: Complex64,
}

impl DecayMode {
    pub fn characteristic_time(&self) -> f64 {
        characteristic_time(self.root)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum AutoCovRepr {
    Banded(KappaVector),
    DecaySum(Vec<DecayMode>),
    Varma11Closed { a0: f64, a1: f64, b1: f64 },
    NumericFourier { symbol: RationalSymbol, points: usize },
}

/// Translationally invariant auto-covariance `A(d)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AutoCovModel {
    pub repr: AutoCovRepr,
    /// Decay times of the autoregressive modes, empty for pure VMA.
    pub characteristic_times: Vec<f64>,
}

impl AutoCovModel {
    pub fn at(&self, lag: i64) -> f64 {
        let d = lag.unsigned_abs();
        match &self.repr {
            AutoCovRepr::Banded(k) => k.values.get(d as usize).copied().unwrap_or(0.0),
            AutoCovRepr::DecaySum(modes) => {
                modes.iter().map(|m| m.weight * m.root.powu(d as u32)).sum::<Complex64>().re
            }
            AutoCovRepr::Varma11Closed { a0, a1, b1 } => {
                let diagonal = if d == 0 { -a0 * a1 / b1 } else { 0.0 };
                diagonal + (a1 + a0 * b1) * (a0 + a1 * b1) / (b1 * (1.0 - b1 * b1)) * b1.powi(d as i32)
            }
            AutoCovRepr::NumericFourier { symbol, points } => symbol.inverse_fourier(d as i64, *points),
        }
    }

    /// Imaginary residue of the mode sum; zero for the other representations.
    pub fn imaginary_residual(&self, lag: i64) -> f64 {
        match &self.repr {
            AutoCovRepr::DecaySum(modes) => {
                modes.iter().map(|m| m.weight * m.root.powu(lag.unsigned_abs() as u32)).sum::<Complex64>().im
            }
            _ => 0.0,
        }
    }
}

/// Auto-covariance function of the process.
pub fn autocovariance(spec: &ProcessSpec) -> Result<AutoCovModel> {
    match spec.kind {
        ProcessKind::Vma => {
            Ok(AutoCovModel { repr: AutoCovRepr::Banded(spec.ma_kappas()), characteristic_times: Vec::new() })
        }
        ProcessKind::Var => {
            let a0 = spec.ma[0];
            let dual: Vec<f64> = spec.ar_kappas().values.iter().map(|k| k / (a0 * a0)).collect();
            let modes = decay_modes(&dual)?;
            let characteristic_times = modes.iter().map(DecayMode::characteristic_time).collect();
            Ok(AutoCovModel { repr: AutoCovRepr::DecaySum(modes), characteristic_times })
        }
        ProcessKind::Varma => {
            let characteristic_times =
                decay_modes(&spec.ar_kappas().values)?.iter().map(DecayMode::characteristic_time).collect::<Vec<_>>();
            let repr = if spec.ma.len() == 2 && spec.ar.len() == 1 && spec.ar[0] != 0.0 {
                AutoCovRepr::Varma11Closed { a0: spec.ma[0], a1: spec.ma[1], b1: spec.ar[0] }
            } else {
                let t_max = characteristic_times.iter().copied().fold(0.0, f64::max);
                let points = ((60.0 * t_max).ceil() as usize).max(8192).next_power_of_two();
                AutoCovRepr::NumericFourier { symbol: spec.symbol(), points }
            };
            Ok(AutoCovModel { repr, characteristic_times })
        }
    }
}

/// Residue evaluation of `(1/2pi) int e^{-i d p} / (kappa_0 + 2 sum kappa_l cos(l p)) dp`
/// as a sum of decaying modes.
///
/// The cosine series is a degree-`q` polynomial `psi prod (y - y_b)` in
/// `y = 2 cos p`; each `y_b` yields one `x_b` with `x_b + 1/x_b = y_b` and
/// `|x_b| < 1`, and only those poles lie inside the unit circle.
fn decay_modes(kappas: &[f64]) -> Result<Vec<DecayMode>> {
    let poly = Polynomial::from_real(&cosine_series_in_y(kappas));
    let q = poly.degree();
    if q == 0 {
        // Constant symbol: A(d) = delta_{d0} / kappa_0, a mode with root 0.
        return Ok(vec![DecayMode { weight: Complex64::new(1.0 / kappas[0], 0.0), root: Complex64::new(0.0, 0.0) }]);
    }
    let psi = poly.leading();
    let y_roots = polyroots::find_simple_roots(&poly)?;
    let mut x_roots = Vec::with_capacity(q);
    for y in y_roots {
        let pair =
            polyroots::find_roots(&Polynomial::new(vec![Complex64::new(1.0, 0.0), -y, Complex64::new(1.0, 0.0)]))?;
        let inside = polyroots::roots_inside_unit_disk(&pair)?;
        if inside.len() != 1 {
            return Err(Error::NonStationary(format!("symbol root {y} does not split across the unit circle")));
        }
        x_roots.push(inside[0]);
    }
    polyroots::ensure_simple(&x_roots)?;

    let modes = x_roots
        .iter()
        .enumerate()
        .map(|(g, &xg)| {
            let mut denom = psi;
            for (b, &xb) in x_roots.iter().enumerate() {
                if b != g {
                    denom *= xg - xb;
                }
                denom *= xg - xb.inv();
            }
            DecayMode { weight: xg.powu(q as u32 - 1) / denom, root: xg }
        })
        .collect();
    Ok(modes)
}
