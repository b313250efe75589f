//! Polynomial root finding.
//!
//! All roots are found simultaneously with the Aberth–Ehrlich iteration,
//! started from a circle whose radius is the Cauchy bound, and polished
//! afterwards with a few Newton steps. The degrees met in this crate are
//! small (at most nine or so), where this is both robust and cheap.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Iteration cap of the simultaneous iteration.
pub const MAX_ITERATIONS: usize = 200;
/// Relative step size at which a root counts as converged.
pub const STEP_TOLERANCE: f64 = 1e-13;
/// Minimal separation below which two roots are reported as repeated.
pub const CLUSTER_TOLERANCE: f64 = 1e-8;
/// Relative derivative size below which a root counts as multiple.
pub const MULTIPLICITY_TOLERANCE: f64 = 1e-6;
/// Leading coefficients smaller than this (relative to the largest one) are dropped.
pub const LEADING_TOLERANCE: f64 = 1e-14;

/// Polynomial with complex coefficients stored in ascending degree.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    /// Builds a polynomial from ascending coefficients, trimming negligible
    /// leading terms.
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        let mut coeffs = coeffs;
        let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        while coeffs.len() > 1 {
            let lead = coeffs[coeffs.len() - 1].norm();
            if lead <= LEADING_TOLERANCE * scale {
                coeffs.pop();
            } else {
                break;
            }
        }
        if coeffs.is_empty() {
            coeffs.push(Complex64::new(0.0, 0.0));
        }
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// Expands `lead * prod (z - r_k)`.
    pub fn from_roots(lead: Complex64, roots: &[Complex64]) -> Self {
        let mut coeffs = vec![lead];
        for &root in roots {
            let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
            for (k, &c) in coeffs.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * root;
            }
            coeffs = next;
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs[self.coeffs.len() - 1]
    }

    pub fn max_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Value and first derivative in one Horner pass.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    pub fn derivative(&self) -> Polynomial {
        if self.degree() == 0 {
            return Polynomial::new(vec![Complex64::new(0.0, 0.0)]);
        }
        Polynomial { coeffs: self.coeffs.iter().enumerate().skip(1).map(|(k, &c)| c * k as f64).collect() }
    }

    /// Residual bound used to accept a root.
    fn residual_bound(&self, root: Complex64) -> f64 {
        1e-10 * self.max_coeff() * root.norm().max(1.0).powi(self.degree() as i32)
    }

    pub fn residual_ok(&self, root: Complex64) -> bool {
        self.eval(root).norm() <= self.residual_bound(root)
    }
}

/// Finds all `degree` roots of `p`.
pub fn find_roots(p: &Polynomial) -> Result<Vec<Complex64>> {
    let n = p.degree();
    if n == 0 {
        return Err(Error::InvalidArgument("root finding needs a polynomial of degree at least one".into()));
    }
    if p.coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(Error::Numeric("non-finite polynomial coefficient".into()));
    }
    let lead = p.leading();
    if n == 1 {
        return Ok(vec![-p.coeffs[0] / lead]);
    }

    let cauchy = 1.0 + p.coeffs[..n].iter().map(|c| (c / lead).norm()).fold(0.0, f64::max);
    let mut roots: Vec<Complex64> = (0..n)
        .map(|k| {
            let angle = std::f64::consts::TAU * k as f64 / n as f64 + 0.4;
            Complex64::from_polar(cauchy, angle)
        })
        .collect();

    let mut converged = false;
    for _ in 0..MAX_ITERATIONS {
        let mut all_small = true;
        for k in 0..n {
            let zk = roots[k];
            let (val, der) = p.eval_with_derivative(zk);
            if val.norm() == 0.0 {
                continue;
            }
            let repulsion: Complex64 =
                roots.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &zj)| (zk - zj).inv()).sum();
            let mut denom = der - val * repulsion;
            if denom.norm() == 0.0 {
                denom = Complex64::new(f64::EPSILON, 0.0);
            }
            let step = val / denom;
            roots[k] = zk - step;
            if step.norm() > STEP_TOLERANCE * roots[k].norm().max(1.0) {
                all_small = false;
            }
        }
        if all_small {
            converged = true;
            break;
        }
    }

    for root in roots.iter_mut() {
        polish(p, root);
    }

    let worst = roots.iter().map(|&r| p.eval(r).norm() / p.residual_bound(r)).fold(0.0, f64::max);
    if !worst.is_finite() || worst > 1.0 {
        return Err(Error::Numeric(format!(
            "root finder failed (degree {n}, converged: {converged}, \
             worst residual ratio {worst:e})"
        )));
    }
    Ok(roots)
}

/// Same as [`find_roots`], but rejects clustered roots.
///
/// Besides the separation test, a root where the derivative nearly vanishes
/// counts as repeated: a double root splits into a pair about
/// `sqrt(f64::EPSILON)` apart, which no separation threshold can tell from a
/// genuine close pair.
pub fn find_simple_roots(p: &Polynomial) -> Result<Vec<Complex64>> {
    let roots = find_roots(p)?;
    ensure_simple(&roots)?;
    let dp = p.derivative();
    for &root in &roots {
        let scale = p.max_coeff() * root.norm().max(1.0).powi(p.degree() as i32 - 1);
        let slope = dp.eval(root).norm() / scale;
        if slope < MULTIPLICITY_TOLERANCE {
            return Err(Error::DegenerateRoots { separation: slope, tolerance: MULTIPLICITY_TOLERANCE });
        }
    }
    Ok(roots)
}

pub fn ensure_simple(roots: &[Complex64]) -> Result<()> {
    for i in 0..roots.len() {
        for j in (i + 1)..roots.len() {
            let scale = roots[i].norm().max(roots[j].norm()).max(1.0);
            let separation = (roots[i] - roots[j]).norm() / scale;
            if separation < CLUSTER_TOLERANCE {
                return Err(Error::DegenerateRoots { separation, tolerance: CLUSTER_TOLERANCE });
            }
        }
    }
    Ok(())
}

fn polish(p: &Polynomial, root: &mut Complex64) {
    let mut best = p.eval(*root).norm();
    for _ in 0..4 {
        let (val, der) = p.eval_with_derivative(*root);
        if der.norm() == 0.0 || val.norm() == 0.0 {
            return;
        }
        let candidate = *root - val / der;
        let residual = p.eval(candidate).norm();
        if residual < best {
            best = residual;
            *root = candidate;
        } else {
            return;
        }
    }
}

/// Keeps the roots strictly inside the unit disk.
///
/// A root within `1e-12` of the unit circle marks a non-stationary process.
pub fn roots_inside_unit_disk(roots: &[Complex64]) -> Result<Vec<Complex64>> {
    const BOUNDARY: f64 = 1e-12;
    if let Some(r) = roots.iter().find(|r| (r.norm() - 1.0).abs() < BOUNDARY) {
        return Err(Error::NonStationary(format!("root {r} lies on the unit circle")));
    }
    Ok(roots.iter().copied().filter(|r| r.norm() < 1.0 - BOUNDARY).collect())
}
