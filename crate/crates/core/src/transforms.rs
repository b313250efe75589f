//! Green's function, M-transform and the M-transforms of Toeplitz
//! auto-covariance matrices.
//!
//! Conventions: `G(z) = <tr (z - H)^{-1}> / K` and `M(z) = z G(z) - 1`.
//! Square roots are always principal, and a product of square roots is
//! evaluated as a product of separate principal roots, which places the
//! branch cut exactly on the spectral support.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::polyroots::{self, Polynomial};
use crate::process::{ProcessKind, ProcessSpec, RationalSymbol};

/// Imaginary parts of `G` below this are treated as off-support noise.
pub const DENSITY_CLAMP: f64 = 1e-12;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn green_from_m(m: Complex64, z: Complex64) -> Result<Complex64> {
    if z.norm() == 0.0 {
        return Err(Error::Domain("the Green's function is undefined at z = 0".into()));
    }
    Ok((m + 1.0) / z)
}

/// Sokhotsky extraction `rho = -Im G / pi`, clamped to zero off the support.
///
/// `G` is the value at `lambda + i epsilon`; epsilon is only informative.
pub fn density_from_green(g: Complex64, _epsilon: f64) -> f64 {
    if g.im.abs() < DENSITY_CLAMP {
        0.0
    } else {
        (-g.im / PI).max(0.0)
    }
}

fn check_branch_point(z: Complex64, points: &[f64]) -> Result<()> {
    for &b in points {
        if z.im == 0.0 && z.re == b {
            return Err(Error::BranchPoint(b));
        }
    }
    Ok(())
}

/// M-transform of the VMA(1) auto-covariance matrix.
pub fn m_transform_vma1(z: Complex64, a0: f64, a1: f64) -> Result<Complex64> {
    let hi = (a0 + a1).powi(2);
    let lo = (a0 - a1).powi(2);
    check_branch_point(z, &[lo, hi])?;
    Ok(z / ((z - hi).sqrt() * (z - lo).sqrt()) - 1.0)
}

/// M-transform of the VAR(1) auto-covariance matrix.
pub fn m_transform_var1(z: Complex64, a0: f64, b1: f64) -> Result<Complex64> {
    if b1.abs() >= 1.0 {
        return Err(Error::NonStationary(format!("|b1| = {} is not below one", b1.abs())));
    }
    let s1 = (1.0 - b1).powi(2) / (a0 * a0);
    let s2 = (1.0 + b1).powi(2) / (a0 * a0);
    check_branch_point(z, &[1.0 / s1, 1.0 / s2])?;
    Ok(-((1.0 - s1 * z).sqrt() * (1.0 - s2 * z).sqrt()).inv())
}

/// M-transform of the VARMA(1,1) auto-covariance matrix.
///
/// Fails with [`Error::Pole`] exactly at `z = -a0 a1 / b1`, where the
/// prefactor diverges; [`MTransform`] evaluates the limit there instead.
pub fn m_transform_varma11(z: Complex64, a0: f64, a1: f64, b1: f64) -> Result<Complex64> {
    if b1.abs() >= 1.0 {
        return Err(Error::NonStationary(format!("|b1| = {} is not below one", b1.abs())));
    }
    let pole = a0 * a1 + b1 * z;
    if pole.norm() <= 1e-14 * (a0 * a1).abs().max((b1 * z).norm()) {
        return Err(Error::Pole(-a0 * a1 / b1));
    }
    let hi = (a0 + a1).powi(2) / (1.0 - b1).powi(2);
    let lo = (a0 - a1).powi(2) / (1.0 + b1).powi(2);
    check_branch_point(z, &[lo, hi])?;
    let k = a0 * a1 + (a0 * a0 + a1 * a1) * b1 + a0 * a1 * b1 * b1;
    let roots =
        ((1.0 - b1).powi(2) * z - (a0 + a1).powi(2)).sqrt() * ((1.0 + b1).powi(2) * z - (a0 - a1).powi(2)).sqrt();
    Ok((z * k / roots - a0 * a1) / pole)
}

/// Residue evaluation of the M-transform of a Toeplitz matrix whose symbol
/// is a ratio of cosine series.
///
/// With `y = 2 cos p` the symbol is `P(y)/Q(y)`, and
/// `G(z) = (1/pi) int_0^pi Q / (z Q - P) dp`. Writing `D = z Q - P`,
/// `Q/D = S(y) + sum_g Q(y_g) / (D'(y_g) (y - y_g))` over the simple roots
/// `y_g` of `D`, and `(1/pi) int_0^pi dp / (y - w) = -1/(sqrt(w-2) sqrt(w+2))`.
pub fn m_transform_general_q(symbol: &RationalSymbol, z: Complex64) -> Result<Complex64> {
    let g = green_general_q(symbol, z)?;
    Ok(z * g - 1.0)
}

fn green_general_q(symbol: &RationalSymbol, z: Complex64) -> Result<Complex64> {
    let num = symbol.numerator_in_y();
    let den = symbol.denominator_in_y();
    let len = num.len().max(den.len());
    let d_coeffs: Vec<Complex64> =
        (0..len).map(|k| z * den.get(k).copied().unwrap_or(0.0) - num.get(k).copied().unwrap_or(0.0)).collect();
    let d = Polynomial::new(d_coeffs);
    let q = Polynomial::from_real(&den);

    let (quotient, _) = divide(q.coeffs(), d.coeffs());
    let mut g: Complex64 = quotient.iter().enumerate().map(|(k, &s)| s * c(mean_power_of_y(k))).sum();
    if d.degree() == 0 {
        if d.coeffs()[0].norm() == 0.0 {
            return Err(Error::Domain("z lies on a flat part of the symbol".into()));
        }
        return Ok(g);
    }
    let roots = polyroots::find_simple_roots(&d)?;
    let dd = d.derivative();
    for y in roots {
        let sq = (y - 2.0).sqrt() * (y + 2.0).sqrt();
        g -= q.eval(y) / (dd.eval(y) * sq);
    }
    Ok(g)
}

/// `(1/pi) int_0^pi (2 cos p)^k dp`: central binomial coefficient for even `k`.
fn mean_power_of_y(k: usize) -> f64 {
    if k % 2 == 1 {
        return 0.0;
    }
    let half = k / 2;
    (0..half).fold(1.0, |acc, j| acc * (k - j) as f64 / (j + 1) as f64)
}

/// Polynomial long division of ascending coefficient lists.
fn divide(num: &[Complex64], den: &[Complex64]) -> (Vec<Complex64>, Vec<Complex64>) {
    let dn = den.len() - 1;
    if num.len() < den.len() {
        return (Vec::new(), num.to_vec());
    }
    let mut rem = num.to_vec();
    let mut quot = vec![c(0.0); num.len() - dn];
    let lead = den[dn];
    for k in (0..quot.len()).rev() {
        let coef = rem[k + dn] / lead;
        quot[k] = coef;
        for (j, &dj) in den.iter().enumerate() {
            rem[k + j] -= coef * dj;
        }
    }
    rem.truncate(dn);
    (quot, rem)
}

/// Trapezoid evaluation of `(1/2pi) int A(p) / (z - A(p)) dp` on `points` nodes.
pub fn m_transform_quadrature_oracle(spec: &ProcessSpec, z: Complex64, points: usize) -> Result<Complex64> {
    quadrature_for_symbol(&spec.symbol(), z, points)
}

pub fn quadrature_for_symbol(symbol: &RationalSymbol, z: Complex64, points: usize) -> Result<Complex64> {
    if points < 512 {
        return Err(Error::InvalidArgument("quadrature needs at least 512 points".into()));
    }
    if z.im == 0.0 {
        let (lo, hi) = symbol.range();
        if z.re >= lo && z.re <= hi {
            return Err(Error::Domain(format!("z = {} lies inside the symbol range [{lo}, {hi}]", z.re)));
        }
    }
    let h = 2.0 * PI / points as f64;
    let sum: Complex64 = (0..points)
        .map(|k| {
            let a = symbol.at(-PI + h * k as f64);
            c(a) / (z - a)
        })
        .sum();
    Ok(sum / points as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MTransformKind {
    Vma1Closed,
    Var1Closed,
    Varma11Closed,
    GeneralResidue,
    Identity,
    QuadratureOracle,
    InverseLaw,
}

#[derive(Debug, Clone, PartialEq)]
enum Evaluator {
    Identity { scale: f64 },
    Vma1 { a0: f64, a1: f64 },
    Var1 { a0: f64, b1: f64 },
    Varma11 { a0: f64, a1: f64, b1: f64 },
    Residue(RationalSymbol),
    Quadrature { symbol: RationalSymbol, points: usize },
    Inverse(Box<MTransform>),
}

/// An M-transform of a fixed matrix, evaluable anywhere off its support.
#[derive(Debug, Clone, PartialEq)]
pub struct MTransform {
    evaluator: Evaluator,
    branch_points: Vec<f64>,
}

impl MTransform {
    /// `scale * identity`, `M(z) = scale / (z - scale)`.
    pub fn identity(scale: f64) -> Self {
        Self { evaluator: Evaluator::Identity { scale }, branch_points: Vec::new() }
    }

    pub fn vma1(a0: f64, a1: f64) -> Self {
        let mut bp = vec![(a0 - a1).powi(2), (a0 + a1).powi(2)];
        bp.sort_by(f64::total_cmp);
        Self { evaluator: Evaluator::Vma1 { a0, a1 }, branch_points: bp }
    }

    pub fn var1(a0: f64, b1: f64) -> Self {
        let mut bp = vec![a0 * a0 / (1.0 + b1).powi(2), a0 * a0 / (1.0 - b1).powi(2)];
        bp.sort_by(f64::total_cmp);
        Self { evaluator: Evaluator::Var1 { a0, b1 }, branch_points: bp }
    }

    pub fn varma11(a0: f64, a1: f64, b1: f64) -> Self {
        let mut bp = vec![(a0 - a1).powi(2) / (1.0 + b1).powi(2), (a0 + a1).powi(2) / (1.0 - b1).powi(2)];
        bp.sort_by(f64::total_cmp);
        Self { evaluator: Evaluator::Varma11 { a0, a1, b1 }, branch_points: bp }
    }

    pub fn residue(symbol: RationalSymbol) -> Self {
        let (lo, hi) = symbol.range();
        Self { evaluator: Evaluator::Residue(symbol), branch_points: vec![lo, hi] }
    }

    pub fn quadrature(symbol: RationalSymbol, points: usize) -> Self {
        let (lo, hi) = symbol.range();
        Self { evaluator: Evaluator::Quadrature { symbol, points }, branch_points: vec![lo, hi] }
    }

    /// Residue-route transform of the process auto-covariance matrix.
    pub fn general_for(spec: &ProcessSpec) -> Self {
        Self::residue(spec.symbol())
    }

    /// Closed form where one exists (q = 1 families), residue route otherwise.
    pub fn closed_form_for(spec: &ProcessSpec) -> Self {
        let ma = spec.ma_coeffs();
        let ar = spec.ar_coeffs();
        match (spec.kind(), ma.len(), ar.len()) {
            (ProcessKind::Vma, 1, _) => Self::identity(ma[0] * ma[0]),
            (ProcessKind::Vma, 2, _) => Self::vma1(ma[0], ma[1]),
            (ProcessKind::Var, _, 1) => Self::var1(ma[0], ar[0]),
            (ProcessKind::Varma, 2, 1) if ar[0] != 0.0 && ma[1] != 0.0 => Self::varma11(ma[0], ma[1], ar[0]),
            _ => Self::general_for(spec),
        }
    }

    pub fn kind(&self) -> MTransformKind {
        match self.evaluator {
            Evaluator::Identity { .. } => MTransformKind::Identity,
            Evaluator::Vma1 { .. } => MTransformKind::Vma1Closed,
            Evaluator::Var1 { .. } => MTransformKind::Var1Closed,
            Evaluator::Varma11 { .. } => MTransformKind::Varma11Closed,
            Evaluator::Residue(_) => MTransformKind::GeneralResidue,
            Evaluator::Quadrature { .. } => MTransformKind::QuadratureOracle,
            Evaluator::Inverse(_) => MTransformKind::InverseLaw,
        }
    }

    pub fn branch_points(&self) -> &[f64] {
        &self.branch_points
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        match &self.evaluator {
            Evaluator::Identity { scale } => {
                if z.im == 0.0 && z.re == *scale {
                    return Err(Error::BranchPoint(*scale));
                }
                Ok(c(*scale) / (z - scale))
            }
            Evaluator::Vma1 { a0, a1 } => m_transform_vma1(z, *a0, *a1),
            Evaluator::Var1 { a0, b1 } => m_transform_var1(z, *a0, *b1),
            Evaluator::Varma11 { a0, a1, b1 } => varma11_with_limit(z, *a0, *a1, *b1),
            Evaluator::Residue(symbol) => m_transform_general_q(symbol, z),
            Evaluator::Quadrature { symbol, points } => quadrature_for_symbol(symbol, z, *points),
            Evaluator::Inverse(inner) => {
                if z.norm() == 0.0 {
                    return Err(Error::Domain("inverse law is undefined at z = 0".into()));
                }
                Ok(-inner.eval(z.inv())? - 1.0)
            }
        }
    }

    pub fn green(&self, z: Complex64) -> Result<Complex64> {
        green_from_m(self.eval(z)?, z)
    }
}

/// Near the prefactor pole the value is the average over a symmetric pair of
/// nearby points; the singularity is removable off the support.
fn varma11_with_limit(z: Complex64, a0: f64, a1: f64, b1: f64) -> Result<Complex64> {
    let pole = -a0 * a1 / b1;
    let offset = 1e-5 * pole.abs().max(1.0);
    if (z - pole).norm() < offset {
        let delta = c(offset);
        let plus = m_transform_varma11(z + delta, a0, a1, b1)?;
        let minus = m_transform_varma11(z - delta, a0, a1, b1)?;
        let w = (z - pole) / delta;
        // linear interpolation between the two neighbours
        return Ok(0.5 * (plus + minus) + 0.5 * w * (plus - minus));
    }
    m_transform_varma11(z, a0, a1, b1)
}

/// M-transform of the inverse matrix: `M_{H^-1}(z) = -M_H(1/z) - 1`.
pub fn m_transform_inverse_law(handle: MTransform) -> MTransform {
    let branch_points = handle.branch_points.iter().filter(|b| **b != 0.0).map(|b| 1.0 / b).collect();
    MTransform { evaluator: Evaluator::Inverse(Box::new(handle)), branch_points }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn green_examples() {
        assert_eq!(green_from_m(z(0.0, 0.0), z(2.0, 0.0)).unwrap(), z(0.5, 0.0));
        assert!((green_from_m(z(0.5, 0.0), z(3.0, 0.0)).unwrap() - z(0.5, 0.0)).norm() < 1e-15);
        assert_eq!(green_from_m(z(0.25, 0.0), z(2.5, 0.0)).unwrap(), z(0.5, 0.0));
        assert!(green_from_m(z(1.0, 0.0), z(0.0, 0.0)).is_err());
    }

    #[test]
    fn density_examples() {
        assert_eq!(density_from_green(z(0.5, 0.0), 0.0), 0.0);
        assert!((density_from_green(z(0.3, -PI), 0.0) - 1.0).abs() < 1e-15);
        assert_eq!(density_from_green(z(0.3, -1e-13), 0.0), 0.0);
    }

    #[test]
    fn marchenko_pastur_density_at_one() {
        // r = 1: G(z) = (z - sqrt(z) sqrt(z - 4)) / (2 z); rho(1) = sqrt(3) / (2 pi)
        let lam = z(1.0, 1e-14);
        let g = (lam - lam.sqrt() * (lam - 4.0).sqrt()) / (2.0 * lam);
        let rho = density_from_green(g, 1e-14);
        assert!((rho - 3f64.sqrt() / (2.0 * PI)).abs() < 1e-12, "{rho}");
    }

    #[test]
    fn vma1_reduces_to_scaled_identity() {
        for w in [z(3.0, 0.0), z(-1.0, 2.0), z(0.5, -0.1)] {
            let m = m_transform_vma1(w, 1.5, 0.0).unwrap();
            assert!((m - 2.25 / (w - 2.25)).norm() < 1e-13);
        }
    }

    #[test]
    fn vma1_value() {
        let m = m_transform_vma1(z(4.0, 0.0), 1.0, 0.3).unwrap();
        let expected = 4.0 / (2.31f64.sqrt() * 3.51f64.sqrt()) - 1.0;
        assert!((m.re - expected).abs() < 1e-14 && m.im == 0.0);
        assert!((m.re - 0.4047545).abs() < 1e-6);
        assert!(matches!(m_transform_vma1(z(1.3f64.powi(2), 0.0), 1.0, 0.3), Err(Error::BranchPoint(_))));
    }

    #[test]
    fn var1_values() {
        let m = m_transform_var1(z(-1.0, 0.0), 1.0, 0.5).unwrap();
        assert!((m.re + 1.0 / (1.25f64.sqrt() * 3.25f64.sqrt())).abs() < 1e-14);
        assert!((m.re + 0.496139).abs() < 1e-6);
        let white = m_transform_var1(z(3.0, 0.0), 1.0, 0.0).unwrap();
        assert!((white - z(0.5, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn conjugate_symmetry() {
        let handles = [
            MTransform::vma1(1.0, 0.3),
            MTransform::var1(1.0, 0.5),
            MTransform::varma11(1.0, 0.3, 0.2),
            MTransform::residue(ProcessSpec::vma(&[1.0, 0.5, 0.2]).unwrap().symbol()),
        ];
        for h in &handles {
            let up = h.eval(z(2.0, 1.0)).unwrap();
            let down = h.eval(z(2.0, -1.0)).unwrap();
            assert!((up - down.conj()).norm() < 1e-13);
        }
    }

    #[test]
    fn varma11_pole_is_removable() {
        // At z = -a0 a1 / b1 the cosine terms of A(p) - z cancel, so the pole
        // never meets the support.
        for b1 in [0.2, -0.2, -0.5] {
            let (a0, a1) = (1.0, 0.3);
            let pole = -a0 * a1 / b1;
            assert!(matches!(m_transform_varma11(z(pole, 0.0), a0, a1, b1), Err(Error::Pole(_))));
            let at = MTransform::varma11(a0, a1, b1).eval(z(pole, 0.0)).unwrap();
            let oracle =
                m_transform_quadrature_oracle(&ProcessSpec::varma(&[a0, a1], &[b1]).unwrap(), z(pole, 0.0), 8192)
                    .unwrap();
            assert!((at - oracle).norm() < 1e-8 * oracle.norm().max(1.0), "{at} vs {oracle}");
        }
    }

    #[test]
    fn general_q_white_noise() {
        let m = m_transform_general_q(&RationalSymbol::banded(&[1.0]), z(5.0, 0.0)).unwrap();
        assert!((m - z(0.25, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn general_q_matches_closed_form_q1() {
        let symbol = ProcessSpec::vma(&[1.0, 0.3]).unwrap().symbol();
        let m = m_transform_general_q(&symbol, z(4.0, 0.0)).unwrap();
        let closed = m_transform_vma1(z(4.0, 0.0), 1.0, 0.3).unwrap();
        assert!((m - closed).norm() < 1e-10 * closed.norm());
    }

    #[test]
    fn mean_powers() {
        assert_eq!(mean_power_of_y(0), 1.0);
        assert_eq!(mean_power_of_y(2), 2.0);
        assert_eq!(mean_power_of_y(4), 6.0);
        assert_eq!(mean_power_of_y(3), 0.0);
    }

    #[test]
    fn quadrature_rejects_inside_range() {
        let spec = ProcessSpec::vma(&[1.0, 0.3]).unwrap();
        assert!(m_transform_quadrature_oracle(&spec, z(1.0, 0.0), 8192).is_err());
        assert!(m_transform_quadrature_oracle(&spec, z(4.0, 0.0), 100).is_err());
        let white = ProcessSpec::white_noise();
        let m = m_transform_quadrature_oracle(&white, z(3.0, 0.0), 512).unwrap();
        assert!((m - z(0.5, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn identity_is_self_inverse() {
        let inv = m_transform_inverse_law(MTransform::identity(1.0));
        for w in [z(3.0, 0.5), z(-2.0, 1.0), z(0.2, -0.7)] {
            let expected = (w - 1.0).inv();
            assert!((inv.eval(w).unwrap() - expected).norm() < 1e-13);
        }
    }
}
