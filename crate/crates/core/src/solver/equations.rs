//! Polynomial equations in `M = M_c(z)` for the order-one families.
//!
//! Each builder returns the coefficients exactly as obtained by clearing the
//! square roots in `r M = M_A(z / (r (1 + M)))`; the VARMA(1,1) sextic keeps
//! the spurious linear factor `a0 a1 r (1 + M) + b1 z` that the squaring
//! introduces (its root is real for real `z` and never carries density).

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polyroots::Polynomial;
use crate::process::{ProcessKind, ProcessSpec};
use crate::transforms::MTransform;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum SpectralFamily {
    Vma1 { a0: f64, a1: f64 },
    Var1 { a0: f64, b1: f64 },
    Varma11 { a0: f64, a1: f64, b1: f64 },
}

impl SpectralFamily {
    /// Closed-form `M_A` of the family.
    pub fn transform(&self) -> MTransform {
        match *self {
            Self::Vma1 { a0, a1 } => MTransform::vma1(a0, a1),
            Self::Var1 { a0, b1 } => MTransform::var1(a0, b1),
            Self::Varma11 { a0, a1, b1 } => MTransform::varma11(a0, a1, b1),
        }
    }

    /// The polynomial family of `spec`, if its orders admit one.
    pub fn for_spec(spec: &ProcessSpec) -> Result<Self> {
        let ma = spec.ma_coeffs();
        let ar = spec.ar_coeffs();
        match (spec.kind(), ma.len(), ar.len()) {
            (ProcessKind::Vma, 1, 0) => Ok(Self::Vma1 { a0: ma[0], a1: 0.0 }),
            (ProcessKind::Vma, 2, 0) => Ok(Self::Vma1 { a0: ma[0], a1: ma[1] }),
            (ProcessKind::Var, 1, 1) => Ok(Self::Var1 { a0: ma[0], b1: ar[0] }),
            (ProcessKind::Varma, 2, 1) => {
                if ma[1] == 0.0 {
                    Ok(Self::Var1 { a0: ma[0], b1: ar[0] })
                } else if ar[0] == 0.0 {
                    Ok(Self::Vma1 { a0: ma[0], a1: ma[1] })
                } else {
                    Ok(Self::Varma11 { a0: ma[0], a1: ma[1], b1: ar[0] })
                }
            }
            (ProcessKind::Varma, 1, 1) => Ok(Self::Var1 { a0: ma[0], b1: ar[0] }),
            _ => Err(Error::DegenerateFamily(format!(
                "no polynomial equation for orders (q1 = {}, q2 = {})",
                spec.ar_order(),
                spec.ma_order()
            ))),
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            Self::Vma1 { .. } | Self::Var1 { .. } => 4,
            Self::Varma11 { .. } => 6,
        }
    }

    pub fn equation(&self, z: Complex64, r: f64) -> Result<Polynomial> {
        match *self {
            Self::Vma1 { a0, a1 } => Ok(build_vma1_equation(z, r, a0, a1)),
            Self::Var1 { a0, b1 } => Ok(build_var1_equation(z, r, a0, b1)),
            Self::Varma11 { a0, a1, b1 } => build_varma11_equation(z, r, a0, a1, b1),
        }
    }
}

/// A family together with its rectangularity ratio.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PolySpectralEquation {
    pub family: SpectralFamily,
    pub r: f64,
}

impl PolySpectralEquation {
    pub fn new(family: SpectralFamily, r: f64) -> Result<Self> {
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::InvalidArgument(format!("r = {r} must be positive")));
        }
        Ok(Self { family, r })
    }

    pub fn at(&self, z: Complex64) -> Result<Polynomial> {
        self.family.equation(z, self.r)
    }
}

/// Quartic for VMA(1).
pub fn build_vma1_equation(z: Complex64, r: f64, a0: f64, a1: f64) -> Polynomial {
    let s = a0 * a0 + a1 * a1;
    let d = (a0 * a0 - a1 * a1).powi(2);
    let z2 = z * z;
    let c4 = Complex64::new(r.powi(4) * d, 0.0);
    let c3 = 2.0 * r.powi(3) * (-s * z + d * (r + 1.0));
    let c2 = r * r * (z2 - 2.0 * s * (r + 2.0) * z + d * (r * r + 4.0 * r + 1.0));
    let c1 = 2.0 * r * (z2 - s * (2.0 * r + 1.0) * z + d * r * (r + 1.0));
    let c0 = r * (-2.0 * s * z + d * r);
    Polynomial::new(vec![c0, c1, c2, c3, c4])
}

/// Quartic for VAR(1).
pub fn build_var1_equation(z: Complex64, r: f64, a0: f64, b1: f64) -> Polynomial {
    let a2 = a0 * a0;
    let a4 = a2 * a2;
    let bb = 1.0 + b1 * b1;
    let c4 = Complex64::new(a4 * r * r, 0.0);
    let c3 = 2.0 * a2 * r * (-bb * z + a2 * r);
    let c2 = (1.0 - b1 * b1).powi(2) * z * z - 2.0 * a2 * r * bb * z + (r * r - 1.0) * a4;
    let c1 = Complex64::new(-2.0 * a4, 0.0);
    let c0 = Complex64::new(-a4, 0.0);
    Polynomial::new(vec![c0, c1, c2, c3, c4])
}

/// Sextic for VARMA(1,1).
///
/// Requires `a1 != 0` and `b1 != 0`; otherwise the leading coefficient
/// vanishes and the VAR(1) or VMA(1) quartic applies.
pub fn build_varma11_equation(z: Complex64, r: f64, a0: f64, a1: f64, b1: f64) -> Result<Polynomial> {
    if a1 == 0.0 || b1 == 0.0 {
        return Err(Error::DegenerateFamily(
            "VARMA(1,1) with a1 = 0 or b1 = 0: use the VAR(1) or VMA(1) quartic".into(),
        ));
    }
    if a0 == 0.0 {
        return Err(Error::InvalidArgument("a0 must be nonzero".into()));
    }
    let (a02, a12) = (a0 * a0, a1 * a1);
    let s = a02 + a12; // a0^2 + a1^2
    let p = a0 * a1;
    let p2 = p * p;
    let d = (a02 - a12).powi(2);
    let q4 = a02 * a02 + a12 * a12; // a0^4 + a1^4
    let bb = b1 * b1 + 1.0;
    let b4 = b1.powi(4) + 1.0;
    let b2 = b1 * b1;
    let omb = (1.0 - b2).powi(2);
    let z2 = z * z;
    let z3 = z2 * z;
    let z4 = z3 * z;
    let (r2, r3, r4) = (r * r, r.powi(3), r.powi(4));

    let c6 = Complex64::new(r4 * p2 * d, 0.0);

    let c5 = 2.0 * r3 * p * (((a02 * a02 - 6.0 * p2 + a12 * a12) * b1 - p * s * bb) * z + (1.0 + 2.0 * r) * p * d);

    let c4 = r2
        * (((a02 * a02 - 20.0 * p2 + a12 * a12) * b2 - 4.0 * p * s * b1 * bb + p2 * b4) * z2
            + 2.0 * p * (((1.0 + 3.0 * r) * q4 - 2.0 * (5.0 + 9.0 * r) * p2) * b1 - (2.0 + 3.0 * r) * p * s * bb) * z
            + (1.0 + 8.0 * r + 6.0 * r2) * p2 * d);

    let c3 = 2.0
        * r
        * (b1 * (-6.0 * p * b2 - s * b1 * bb + p * b4) * z3
            + ((-10.0 * (1.0 + 2.0 * r) * p2 + r * q4) * b2 - 2.0 * (1.0 + 2.0 * r) * p * s * b1 * bb
                + (1.0 + r) * p2 * b4)
                * z2
            + p * ((3.0 * r * (1.0 + r) * q4 - 2.0 * (2.0 + 15.0 * r + 9.0 * r2) * p2) * b1
                - (1.0 + 6.0 * r + 3.0 * r2) * p * s * bb)
                * z
            + 2.0 * r * (1.0 + 3.0 * r + r2) * p2 * d);

    let c2 = b2 * omb * z4
        + 2.0 * b1 * (-2.0 * (1.0 + 3.0 * r) * p * b2 - r * s * b1 * bb + (1.0 + r) * p * b4) * z3
        + (-((1.0 - r2) * q4 + 2.0 * (3.0 + 20.0 * r + 10.0 * r2) * p2) * b2
            - 2.0 * (1.0 + 4.0 * r + 2.0 * r2) * p * s * b1 * bb
            + r * (4.0 + r) * p2 * b4)
            * z2
        + 2.0
            * r
            * p
            * ((r * (3.0 + r) * q4 - 6.0 * (2.0 + 5.0 * r + r2) * p2) * b1 - (3.0 + 6.0 * r + r2) * p * s * bb)
            * z
        + r2 * (6.0 + 8.0 * r + r2) * p2 * d;

    let c1 = 2.0
        * (p * b1 * omb * z3
            + (-(q4 + 2.0 * (3.0 + 5.0 * r) * p2) * b2 - 2.0 * (1.0 + r) * p * s * b1 * bb + r * p2 * b4) * z2
            + r * p * ((r * q4 - 2.0 * (6.0 + 5.0 * r) * p2) * b1 - (3.0 + 2.0 * r) * p * s * bb) * z
            + r2 * (2.0 + r) * p2 * d);

    let c0 = -b1 * ((a02 * a02 + 6.0 * p2 + a12 * a12) * b1 + 2.0 * p * s * bb) * z2
        - 2.0 * r * p2 * (4.0 * p * b1 + s * bb) * z
        + r2 * p2 * d;

    Ok(Polynomial::new(vec![c0, c1, c2, c3, c4, c5, c6]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyroots::find_roots;
    use crate::transforms::{m_transform_var1, m_transform_vma1, MTransform};

    fn z(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// `|r M - M_A(z / (r (1 + M)))|`; the physical root zeroes it.
    fn squared_fundamental_residual(m_a: impl Fn(Complex64) -> Complex64, zz: Complex64, r: f64, m: Complex64) -> f64 {
        let w = zz / (r * (1.0 + m));
        (r * m - m_a(w)).norm()
    }

    #[test]
    fn vma1_roots_solve_the_fundamental_equation() {
        let (a0, a1, r) = (1.0, 0.3, 0.25);
        let zz = z(1.5, 0.001);
        let poly = build_vma1_equation(zz, r, a0, a1);
        let roots = find_roots(&poly).unwrap();
        for m in &roots {
            assert!(poly.eval(*m).norm() < 1e-9 * poly.max_coeff());
        }
        // At least one root satisfies the unsquared equation with principal roots.
        let best = roots
            .iter()
            .map(|&m| squared_fundamental_residual(|w| m_transform_vma1(w, a0, a1).unwrap(), zz, r, m))
            .fold(f64::MAX, f64::min);
        assert!(best < 1e-9, "{best}");
    }

    #[test]
    fn var1_roots_solve_the_fundamental_equation() {
        let (a0, b1, r) = (1.0, 0.5, 0.25);
        let zz = z(2.0, 0.3);
        let roots = find_roots(&build_var1_equation(zz, r, a0, b1)).unwrap();
        let best = roots
            .iter()
            .map(|&m| squared_fundamental_residual(|w| m_transform_var1(w, a0, b1).unwrap(), zz, r, m))
            .fold(f64::MAX, f64::min);
        assert!(best < 1e-9, "{best}");
    }

    #[test]
    fn varma11_roots_solve_the_fundamental_equation() {
        let (a0, a1, b1, r) = (1.0, 0.3, 0.2, 0.25);
        let zz = z(1.1, 0.2);
        let poly = build_varma11_equation(zz, r, a0, a1, b1).unwrap();
        assert_eq!(poly.degree(), 6);
        let roots = find_roots(&poly).unwrap();
        let best = roots
            .iter()
            .map(|&m| squared_fundamental_residual(|w| MTransform::varma11(a0, a1, b1).eval(w).unwrap(), zz, r, m))
            .fold(f64::MAX, f64::min);
        assert!(best < 1e-9, "{best}");
    }

    #[test]
    fn varma11_contains_the_spurious_linear_root() {
        let (a0, a1, b1, r) = (1.0, 0.3, 0.2, 0.25);
        let zz = z(1.3, 0.0);
        let poly = build_varma11_equation(zz, r, a0, a1, b1).unwrap();
        let spurious = -1.0 - b1 * zz / (a0 * a1 * r);
        assert!(poly.eval(spurious).norm() < 1e-12 * poly.max_coeff());
    }

    #[test]
    fn varma11_rejects_degenerate_parameters() {
        assert!(matches!(build_varma11_equation(z(1.0, 0.0), 0.25, 1.0, 0.0, 0.2), Err(Error::DegenerateFamily(_))));
        assert!(matches!(build_varma11_equation(z(1.0, 0.0), 0.25, 1.0, 0.3, 0.0), Err(Error::DegenerateFamily(_))));
    }

    #[test]
    fn real_coefficients_at_real_z() {
        let poly = build_varma11_equation(z(0.8, 0.0), 0.1, 1.0, 0.4, -0.3).unwrap();
        assert!(poly.coeffs().iter().all(|c| c.im == 0.0));
    }
}
