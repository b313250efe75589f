//! Branch tracking of the physical solution `M(lambda)` along a real grid.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::polyroots::find_roots;
use crate::transforms::MTransform;

use super::equations::PolySpectralEquation;

/// Two admissible roots closer than this make the selection ambiguous.
pub const AMBIGUITY_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy)]
pub struct Tracked {
    pub m: Complex64,
    pub flagged: bool,
}

pub trait Tracker {
    /// Imaginary offset at which the density is read off.
    fn epsilon(&self) -> f64;
    /// Physical solution at `lambda + i epsilon`, continued from `prev`.
    fn step(&self, lambda: f64, prev: Complex64) -> Result<Tracked>;

    fn green(&self, lambda: f64, m: Complex64) -> Complex64 {
        (m + 1.0) / Complex64::new(lambda, self.epsilon())
    }
}

/// Root selection on the polynomial equation.
///
/// Candidates are the roots at `lambda + i delta` whose Green's function
/// lies in the lower half plane; among them the one nearest the previous
/// value wins. With `epsilon == 0` the winner is then mapped onto the
/// nearest root at real `lambda`.
pub struct PolyTracker {
    pub equation: PolySpectralEquation,
    pub transform: MTransform,
    pub epsilon: f64,
    pub scale: f64,
}

const POLISH_ITERATIONS: usize = 20;
const POLISH_TOLERANCE: f64 = 1e-13;

impl PolyTracker {
    pub fn new(equation: PolySpectralEquation, epsilon: f64, scale: f64) -> Self {
        Self { transform: equation.family.transform(), equation, epsilon, scale }
    }

    /// Newton on the fundamental equation in `u = 1 + M`, returning the root
    /// if it converged to an admissible value. Near `lambda = 0` all
    /// polynomial roots cluster at `M = -1` and lose most of their digits.
    fn polish(&self, z: Complex64, m: Complex64) -> Option<Complex64> {
        let r = self.equation.r;
        let residual = |u: Complex64| self.transform.eval(z / (r * u)).ok().map(|v| r * (u - 1.0) - v);
        let mut u = m + 1.0;
        let mut f = residual(u)?;
        for _ in 0..POLISH_ITERATIONS {
            if f.norm() <= POLISH_TOLERANCE * (r * (u - 1.0)).norm().max(1.0) {
                break;
            }
            let h = 1e-6 * u.norm();
            let df = (residual(u + h)? - residual(u - h)?) / (2.0 * h);
            let next = u - f / df;
            if !next.re.is_finite() || !next.im.is_finite() || (next - u).norm() > 2.0 * u.norm() {
                return None;
            }
            match residual(next) {
                Some(fn_) if fn_.norm() < f.norm() => {
                    u = next;
                    f = fn_;
                }
                _ => break,
            }
        }
        let g = u / z;
        let converged = f.norm() <= POLISH_TOLERANCE * (r * (u - 1.0)).norm().max(1.0);
        (converged && g.im <= 1e-12 * g.norm()).then_some(u - 1.0)
    }

    /// Root selection on the polynomial alone.
    fn select(&self, lambda: f64, prev: Complex64) -> Result<Tracked> {
        let z = Complex64::new(lambda, self.probe(lambda));
        let roots = find_roots(&self.equation.at(z)?)?;
        let mut admissible: Vec<(f64, Complex64)> =
            roots.iter().filter(|m| ((*m + 1.0) / z).im <= 0.0).map(|&m| ((m - prev).norm(), m)).collect();
        if admissible.is_empty() {
            return Err(Error::Solver { lambda, reason: "no root satisfies the half-plane condition".into() });
        }
        admissible.sort_by(|a, b| a.0.total_cmp(&b.0));
        let chosen = admissible[0].1;
        let flagged =
            admissible.len() > 1 && (admissible[1].1 - chosen).norm() < AMBIGUITY_TOLERANCE * chosen.norm().max(1.0);
        if self.epsilon > 0.0 {
            return Ok(Tracked { m: chosen, flagged });
        }
        let real_roots = find_roots(&self.equation.at(Complex64::new(lambda, 0.0))?)?;
        let mut m = real_roots
            .iter()
            .copied()
            .min_by(|a, b| (a - chosen).norm().total_cmp(&(b - chosen).norm()))
            .expect("nonempty root set");
        if m.im > 0.0 {
            m = m.conj();
        }
        Ok(Tracked { m, flagged })
    }

    fn probe(&self, lambda: f64) -> f64 {
        if self.epsilon > 0.0 {
            self.epsilon
        } else {
            1e-8 * lambda.abs().max(self.scale)
        }
    }
}

impl Tracker for PolyTracker {
    fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Polynomial selection, then Newton on the fundamental equation from
    /// both the selected root and `prev`; the converged value nearest `prev`
    /// wins.
    fn step(&self, lambda: f64, prev: Complex64) -> Result<Tracked> {
        let selected = self.select(lambda, prev);
        let z = Complex64::new(lambda, self.epsilon);
        let flagged = selected.as_ref().is_ok_and(|t| t.flagged);
        let polished = selected
            .iter()
            .map(|t| t.m)
            .chain(std::iter::once(prev))
            .filter_map(|start| self.polish(z, start))
            .min_by(|a, b| (a - prev).norm().total_cmp(&(b - prev).norm()));
        match polished {
            Some(m) => Ok(Tracked { m, flagged }),
            None => selected,
        }
    }
}

/// Damped Newton continuation on `F(M) = r M - M_A(z / (r (1 + M)))`.
pub struct GeneralTracker {
    pub transform: MTransform,
    pub r: f64,
    pub epsilon: f64,
}

const NEWTON_ITERATIONS: usize = 80;
const EPSILON_LADDER: i32 = 6;

impl GeneralTracker {
    pub fn residual(&self, z: Complex64, m: Complex64) -> Result<Complex64> {
        let w = z / (self.r * (1.0 + m));
        Ok(self.r * m - self.transform.eval(w)?)
    }

    fn newton(&self, z: Complex64, start: Complex64) -> Option<Complex64> {
        let mut m = start;
        let mut f = self.residual(z, m).ok()?;
        for _ in 0..NEWTON_ITERATIONS {
            let scale = (self.r * m).norm().max(1.0);
            if f.norm() <= 1e-13 * scale {
                return Some(m);
            }
            let h = 1e-7 * m.norm().max(1e-3);
            let fp = self.residual(z, m + h).ok()?;
            let fm = self.residual(z, m - h).ok()?;
            let df = (fp - fm) / (2.0 * h);
            if df.norm() == 0.0 || !df.re.is_finite() {
                return None;
            }
            let step = f / df;
            let mut t = 1.0;
            let mut accepted = false;
            while t > 1e-6 {
                let candidate = m - t * step;
                if let Ok(fc) = self.residual(z, candidate) {
                    if fc.norm() < f.norm() {
                        m = candidate;
                        f = fc;
                        accepted = true;
                        break;
                    }
                }
                t *= 0.5;
            }
            if !accepted {
                return (f.norm() <= 1e-10 * scale).then_some(m);
            }
            if (t * step).norm() <= 1e-15 * m.norm().max(1.0) {
                return Some(m);
            }
        }
        let scale = (self.r * m).norm().max(1.0);
        (f.norm() <= 1e-10 * scale).then_some(m)
    }

    fn admissible(&self, z: Complex64, m: Complex64) -> bool {
        let g = (m + 1.0) / z;
        g.im <= 1e-12 * g.norm().max(1.0)
    }

    fn solve_at(&self, lambda: f64, epsilon: f64, start: Complex64) -> Option<Complex64> {
        let z = Complex64::new(lambda, epsilon);
        self.newton(z, start).filter(|&m| self.admissible(z, m))
    }
}

impl Tracker for GeneralTracker {
    fn epsilon(&self) -> f64 {
        self.epsilon
    }

    fn step(&self, lambda: f64, prev: Complex64) -> Result<Tracked> {
        if let Some(m) = self.solve_at(lambda, self.epsilon, prev) {
            return Ok(Tracked { m, flagged: false });
        }
        // climb to a larger offset, then walk back down by halving
        for k in 1..=EPSILON_LADDER {
            let high = self.epsilon.max(1e-12) * 10f64.powi(k);
            let Some(mut m) = self.solve_at(lambda, high, prev) else {
                continue;
            };
            let mut eps = high;
            let mut ok = true;
            while eps > self.epsilon {
                eps = (eps * 0.5).max(self.epsilon);
                match self.solve_at(lambda, eps, m) {
                    Some(next) => m = next,
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                return Ok(Tracked { m, flagged: false });
            }
        }
        Err(Error::Solver { lambda, reason: "Newton continuation failed on the whole epsilon ladder".into() })
    }
}
