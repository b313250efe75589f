//! Limiting eigenvalue densities of Pearson sample-covariance matrices built
//! from decoupled VMA(q), VAR(q) and VARMA(q1, q2) processes.
//!
//! The density follows from the free multiplication law specialised to a
//! trivial cross-covariance, `r M = M_A(z / (r (1 + M)))`, where `M_A` is the
//! M-transform of the process auto-covariance matrix. For the order-one
//! families the equation is polynomial in `M` (degree four for VMA(1) and
//! VAR(1), six for VARMA(1,1)); any other order is solved by continuation
//! on the general equation. A seeded Monte Carlo simulator of the same
//! processes provides the empirical side of the comparison.

#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod montecarlo;
pub mod polyroots;
pub mod process;
pub mod report;
pub mod solver;
pub mod transforms;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use process::{autocovariance, AutoCovModel, KappaVector, ProcessKind, ProcessSpec};
pub use solver::{DensityCurve, Route};
pub use transforms::MTransform;
