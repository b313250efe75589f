//! White noise reduces to the Marchenko-Pastur law.

use frv_varma::solver::{density_curve, CurveOptions};
use frv_varma::ProcessSpec;

fn main() -> frv_varma::Result<()> {
    for r in [0.1, 0.25, 1.0, 2.0] {
        let curve = density_curve(&ProcessSpec::white_noise(), r, &CurveOptions::default())?;
        let (lo, hi) = curve.support_span().unwrap();
        let exact = ((1.0 - r.sqrt()).powi(2), (1.0 + r.sqrt()).powi(2));
        println!(
            "r = {r:<5} support [{lo:.5}, {hi:.5}] (exact [{:.5}, {:.5}])  atom {:.3}  peak {:.4}",
            exact.0,
            exact.1,
            curve.atom,
            curve.peak().1
        );
    }
    Ok(())
}
