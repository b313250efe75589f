//! Higher-order processes go through the Newton route; compare it with the
//! polynomial route where both apply.

use frv_varma::report::curve_l1_distance;
use frv_varma::solver::{density_curve, CurveOptions};
use frv_varma::{ProcessSpec, Route};

fn main() -> frv_varma::Result<()> {
    let specs = [
        ("VMA(2)", ProcessSpec::vma(&[1.0, 0.5, 0.2])?),
        ("VAR(2)", ProcessSpec::var(1.0, &[0.3, 0.2])?),
        ("VARMA(2,1)", ProcessSpec::varma(&[1.0, 0.4], &[0.5, -0.2])?),
    ];
    for (name, spec) in &specs {
        let curve = density_curve(spec, 0.2, &CurveOptions::default())?;
        println!(
            "{name:<11} route {:?}  mass {:.5}  first moment {:.5}  flagged {}",
            curve.route,
            curve.normalization,
            curve.first_moment,
            curve.flagged.len()
        );
    }

    let spec = ProcessSpec::varma(&[1.0, 0.3], &[0.2])?;
    let poly = density_curve(&spec, 0.25, &CurveOptions { route: Route::Polynomial, ..Default::default() })?;
    let general =
        density_curve(&spec, 0.25, &CurveOptions { route: Route::General, epsilon: Some(1e-6), ..Default::default() })?;
    println!("VARMA(1,1) polynomial vs general L1: {:.2e}", curve_l1_distance(&poly, &general));
    Ok(())
}
