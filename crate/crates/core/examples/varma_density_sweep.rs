//! VARMA(1,1) densities for a decreasing ratio r = N/T.

use frv_varma::solver::{density_curve, CurveOptions};
use frv_varma::ProcessSpec;

fn main() -> frv_varma::Result<()> {
    let spec = ProcessSpec::varma(&[1.0, 0.3], &[0.2])?;
    println!("{:>7} {:>10} {:>10} {:>10} {:>10} {:>8}", "r", "lo", "hi", "peak at", "peak", "mass");
    for r in [0.5, 0.1, 0.02, 0.004] {
        let curve = density_curve(&spec, r, &CurveOptions::default())?;
        let (lo, hi) = curve.support_span().unwrap();
        let (at, peak) = curve.peak();
        println!("{r:>7} {lo:>10.5} {hi:>10.5} {at:>10.5} {peak:>10.5} {:>8.5}", curve.normalization);
    }
    Ok(())
}
