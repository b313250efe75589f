//! Auto-covariance functions and characteristic times.

use frv_varma::{autocovariance, ProcessSpec};

fn main() -> frv_varma::Result<()> {
    let specs = [
        ("VMA(2)", ProcessSpec::vma(&[1.0, 0.5, 0.2])?),
        ("VAR(1)", ProcessSpec::var(1.0, &[0.5])?),
        ("VAR(2)", ProcessSpec::var(1.0, &[0.5, -0.4])?),
        ("VARMA(1,1)", ProcessSpec::varma(&[1.0, 0.3], &[0.2])?),
    ];
    for (name, spec) in &specs {
        let model = autocovariance(spec)?;
        let lags: Vec<String> = (0..6).map(|d| format!("{:+.5}", model.at(d))).collect();
        println!("{name:<11} A(0..5) = [{}]", lags.join(", "));
        for (k, t) in model.characteristic_times.iter().enumerate() {
            println!("{:<11} T_{} = {t:.6}", "", k + 1);
        }
    }
    Ok(())
}
