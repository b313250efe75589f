//! Monte Carlo spectrum of a VARMA(1,1) panel against the theoretical density.
//!
//! `cargo run --release --example simulate_compare -- 1000`

use frv_varma::montecarlo::{simulate_spectra, BurnIn, SimulationConfig};
use frv_varma::report::{compare_spectra, CompareOptions, TheoryCurve};
use frv_varma::solver::{density_curve, CurveOptions};
use frv_varma::ProcessSpec;

fn main() -> frv_varma::Result<()> {
    let reps = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(200);
    let spec = ProcessSpec::varma(&[1.0, 0.3], &[0.2])?;
    let config = SimulationConfig::new(50, 200, reps, 2024, BurnIn::Auto, spec.clone())?;
    let theory = TheoryCurve::from_curve(&density_curve(&spec, config.r(), &CurveOptions::default())?)?;
    let spectra = simulate_spectra(&config)?;
    let report = compare_spectra(&theory, &spectra, &CompareOptions::default())?;
    println!("replicas {reps}, burn-in {}", config.effective_burn_in());
    println!(
        "L1 {:.4}  KS {:.4}  outside window {:.4}",
        report.l1_distance, report.ks_distance, report.outside_fraction
    );
    for row in &report.moment_table {
        println!(
            "moment {}: theory {:.5}  empirical {:.5} +- {:.1e}",
            row.k, row.theory, row.empirical, row.standard_error
        );
    }
    Ok(())
}
