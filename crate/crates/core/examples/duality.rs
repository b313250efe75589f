//! The N x N and T x T estimators share their non-zero spectrum.

use frv_varma::montecarlo::{dual_estimator_spectrum_check, simulate_panel, BurnIn, SimulationConfig};
use frv_varma::ProcessSpec;

fn main() -> frv_varma::Result<()> {
    let spec = ProcessSpec::var(1.0, &[0.5])?;
    for (n, t) in [(20, 60), (60, 20), (30, 30)] {
        let config = SimulationConfig::new(n, t, 1, 7, BurnIn::Auto, spec.clone())?;
        let report = dual_estimator_spectrum_check(&simulate_panel(&config, 0)?)?;
        println!(
            "N = {n:>2}, T = {t:>2}: pairs {:>2}, zero modes {:>2}, max deviation {:.1e}, skipped {}, passed {}",
            report.matched_pairs, report.zero_modes, report.max_relative_deviation, report.skipped, report.passed
        );
    }
    Ok(())
}
