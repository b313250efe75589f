//! The `frv` command line: `density`, `simulate`, `compare`, `autocov`.

use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::montecarlo::{
    aggregate_spectrum, read_eigenvalues_csv, simulate_spectra, write_eigenvalues_csv, Bins, BurnIn, Histogram,
    SimulationConfig,
};
use crate::process::{autocovariance, ProcessKind, ProcessSpec};
use crate::solver::{density_curve, theoretical_moments, CurveOptions, Route};

use super::{
    compare_spectra, comparison_histogram, density_svg, histogram_svg, overlay_svg, read_density_csv,
    write_autocov_csv, write_density_csv, write_histogram_csv, CompareOptions, ConfigEcho, TheoryCurve, DEFAULT_L1_MAX,
};

/// Exit code for invalid parameters.
pub const EXIT_BAD_PARAMS: i32 = 2;
/// Exit code for solver failures and disjoint spectra.
pub const EXIT_SOLVER: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "frv", version, about = "Limiting eigenvalue densities of VARMA sample covariance matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Theory density on the detected support.
    Density(DensityArgs),
    /// Monte Carlo eigenvalues and their pooled histogram.
    Simulate(SimulateArgs),
    /// Theory against simulation: L1, KS and moments.
    Compare(CompareArgs),
    /// Auto-covariance function and characteristic times.
    Autocov(AutocovArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ProcessArgs {
    /// vma, var or varma
    #[arg(long)]
    pub process: ProcessKind,
    /// Moving-average coefficients a0,a1,...
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub a: Vec<f64>,
    /// Autoregressive coefficients b1,b2,...
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub b: Vec<f64>,
}

impl ProcessArgs {
    pub fn spec(&self) -> Result<ProcessSpec> {
        match self.process {
            ProcessKind::Vma if !self.b.is_empty() => {
                Err(Error::InvalidArgument("--b is not accepted for a VMA process".into()))
            }
            _ => ProcessSpec::new(self.process, self.a.clone(), self.b.clone()),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct SolverArgs {
    /// Number of grid points
    #[arg(long, default_value_t = 1000)]
    pub points: usize,
    /// Imaginary offset (0 on the polynomial route by default)
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// polynomial, general or auto
    #[arg(long, default_value = "auto")]
    pub route: Route,
}

impl SolverArgs {
    fn options(&self) -> CurveOptions {
        CurveOptions { points: self.points, route: self.route, epsilon: self.epsilon }
    }
}

#[derive(Debug, Clone, Args)]
pub struct SimulationArgs {
    #[arg(long = "N")]
    pub n: usize,
    #[arg(long = "T")]
    pub t: usize,
    #[arg(long, default_value_t = 1000)]
    pub reps: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Explicit burn-in (automatic when absent)
    #[arg(long = "burn-in")]
    pub burn_in: Option<usize>,
    /// Histogram bins (automatic when absent)
    #[arg(long)]
    pub bins: Option<usize>,
}

impl SimulationArgs {
    fn config(&self, spec: ProcessSpec) -> Result<SimulationConfig> {
        let burn = self.burn_in.map_or(BurnIn::Auto, BurnIn::Explicit);
        SimulationConfig::new(self.n, self.t, self.reps, self.seed, burn, spec)
    }

    fn bins(&self) -> Result<Bins> {
        match self.bins {
            None => Ok(Bins::Auto),
            Some(0) => Err(Error::InvalidArgument("--bins must be positive".into())),
            Some(b) => Ok(Bins::Fixed(b)),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct DensityArgs {
    #[command(flatten)]
    pub process: ProcessArgs,
    /// Rectangularity ratio N/T
    #[arg(long)]
    pub r: f64,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    /// Also write density.svg
    #[arg(long)]
    pub svg: bool,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub process: ProcessArgs,
    #[command(flatten)]
    pub sim: SimulationArgs,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    /// Name of the eigenvalue dump inside --out
    #[arg(long, default_value = "eigenvalues.csv")]
    pub eigenvalues: String,
    /// Also write histogram.svg
    #[arg(long)]
    pub svg: bool,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub process: ProcessArgs,
    #[command(flatten)]
    pub sim: SimulationArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[arg(long = "l1-max", default_value_t = DEFAULT_L1_MAX)]
    pub l1_max: f64,
    /// Drop eigenvalues outside the widened theory support
    #[arg(long = "crop-support")]
    pub crop_support: bool,
    /// Precomputed `lambda,density` table instead of solving
    #[arg(long = "density-csv")]
    pub density_csv: Option<PathBuf>,
    /// Precomputed `replica,index,eigenvalue` dump instead of simulating
    #[arg(long = "eigenvalues-csv")]
    pub eigenvalues_csv: Option<PathBuf>,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct AutocovArgs {
    #[command(flatten)]
    pub process: ProcessArgs,
    #[arg(long = "max-lag", default_value_t = 20)]
    pub max_lag: usize,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

/// Exit code of a library error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidArgument(_) | Error::NonStationary(_) | Error::DegenerateFamily(_) => EXIT_BAD_PARAMS,
        _ => EXIT_SOLVER,
    }
}

fn create(dir: &Path, name: &str) -> Result<BufWriter<File>> {
    fs::create_dir_all(dir)?;
    Ok(BufWriter::new(File::create(dir.join(name))?))
}

fn check_r(r: f64) -> Result<()> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidArgument(format!("--r {r}: r must be positive")));
    }
    Ok(())
}

pub fn cmd_density(args: &DensityArgs) -> Result<i32> {
    check_r(args.r)?;
    let spec = args.process.spec()?;
    let curve = density_curve(&spec, args.r, &args.solver.options())?;
    write_density_csv(create(&args.out, "density.csv")?, &curve.lambdas, &curve.rho)?;
    if args.svg {
        let title = format!("{:?} density, r = {}", spec.kind(), args.r);
        fs::write(args.out.join("density.svg"), density_svg(&curve.lambdas, &curve.rho, &title))?;
    }
    println!("route: {:?}", curve.route);
    for (lo, hi) in &curve.support_intervals {
        println!("support: [{lo:.10}, {hi:.10}]");
    }
    if curve.atom > 0.0 {
        println!("atom at zero: {:.10}", curve.atom);
    }
    let (m1, m2) = theoretical_moments(&spec, args.r);
    println!("normalization: {:.10}", curve.normalization + curve.atom);
    println!("first moment: {:.10} (theory {m1:.10})", curve.first_moment);
    println!("second moment: {:.10} (theory {m2:.10})", curve.second_moment);
    if !curve.flagged.is_empty() {
        println!("flagged points: {}", curve.flagged.len());
    }
    Ok(0)
}

pub fn cmd_simulate(args: &SimulateArgs) -> Result<i32> {
    let spec = args.process.spec()?;
    let config = args.sim.config(spec)?;
    let sample = aggregate_spectrum(&config, args.sim.bins()?)?;
    write_eigenvalues_csv(create(&args.out, &args.eigenvalues)?, &sample.eigenvalues)?;
    write_histogram_csv(create(&args.out, "histogram.csv")?, &sample.histogram)?;
    if args.svg {
        let title = format!("N = {}, T = {}, {} replicas", config.n(), config.t(), config.replicas());
        fs::write(args.out.join("histogram.svg"), histogram_svg(&sample.histogram, &title))?;
    }
    let (m1, se1) = sample.moment(1);
    println!("seed: {}", config.seed());
    println!("burn-in: {}", config.effective_burn_in());
    println!("eigenvalues: {}", sample.eigenvalues.iter().map(Vec::len).sum::<usize>());
    println!("mean eigenvalue: {m1:.10} +- {se1:.2e}");
    Ok(0)
}

pub fn cmd_compare(args: &CompareArgs) -> Result<i32> {
    let spec = args.process.spec()?;
    let config = args.sim.config(spec.clone())?;
    if !(args.l1_max > 0.0) {
        return Err(Error::InvalidArgument("--l1-max must be positive".into()));
    }
    let (theory, epsilon, route) = match &args.density_csv {
        Some(path) => {
            let (l, p) = read_density_csv(File::open(path)?)?;
            (TheoryCurve::from_table(l, p)?, None, None)
        }
        None => {
            let curve = density_curve(&spec, config.r(), &args.solver.options())?;
            (TheoryCurve::from_curve(&curve)?, Some(curve.epsilon), Some(format!("{:?}", curve.route).to_lowercase()))
        }
    };
    let spectra = match &args.eigenvalues_csv {
        Some(path) => read_eigenvalues_csv(File::open(path)?)?,
        None => simulate_spectra(&config)?,
    };
    let options = CompareOptions { bins: args.sim.bins()?, crop_support: args.crop_support, l1_max: args.l1_max };
    let mut report = compare_spectra(&theory, &spectra, &options)?;
    report.config = ConfigEcho {
        process: Some(serde_json::to_value(&spec)?),
        r: Some(config.r()),
        n: Some(config.n()),
        t: Some(config.t()),
        replicas: Some(spectra.len()),
        seed: args.eigenvalues_csv.is_none().then_some(config.seed()),
        route,
        epsilon,
        points: Some(args.solver.points),
    };
    fs::create_dir_all(&args.out)?;
    fs::write(args.out.join("report.json"), report.to_json()?)?;
    let pooled: Vec<f64> = spectra.iter().flatten().copied().collect();
    let hist: Histogram = comparison_histogram(&theory, &pooled, &options)?;
    let title = format!("N = {}, T = {}, {} replicas", config.n(), config.t(), spectra.len());
    fs::write(args.out.join("overlay.svg"), overlay_svg(&hist, &theory.lambdas, &theory.rho, &title))?;
    println!("l1_distance: {:.6}", report.l1_distance);
    println!("ks_distance: {:.6}", report.ks_distance);
    for row in &report.moment_table {
        println!(
            "moment {}: theory {:.6}, empirical {:.6} +- {:.2e}",
            row.k, row.theory, row.empirical, row.standard_error
        );
    }
    println!("{}", if report.passed() { "PASS" } else { "FAIL" });
    Ok(report.exit_code())
}

pub fn cmd_autocov(args: &AutocovArgs) -> Result<i32> {
    let spec = args.process.spec()?;
    let model = autocovariance(&spec)?;
    let values: Vec<f64> = (0..=args.max_lag as i64).map(|d| model.at(d)).collect();
    write_autocov_csv(create(&args.out, "autocov.csv")?, &values)?;
    println!("A(0) = {:.12}", values[0]);
    for (k, t) in model.characteristic_times.iter().enumerate() {
        println!("T_{} = {t:.12}", k + 1);
    }
    Ok(0)
}

pub fn run(cli: &Cli) -> i32 {
    let result = match &cli.command {
        Command::Density(a) => cmd_density(a),
        Command::Simulate(a) => cmd_simulate(a),
        Command::Compare(a) => cmd_compare(a),
        Command::Autocov(a) => cmd_autocov(a),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code(&err)
        }
    }
}

/// Parses `args` (program name first) and runs; clap usage errors exit 2.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(err) => {
            let code = if err.use_stderr() { EXIT_BAD_PARAMS } else { 0 };
            let _ = err.print();
            code
        }
    }
}
