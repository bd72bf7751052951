//! Command-line front end: runs the verification suites, prints constants
//! and kernels, and emits machine-readable reports.

use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use lattice_disperse::lattice::{LatticeBox, LatticeVector};
use lattice_disperse::report::{to_csv, RunConfig, Status, VerdictRecord};
use lattice_disperse::schrodinger::{self, Potential, PotentialEntry};
use lattice_disperse::suites::{self, SuiteReport, SCHEMA_VERSION};
use lattice_disperse::{constants, report::anchors, resolvent};

#[derive(Parser)]
#[command(
    name = "lattice-disperse",
    about = "Verification suites for dispersive and resolvent estimates of the discrete Laplacian on Z^d",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for every randomized sweep (reports are byte-reproducible).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Dimensions to sweep, comma separated (e.g. 1,2,3).
    #[arg(long, global = true, value_delimiter = ',')]
    dims: Option<Vec<usize>>,
    /// Kernel tolerance override for resolvent sweeps.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Output directory for report.json and summary.csv.
    #[arg(long, global = true, default_value = "reports")]
    out: PathBuf,
    /// JSON run configuration; flags override file values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads (falls back to LATTICE_DISPERSE_JOBS).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Reduced grids for smoke runs.
    #[arg(long, global = true)]
    quick: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Pointwise and integral Bessel bound suite.
    BesselVerify,
    /// Print a closed-form constant: NAME followed by its parameters.
    Constants {
        name: String,
        params: Vec<String>,
        /// Also print derivation variants where the toolkit tracks them.
        #[arg(long)]
        verbose: bool,
    },
    /// Propagator decay suite.
    DispersiveVerify,
    /// Resolvent bound suite.
    ResolventVerify,
    /// Scan a potential for Birman-Schwinger points (needs --config).
    BsScan,
    /// Spectrum of a boxed Hamiltonian (needs --config).
    Spectrum,
    /// Wave-operator probe (needs --config).
    Waveop,
    /// Everything.
    Suite,
}

/// Potential-centric configuration for bs-scan / spectrum / waveop.
#[derive(serde::Deserialize)]
struct PotentialConfig {
    potential: Vec<PotentialEntry>,
    #[serde(default = "default_p")]
    p: f64,
    #[serde(default)]
    lambda_min: Option<f64>,
    #[serde(default)]
    lambda_max: Option<f64>,
    #[serde(default = "default_step")]
    step: f64,
    #[serde(default = "default_detection_tol")]
    detection_tol: f64,
    #[serde(default)]
    box_radius: Option<i64>,
    #[serde(default)]
    times: Option<Vec<f64>>,
}

fn default_p() -> f64 {
    1.0
}
fn default_step() -> f64 {
    0.05
}
fn default_detection_tol() -> f64 {
    1e-8
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => {}
        Ok(false) => std::process::exit(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(2);
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    let cfg = build_config(&cli)?;
    match &cli.command {
        Command::Constants { name, params, verbose } => {
            print_constant(name, params, *verbose)?;
            Ok(true)
        }
        Command::BesselVerify => emit(&cli, &cfg, suites::bessel_suite(&cfg)?),
        Command::DispersiveVerify => emit(&cli, &cfg, suites::dispersive_suite(&cfg)?),
        Command::ResolventVerify => emit(&cli, &cfg, suites::resolvent_suite(&cfg)?),
        Command::Suite => {
            let report = suites::full_suite(&cfg)?;
            write_report(&cli.out, &report)?;
            summarize(&report.records);
            Ok(suites::all_pass(&report.records))
        }
        Command::BsScan => {
            let pc = potential_config(&cli)?;
            let records = run_bs_scan(&pc)?;
            emit(&cli, &cfg, records)
        }
        Command::Spectrum => {
            let pc = potential_config(&cli)?;
            let records = run_spectrum(&pc)?;
            emit(&cli, &cfg, records)
        }
        Command::Waveop => {
            let pc = potential_config(&cli)?;
            let records = run_waveop(&pc)?;
            emit(&cli, &cfg, records)
        }
    }
}

fn build_config(cli: &Cli) -> Result<RunConfig> {
    let mut cfg: RunConfig = match &cli.config {
        Some(path) if matches!(cli.command, Command::Suite | Command::BesselVerify | Command::DispersiveVerify | Command::ResolventVerify) => {
            let data = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            serde_json::from_str(&data).with_context(|| format!("parsing {}", path.display()))?
        }
        _ => RunConfig::default(),
    };
    if cli.quick {
        cfg = RunConfig::quick_profile(cfg.seed);
    }
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(dims) = &cli.dims {
        cfg.dims = dims.clone();
    }
    if let Some(tol) = cli.tol {
        cfg.kernel_tol = tol;
    }
    cfg.jobs = cli
        .jobs
        .or(cfg.jobs)
        .or_else(|| std::env::var("LATTICE_DISPERSE_JOBS").ok().and_then(|v| v.parse().ok()));
    Ok(cfg)
}

fn potential_config(cli: &Cli) -> Result<PotentialConfig> {
    let path = cli.config.as_ref().context("this subcommand needs --config <file>")?;
    let data = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&data).with_context(|| format!("parsing {}", path.display()))
}

fn load_potential(pc: &PotentialConfig) -> Result<Potential> {
    let json = serde_json::to_string(&pc.potential)?;
    Ok(Potential::from_json(&json, pc.p)?)
}

fn run_bs_scan(pc: &PotentialConfig) -> Result<Vec<VerdictRecord>> {
    let v = load_potential(pc)?;
    let d = v.dim() as f64;
    let lo = pc.lambda_min.unwrap_or(-d - 1.0 - v.sup_norm());
    let hi = pc.lambda_max.unwrap_or(d + 1.0 + v.sup_norm());
    let mut grid = Vec::new();
    let mut x = lo;
    while x <= hi {
        grid.push(x);
        x += pc.step;
    }
    let detections = schrodinger::bs_scan(&v, &grid, pc.detection_tol)?;
    println!("scan over [{lo}, {hi}] step {}: {} detection(s)", pc.step, detections.len());
    let mut records = Vec::new();
    for det in &detections {
        println!(
            "  lambda = {:.12}  |nu + 1| = {:.3e}  refined = {}",
            det.lambda, det.distance, det.refined
        );
        let embedded = det.lambda.abs() <= d;
        let mut r = VerdictRecord::inequality("cli.bs-detection", anchors::BS_SCAN, det.distance, pc.detection_tol)
            .with_param("lambda", det.lambda)
            .with_param("eigenvalue", format!("{}", det.eigenvalue))
            .with_param("refined", det.refined);
        if embedded {
            // In-band candidates are reported, not asserted.
            r.status = Status::Descriptive;
            r = r.with_param("note", "inside the essential spectrum; reported descriptively");
        }
        records.push(r);
    }
    // Closest approach inside the band, reported descriptively.
    let mut best_inside: Option<(f64, f64)> = None;
    for &lambda in grid.iter().filter(|x| x.abs() <= d) {
        let op = schrodinger::bs_operator(&v, lambda, lattice_disperse::resolvent::Boundary::PlusI0)?;
        let (dist, _) = op.distance_to_bs();
        if best_inside.map_or(true, |(b, _)| dist < b) {
            best_inside = Some((dist, lambda));
        }
    }
    if let Some((dist, lambda)) = best_inside {
        records.push(
            VerdictRecord::descriptive("cli.bs-embedded-probe", anchors::BS_SCAN, dist, f64::INFINITY)
                .with_param("lambda", lambda)
                .with_param("note", "closest in-band approach of the spectrum to -1"),
        );
    }
    if detections.is_empty() {
        records.push(
            VerdictRecord::descriptive("cli.bs-detection", anchors::BS_SCAN, 0.0, f64::INFINITY)
                .with_param("note", "no detections (a valid outcome)"),
        );
    }
    Ok(records)
}

fn run_spectrum(pc: &PotentialConfig) -> Result<Vec<VerdictRecord>> {
    let v = load_potential(pc)?;
    let d = v.dim();
    let radius = pc.box_radius.unwrap_or(if d == 1 { 100 } else { 10 });
    let h = schrodinger::build_hamiltonian(&v, LatticeBox::new(d, radius))?;
    if h.boundary_warning {
        eprintln!("warning: potential support enters the boundary buffer; spectra may be polluted");
    }
    let mut records = Vec::new();
    let states = schrodinger::bound_state_candidates(&h, 4);
    println!("box radius {radius}: {} state(s) outside [-{d}, {d}]", states.len());
    for (val, _) in &states {
        println!("  eigenvalue {val:.12}");
        records.push(
            VerdictRecord::descriptive("cli.bound-state", anchors::SPECTRUM, *val, f64::INFINITY)
                .with_param("box", radius),
        );
    }
    if h.boxx.len() <= 4000 {
        let (vals, _) = schrodinger::spectrum(&h)?;
        println!(
            "dense spectrum: {} eigenvalues in [{:.6}, {:.6}]",
            vals.len(),
            vals.first().unwrap(),
            vals.last().unwrap()
        );
        records.push(
            VerdictRecord::descriptive(
                "cli.spectrum-range",
                anchors::SPECTRUM,
                *vals.first().unwrap(),
                *vals.last().unwrap(),
            )
            .with_param("count", vals.len())
            .with_param("box", radius),
        );
    }
    Ok(records)
}

fn run_waveop(pc: &PotentialConfig) -> Result<Vec<VerdictRecord>> {
    let v = load_potential(pc)?;
    let d = v.dim();
    let f = lattice_disperse::Sequence::delta(LatticeVector::zero(d));
    let times = pc.times.clone().unwrap_or_else(|| vec![1.0, 2.0, 4.0]);
    let radius = pc.box_radius.unwrap_or(52);
    let report = schrodinger::wave_operator_probe(&v, &f, &times, radius)?;
    println!("isometry defects: {:?}", report.isometry_defects);
    println!("cauchy increments: {:?}", report.cauchy_increments);
    println!("intertwining defects: {:?}", report.intertwining_defects);
    Ok(report.records)
}

fn print_constant(name: &str, params: &[String], verbose: bool) -> Result<()> {
    let f = |i: usize| -> Result<f64> {
        params
            .get(i)
            .with_context(|| format!("{name} needs at least {} parameter(s)", i + 1))?
            .parse::<f64>()
            .with_context(|| format!("parameter {} must be numeric", i + 1))
    };
    let u = |i: usize| -> Result<usize> { Ok(f(i)? as usize) };
    match name {
        "gamma_big" => {
            let v = constants::gamma_big(f(0)?, u(1)?, f(2)?)?;
            println!("{v}");
            if verbose {
                // The half-exponent variant appearing along the Hölder
                // derivation, printed for side-by-side comparison.
                match constants::gamma_big(f(0)? / 2.0, u(1)?, f(2)?) {
                    Ok(half) => println!("variant gamma_big(q/2, d, gamma) = {half}"),
                    Err(e) => println!("variant gamma_big(q/2, d, gamma): {e}"),
                }
            }
        }
        "c_d_gamma" => println!("{}", constants::c_d_gamma(u(0)?, f(1)?)?),
        "gamma_dq" => println!("{}", constants::gamma_dq(u(0)?, f(1)?)?),
        "c_a" => println!("{}", constants::c_a(f(0)?)?),
        "c_p_gamma" => println!("{}", constants::c_p_gamma(f(0)?, f(1)?)?),
        "kappa_p_gamma" => println!("{}", constants::kappa_p_gamma(f(0)? as i64, f(1)?, f(2)?)?),
        "r_p_gamma" => println!("{}", constants::r_p_gamma(f(0)?, f(1)?)?),
        "kappa_norm_bound" => println!("{}", constants::kappa_norm_bound(f(0)?, f(1)?, f(2)?)?),
        "d_qd" => println!("{}", constants::d_qd(f(0)?, u(1)?)?),
        "small_coupling_threshold" => println!("{}", constants::small_coupling_threshold(f(0)?, u(1)?)?),
        "admissibility" => {
            let a = constants::admissibility(u(0)?)?;
            println!("{}", serde_json::to_string_pretty(&a)?);
        }
        "r0_kernel" => {
            // r0_kernel d lambda mu n1 n2 ... (mu = 0 means the +i0 side).
            let d = u(0)?;
            if !(1..=6).contains(&d) {
                bail!("dimension must be 1..=6");
            }
            let lambda = f(1)?;
            let mu = f(2)?;
            let mut coords = Vec::new();
            for i in 0..d {
                coords.push(f(3 + i)? as i64);
            }
            let z = if mu == 0.0 {
                resolvent::SpectralPoint::plus_i0(lambda)
            } else {
                resolvent::SpectralPoint::interior(lambda, mu)?
            };
            let r = resolvent::r0_kernel(&LatticeVector::new(coords), &z, 1e-9)?;
            println!("{} (error bound {:.3e})", r.value, r.error_bound);
        }
        _ => bail!(
            "unknown constant {name}; available: gamma_big, c_d_gamma, gamma_dq, c_a, c_p_gamma, \
             kappa_p_gamma, r_p_gamma, kappa_norm_bound, d_qd, small_coupling_threshold, \
             admissibility, r0_kernel"
        ),
    }
    Ok(())
}

fn emit(cli: &Cli, cfg: &RunConfig, mut records: Vec<VerdictRecord>) -> Result<bool> {
    lattice_disperse::report::sort_records(&mut records);
    let report = SuiteReport { schema_version: SCHEMA_VERSION, seed: cfg.seed, records };
    write_report(&cli.out, &report)?;
    summarize(&report.records);
    Ok(suites::all_pass(&report.records))
}

fn write_report(out: &PathBuf, report: &SuiteReport) -> Result<()> {
    fs::create_dir_all(out)?;
    let json = serde_json::to_string_pretty(report)?;
    fs::write(out.join("report.json"), json)?;
    fs::write(out.join("summary.csv"), to_csv(&report.records))?;
    Ok(())
}

fn summarize(records: &[VerdictRecord]) {
    let count = |s: Status| records.iter().filter(|r| r.status == s).count();
    println!(
        "{} records: {} pass, {} fail, {} skipped, {} descriptive",
        records.len(),
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Skipped),
        count(Status::Descriptive)
    );
    for r in records.iter().filter(|r| r.status == Status::Fail) {
        println!("FAIL {} lhs={} rhs={} {:?}", r.check_id, r.lhs, r.rhs, r.parameters);
    }
}
