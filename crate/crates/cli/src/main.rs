//! Command-line front end: Mahler measures, zeros of the areal zeta Mahler
//! function, self-check suites and plot grids, written as CSV or JSON lines.

mod output;

use areal_mahler::mahler::{self, ArealQkRoute, ArealXykRoute, MeasureValue, XykRoute};
use areal_mahler::verify::{run_suite, Suite, VerifyOptions};
use areal_mahler::walks::{mc_areal_mahler_qk, mc_areal_mahler_xyk, MCConfig};
use areal_mahler::zetamahler::{find_zeros, winding_number, z_xyk, zd_xyk, ZeroBox};
use areal_mahler::{Complex64, Error};
use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use output::{CheckRow, Format, GridRow, OutputRecord, Row};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser, Debug)]
#[command(name = "areal-mahler", version, about = "Mahler measures, zeta Mahler functions and their cross-checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Add wall-clock time per record (makes output nondeterministic).
    #[arg(long)]
    timing: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classical or areal Mahler measure of x + y + k or (1 + x)(1 + y) + kz.
    Mahler(MahlerArgs),
    /// Zeros of the areal zeta Mahler function of x + y + k in a box.
    Zeros(ZerosArgs),
    /// Run self-check suites and report residuals.
    Verify(VerifyArgs),
    /// Grid of zeta Mahler function values for external plotting.
    Plotdata(PlotArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Xyk,
    Qk,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Route {
    /// Bloch–Wigner closed form (classical x + y + k).
    Cm,
    /// Hypergeometric series.
    Hyp,
    /// Classical measure minus the elementary difference term.
    Difference,
    /// Dilogarithm closed form with the difference term.
    Dilog,
    /// One-dimensional integral against a random-walk density.
    Density,
    /// Closed form in elliptic moments (areal product family).
    Theorem,
    /// Monte Carlo over the polydisk (areal measures only).
    Montecarlo,
}

#[derive(Args, Debug)]
struct MahlerArgs {
    #[arg(long, value_enum, default_value = "xyk")]
    family: Family,
    /// Comma-separated parameter values, each at least 0.
    #[arg(long, value_delimiter = ',', required = true, value_parser = parse_nonnegative, allow_hyphen_values = true)]
    k: Vec<f64>,
    /// Areal measure over the polydisk instead of the torus.
    #[arg(long)]
    areal: bool,
    #[arg(long, value_enum, conflicts_with = "all_routes")]
    route: Option<Route>,
    /// One record per available route.
    #[arg(long)]
    all_routes: bool,
    /// With --all-routes, fail when routes disagree by more than this.
    #[arg(long, value_parser = parse_positive)]
    tol: Option<f64>,
    #[arg(long, default_value = "1e6", value_parser = parse_count)]
    samples: u64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct ZerosArgs {
    #[arg(long, default_value_t = 1.0, value_parser = parse_nonnegative, allow_hyphen_values = true)]
    k: f64,
    /// Real range as `lo:hi`.
    #[arg(long, default_value = "-4:-3", value_parser = parse_range, allow_hyphen_values = true)]
    re: (f64, f64),
    /// Imaginary range as `lo:hi`.
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    im: (f64, f64),
    /// Grid points per unit length for the initial scan.
    #[arg(long, default_value_t = 10)]
    grid: usize,
    /// Also report the argument-principle count for the box.
    #[arg(long)]
    check_winding: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Suite name, or `all`.
    #[arg(long, default_value = "all", value_parser = parse_suite)]
    suite: SuiteChoice,
    /// Points in (0, 2) for the difference suite.
    #[arg(long, default_value_t = 200)]
    grid: usize,
    #[arg(long, value_delimiter = ',', default_value = "0.5,1,2,3", value_parser = parse_positive)]
    k: Vec<f64>,
    #[arg(long, default_value = "1e6", value_parser = parse_count)]
    samples: u64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct PlotArgs {
    #[arg(long, default_value_t = 1.0, value_parser = parse_nonnegative, allow_hyphen_values = true)]
    k: f64,
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    re: (f64, f64),
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    im: (f64, f64),
    /// Grid points along the real axis, endpoints included.
    #[arg(long, default_value_t = 101)]
    n_re: usize,
    /// Grid points along the imaginary axis, endpoints included.
    #[arg(long, default_value_t = 101)]
    n_im: usize,
    /// Plot the classical function instead of the areal one.
    #[arg(long)]
    classical: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Clone, Copy)]
enum SuiteChoice {
    All,
    One(Suite),
}

fn parse_suite(s: &str) -> Result<SuiteChoice, String> {
    if s == "all" {
        Ok(SuiteChoice::All)
    } else {
        let names: Vec<&str> = Suite::ALL.iter().map(|s| s.as_str()).collect();
        s.parse().map(SuiteChoice::One).map_err(|e| format!("{e}; expected all or one of {}", names.join(", ")))
    }
}

fn parse_finite(s: &str) -> Result<f64, String> {
    let x: f64 = s.trim().parse().map_err(|_| format!("not a number: {s:?}"))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(format!("not finite: {s:?}"))
    }
}

fn parse_nonnegative(s: &str) -> Result<f64, String> {
    let x = parse_finite(s)?;
    if x >= 0.0 {
        Ok(x)
    } else {
        Err(format!("must be at least 0, got {x}"))
    }
}

fn parse_positive(s: &str) -> Result<f64, String> {
    let x = parse_finite(s)?;
    if x > 0.0 {
        Ok(x)
    } else {
        Err(format!("must be positive, got {x}"))
    }
}

/// Accepts plain integers and forms like `1e6`.
fn parse_count(s: &str) -> Result<u64, String> {
    let x = parse_positive(s)?;
    if x.fract() != 0.0 || x > u64::MAX as f64 {
        return Err(format!("not a whole count: {s:?}"));
    }
    Ok(x as u64)
}

fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| format!("expected lo:hi, got {s:?}"))?;
    let (lo, hi) = (parse_finite(lo)?, parse_finite(hi)?);
    if lo < hi {
        Ok((lo, hi))
    } else {
        Err(format!("range must have lo < hi, got {s:?}"))
    }
}

/// Errors after argument parsing map to exit status 1.
#[derive(Debug)]
enum Failure {
    Compute(Error),
    Io(std::io::Error),
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn usage_error(msg: String) -> ! {
    Cli::command().error(ErrorKind::ArgumentConflict, msg).exit()
}

fn emit<R: Row>(rows: &[R], out: &OutputArgs) -> Result<(), Failure> {
    let mut w = output::open(out.out.as_deref())?;
    output::write_rows(rows, out.format, &mut *w)?;
    Ok(())
}

fn routes_for(family: Family, areal: bool) -> &'static [Route] {
    match (family, areal) {
        (Family::Xyk, false) => &[Route::Cm, Route::Hyp],
        (Family::Xyk, true) => &[Route::Dilog, Route::Hyp, Route::Difference, Route::Density, Route::Montecarlo],
        (Family::Qk, false) => &[Route::Density],
        (Family::Qk, true) => &[Route::Theorem, Route::Density, Route::Montecarlo],
    }
}

fn measure(family: Family, areal: bool, route: Route, k: f64, args: &MahlerArgs) -> Result<(f64, f64, String), Failure> {
    let closed = |m: MeasureValue| (m.value, m.method.error_bound() * m.value.abs().max(1.0), m.method.as_str().to_string());
    if route == Route::Montecarlo {
        let cfg = MCConfig::with_default_batching(args.samples, args.seed)?;
        let est = match family {
            Family::Xyk => mc_areal_mahler_xyk(k, &cfg)?,
            Family::Qk => mc_areal_mahler_qk(k, &cfg)?,
        };
        return Ok((est.mean, est.std_error, "monte-carlo".into()));
    }
    let m = match (family, areal, route) {
        (Family::Xyk, false, Route::Cm) => mahler::m_xyk(k, XykRoute::CassaigneMaillot)?,
        (Family::Xyk, false, Route::Hyp) => mahler::m_xyk(k, XykRoute::Hypergeometric)?,
        (Family::Xyk, true, Route::Hyp) => mahler::md_xyk(k, ArealXykRoute::Hypergeometric)?,
        (Family::Xyk, true, Route::Difference) => mahler::md_xyk(k, ArealXykRoute::Difference)?,
        (Family::Xyk, true, Route::Dilog) => mahler::md_xyk(k, ArealXykRoute::Dilogarithm)?,
        (Family::Xyk, true, Route::Density) => mahler::md_xyk(k, ArealXykRoute::Density)?,
        (Family::Qk, false, Route::Density) => mahler::m_qk(k)?,
        (Family::Qk, true, Route::Theorem) => mahler::md_qk(k, ArealQkRoute::Theorem)?,
        (Family::Qk, true, Route::Density) => mahler::md_qk(k, ArealQkRoute::Density)?,
        _ => unreachable!("route availability is checked before evaluation"),
    };
    Ok(closed(m))
}

fn cmd_mahler(args: &MahlerArgs) -> Result<(), Failure> {
    let available = routes_for(args.family, args.areal);
    let routes: Vec<Route> = if args.all_routes {
        available.to_vec()
    } else {
        let route = args.route.unwrap_or(available[0]);
        if !available.contains(&route) {
            let name = |r: &Route| r.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
            let names: Vec<String> = available.iter().map(name).collect();
            usage_error(format!("route {} is not available here; choose one of {}", name(&route), names.join(", ")));
        }
        vec![route]
    };
    if routes.contains(&Route::Montecarlo) && args.family == Family::Qk && args.k.contains(&0.0) {
        usage_error("Monte Carlo for the product family needs k > 0".into());
    }
    let prefix = if args.areal { "m_D" } else { "m" };
    let quantity = match args.family {
        Family::Xyk => format!("{prefix}(x+y+k)"),
        Family::Qk => format!("{prefix}((1+x)(1+y)+kz)"),
    };
    let mut records = Vec::new();
    let mut worst_gap: f64 = 0.0;
    for &k in &args.k {
        let mut values = Vec::new();
        for &route in &routes {
            let start = Instant::now();
            let (value, err, method) = measure(args.family, args.areal, route, k, args)?;
            let elapsed = start.elapsed().as_secs_f64() * 1e3;
            if route != Route::Montecarlo {
                values.push(value);
            }
            records.push(OutputRecord {
                quantity: quantity.clone(),
                k: Some(k),
                s_re: None,
                s_im: None,
                value_re: value,
                value_im: 0.0,
                err,
                method,
                wall_time_ms: args.output.timing.then_some(elapsed),
            });
        }
        if let Some(first) = values.first() {
            worst_gap = values.iter().fold(worst_gap, |acc, v| acc.max((v - first).abs()));
        }
    }
    emit(&records, &args.output)?;
    match args.tol {
        Some(tol) if worst_gap > tol => {
            eprintln!("routes disagree by {worst_gap:e}, above --tol {tol:e}");
            Err(Failure::Checks)
        }
        _ => Ok(()),
    }
}

fn cmd_zeros(args: &ZerosArgs) -> Result<(), Failure> {
    let zbox = ZeroBox::new(args.re.0, args.re.1, args.im.0, args.im.1, args.grid.max(1))?;
    let start = Instant::now();
    let zeros = find_zeros(&zbox, args.k)?;
    let elapsed = start.elapsed().as_secs_f64() * 1e3;
    let mut records = Vec::new();
    for z in &zeros {
        // first-order location error from |Z| / |Z'|
        let h = 1e-6;
        let f = |s: Complex64| zd_xyk(s, args.k);
        let slope = ((f(z.location + h)? - f(z.location - h)?) / (2.0 * h)).norm();
        records.push(OutputRecord {
            quantity: "zero of Z_D(s,x+y+k)".into(),
            k: Some(args.k),
            s_re: None,
            s_im: None,
            value_re: z.location.re,
            value_im: z.location.im,
            err: (z.residual / slope).max(f64::EPSILON * z.location.norm()),
            method: "newton".into(),
            wall_time_ms: args.output.timing.then_some(elapsed),
        });
    }
    if args.check_winding {
        let count = winding_number(|s| zd_xyk(s, args.k), &zbox)?;
        records.push(OutputRecord {
            quantity: "winding number".into(),
            k: Some(args.k),
            s_re: None,
            s_im: None,
            value_re: count as f64,
            value_im: 0.0,
            err: 0.0,
            method: "argument-principle".into(),
            wall_time_ms: None,
        });
    }
    emit(&records, &args.output)
}

fn cmd_verify(args: &VerifyArgs) -> Result<(), Failure> {
    let suites: Vec<Suite> = match args.suite {
        SuiteChoice::All => Suite::ALL.to_vec(),
        SuiteChoice::One(s) => vec![s],
    };
    let opts = VerifyOptions { grid: args.grid, k_values: args.k.clone(), samples: args.samples, seed: args.seed, sigmas: 4.0 };
    let mut rows = Vec::new();
    for suite in suites {
        for check in run_suite(suite, &opts)? {
            rows.push(CheckRow {
                suite: suite.to_string(),
                passed: check.passed(),
                check: check.name,
                residual: check.residual,
                tolerance: check.tolerance,
            });
        }
    }
    emit(&rows, &args.output)?;
    let failed = rows.iter().filter(|r| !r.passed).count();
    eprintln!("{} checks, {failed} failed", rows.len());
    if failed > 0 {
        Err(Failure::Checks)
    } else {
        Ok(())
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

fn cmd_plotdata(args: &PlotArgs) -> Result<(), Failure> {
    if args.n_re == 0 || args.n_im == 0 {
        usage_error("grid needs at least one point per axis".into());
    }
    let mut rows = Vec::new();
    for &y in &linspace(args.im.0, args.im.1, args.n_im) {
        for &x in &linspace(args.re.0, args.re.1, args.n_re) {
            let s = Complex64::new(x, y);
            let value = if args.classical { z_xyk(s, args.k) } else { zd_xyk(s, args.k) };
            let z = match value {
                Ok(z) => z,
                Err(Error::Pole(_)) => Complex64::new(f64::NAN, f64::NAN),
                Err(e) => return Err(e.into()),
            };
            rows.push(GridRow { s_re: x, s_im: y, z_re: z.re, z_im: z.im });
        }
    }
    emit(&rows, &args.output)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Mahler(a) => cmd_mahler(a),
        Command::Zeros(a) => cmd_zeros(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Plotdata(a) => cmd_plotdata(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Compute(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Checks) => ExitCode::from(1),
    }
}
