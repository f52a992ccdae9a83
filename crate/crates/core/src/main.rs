#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use pms_core::analysis::{
    duffing_b0_study, duffing_error_vs_rho, fmt_f64, log_grid, negative_rho_study, precession_error_table,
    sextic_c0_study,
};
use pms_core::constants::{self, REFERENCE};
use pms_core::oracle::{set_default_abs_tol, LogLinearFit};
use pms_core::oscillators::{
    cubic_exact_period, cubic_series, duffing_exact_period, duffing_period_series, even_power_exact_period,
    even_power_kappa_first_order, even_power_series, pendulum_approx, pendulum_exact, sextic_exact_period,
    sextic_series,
};
use pms_core::precession::{critical_semimajor_axis, precession_exact, precession_series, to_arcsec, OrbitParams};
use pms_core::{exact_period, period_series, Error, OscillatorModel};

#[derive(Parser)]
#[command(name = "pms", version, about = "Anharmonic oscillator periods from PMS-optimised series")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Partial sums of the period series for one oscillator.
    #[command(allow_negative_numbers = true)]
    Period(PeriodArgs),
    /// Convergence study as CSV or JSON.
    #[command(allow_negative_numbers = true)]
    Convergence(ConvergenceArgs),
    /// Perihelion precession per orbit.
    #[command(allow_negative_numbers = true)]
    Precession(PrecessionArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Duffing,
    Sextic,
    Even,
    Cubic,
    QuarticCubic,
    Pendulum,
}

#[derive(Args)]
struct PeriodArgs {
    #[arg(value_enum)]
    model: Model,
    /// Dimensionless anharmonicity μA^{2K−2}.
    #[arg(long)]
    rho: Option<f64>,
    #[arg(long)]
    mu: Option<f64>,
    #[arg(long)]
    amplitude: Option<f64>,
    /// Exponent K of the even family.
    #[arg(long, default_value_t = 3)]
    k: u32,
    /// ω² = (1 + κρ)/2 for the even family; first-order PMS by default.
    #[arg(long)]
    kappa: Option<f64>,
    #[arg(long)]
    x_minus: Option<f64>,
    #[arg(long)]
    x_plus: Option<f64>,
    #[arg(long)]
    a2: Option<f64>,
    #[arg(long)]
    a3: Option<f64>,
    #[arg(long)]
    a4: Option<f64>,
    #[arg(long)]
    energy: Option<f64>,
    /// Taylor order of the pendulum potential (2, 4 or 6).
    #[arg(long, default_value_t = 6)]
    taylor: u32,
    #[arg(long, default_value_t = 4)]
    order: usize,
    /// Add the quadrature or elliptic-integral period.
    #[arg(long)]
    exact: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum Study {
    DuffingB0,
    DuffingRho,
    SexticC0,
    NegativeRho,
    Precession,
}

#[derive(Args)]
struct ConvergenceArgs {
    #[arg(value_enum)]
    study: Study,
    #[arg(long)]
    max_order: Option<usize>,
    /// Series order for the ρ sweep.
    #[arg(long, default_value_t = 2)]
    order: usize,
    #[arg(long, default_value_t = 1e-3)]
    rho_min: f64,
    #[arg(long, default_value_t = 1e6)]
    rho_max: f64,
    /// Grid size for sweeps.
    #[arg(long, default_value_t = 50)]
    points: usize,
    #[arg(long, default_value_t = 3)]
    k: u32,
    #[arg(long, default_value_t = -0.9)]
    rho: f64,
    #[arg(long)]
    a_min: Option<f64>,
    #[arg(long)]
    a_max: Option<f64>,
    #[arg(long, value_delimiter = ',', default_value = "0,2,4,6")]
    orders: Vec<usize>,
    #[command(flatten)]
    orbit: OrbitArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct OrbitArgs {
    #[arg(long, default_value_t = constants::ECCENTRICITY)]
    eccentricity: f64,
    /// (G/c²)·M in metres; overrides --mass and --g-over-c2.
    #[arg(long = "GM", alias = "gm")]
    gm: Option<f64>,
    #[arg(long, default_value_t = constants::MASS)]
    mass: f64,
    #[arg(long, default_value_t = constants::G_OVER_C2)]
    g_over_c2: f64,
}

impl OrbitArgs {
    fn gm(&self) -> f64 {
        self.gm.unwrap_or(self.mass * self.g_over_c2)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Units {
    Arcsec,
    Rad,
}

#[derive(Args)]
struct PrecessionArgs {
    /// Semimajor axis in metres.
    #[arg(long)]
    a: f64,
    #[command(flatten)]
    orbit: OrbitArgs,
    #[arg(long, default_value_t = 6)]
    order: usize,
    #[arg(long, value_enum, default_value = "arcsec")]
    units: Units,
    /// Skip the quadrature; allows evaluating the series below a_c.
    #[arg(long)]
    no_exact: bool,
    #[command(flatten)]
    output: OutputArgs,
}

/// Failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ToleranceNotMet { .. } | Error::NoConvergence(_) | Error::NonFiniteIntegrand(_) => 1,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

fn below_critical(a_c: f64) -> Failure {
    Failure { code: 3, message: format!("below critical semimajor axis a_c={a_c}") }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> CliResult<()> {
    if let Ok(tol) = std::env::var("PMS_ABS_TOL") {
        let tol: f64 = tol.trim().parse().map_err(|_| invalid(format!("PMS_ABS_TOL must be a number, got {tol:?}")))?;
        set_default_abs_tol(tol)?;
    }
    match cli.command {
        Command::Period(args) => cmd_period(&args),
        Command::Convergence(args) => cmd_convergence(&args),
        Command::Precession(args) => cmd_precession(&args),
    }
}

fn emit(output: &OutputArgs, text: &str) -> CliResult<()> {
    match &output.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure { code: 1, message: format!("cannot write {}: {e}", path.display()) }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Fit summaries go to stdout when the table went to a file, else stderr.
fn report(output: &OutputArgs, line: &str) {
    if output.out.is_some() {
        println!("{line}");
    } else {
        eprintln!("{line}");
    }
}

fn fit_line(name: &str, fit: &LogLinearFit) -> String {
    format!("{name}: alpha={} beta={} residual={}", fmt_f64(fit.alpha), fmt_f64(fit.beta), fmt_f64(fit.residual))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn require(value: Option<f64>, flag: &str) -> CliResult<f64> {
    value.ok_or_else(|| invalid(format!("--{flag} is required for this model")))
}

#[derive(Serialize)]
struct PeriodRow {
    n: usize,
    period: f64,
    exact: Option<f64>,
}

#[derive(Serialize)]
struct PeriodTable {
    model: &'static str,
    rows: Vec<PeriodRow>,
}

/// ρ from `--rho`, or from `--mu` and `--amplitude`.
fn rho_of(args: &PeriodArgs, k: u32) -> CliResult<f64> {
    match (args.rho, args.mu) {
        (Some(rho), None) => Ok(rho),
        (None, Some(mu)) => {
            let a = args.amplitude.unwrap_or(1.0);
            if !(a > 0.0) {
                return Err(invalid(format!("amplitude must be positive, got {a}")));
            }
            Ok(mu * a.powi(2 * k as i32 - 2))
        }
        (Some(_), Some(_)) => Err(invalid("give either --rho or --mu, not both")),
        (None, None) => Err(invalid("--rho (or --mu with --amplitude) is required")),
    }
}

fn check_rho(rho: f64) -> CliResult<()> {
    if rho > -1.0 && rho.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("rho must exceed -1, got {rho}")))
    }
}

fn cmd_period(args: &PeriodArgs) -> CliResult<()> {
    type Series = Box<dyn Fn(usize) -> pms_core::Result<f64>>;
    let (name, series, exact): (&'static str, Series, Box<dyn Fn() -> pms_core::Result<f64>>) = match args.model {
        Model::Duffing => {
            let rho = rho_of(args, 2)?;
            check_rho(rho)?;
            ("duffing", Box::new(move |n| duffing_period_series(rho, n)), Box::new(move || duffing_exact_period(rho)))
        }
        Model::Sextic => {
            let rho = rho_of(args, 3)?;
            check_rho(rho)?;
            ("sextic", Box::new(move |n| sextic_series(rho, n)), Box::new(move || sextic_exact_period(rho)))
        }
        Model::Even => {
            let k = args.k;
            if k < 2 {
                return Err(invalid(format!("k must be at least 2, got {k}")));
            }
            let rho = rho_of(args, k)?;
            check_rho(rho)?;
            let kappa = args.kappa.unwrap_or_else(|| even_power_kappa_first_order(k));
            if !(1.0 + kappa * rho > 0.0) {
                return Err(invalid(format!("1 + kappa*rho must be positive, got {}", 1.0 + kappa * rho)));
            }
            (
                "even",
                Box::new(move |n| even_power_series(k, rho, kappa, n).map(|e| e.value)),
                Box::new(move || even_power_exact_period(k, rho)),
            )
        }
        Model::Cubic => {
            let (m, p) = (require(args.x_minus, "x-minus")?, require(args.x_plus, "x-plus")?);
            pms_core::oscillators::cubic_parameters(m, p)?.check_below_barrier()?;
            ("cubic", Box::new(move |n| cubic_series(m, p, n)), Box::new(move || cubic_exact_period(m, p)))
        }
        Model::QuarticCubic => {
            let model = OscillatorModel::QuarticCubic {
                a2: require(args.a2, "a2")?,
                a3: args.a3.unwrap_or(0.0),
                a4: args.a4.unwrap_or(0.0),
                energy: require(args.energy, "energy")?,
            };
            pms_core::turning_points(&model)?;
            ("quartic-cubic", Box::new(move |n| period_series(&model, n)), Box::new(move || exact_period(&model)))
        }
        Model::Pendulum => {
            let a = require(args.amplitude, "amplitude")?;
            let taylor = args.taylor;
            pms_core::turning_points(&OscillatorModel::PendulumTaylor { order: taylor, amplitude: a })?;
            ("pendulum", Box::new(move |n| pendulum_approx(a, taylor, n)), Box::new(move || pendulum_exact(a)))
        }
    };
    let exact = if args.exact { Some(exact()?) } else { None };
    let rows = (0..=args.order)
        .map(|n| Ok(PeriodRow { n, period: series(n)?, exact }))
        .collect::<pms_core::Result<Vec<_>>>()?;
    let text = match args.output.format {
        Format::Json => to_json(&PeriodTable { model: name, rows }),
        Format::Csv => {
            let mut s = String::from(if args.exact { "n,period,exact\n" } else { "n,period\n" });
            for r in &rows {
                write!(s, "{},{}", r.n, fmt_f64(r.period)).unwrap();
                if let Some(e) = r.exact {
                    write!(s, ",{}", fmt_f64(e)).unwrap();
                }
                s.push('\n');
            }
            s
        }
    };
    emit(&args.output, &text)
}

fn check_orbit(orbit: &OrbitArgs) -> CliResult<(f64, f64, f64)> {
    let gm = orbit.gm();
    let eps = orbit.eccentricity;
    if !(gm > 0.0 && gm.is_finite()) {
        return Err(invalid(format!("GM must be positive, got {gm}")));
    }
    if !(0.0..1.0).contains(&eps) {
        return Err(invalid(format!("eccentricity must lie in [0, 1), got {eps}")));
    }
    Ok((gm, eps, critical_semimajor_axis(gm, eps)?))
}

fn cmd_convergence(args: &ConvergenceArgs) -> CliResult<()> {
    let out = &args.output;
    match args.study {
        Study::DuffingB0 => {
            let study = duffing_b0_study(args.max_order.unwrap_or(10))?;
            emit(out, &render(args.output.format, &study, || study.to_csv()))?;
            if let Some(fit) = &study.fit {
                report(out, &fit_line("fit", fit));
            }
            report(out, &format!("reference beta_pks={}", REFERENCE.duffing_beta_pks.value));
        }
        Study::DuffingRho => {
            let grid = log_grid(args.rho_min, args.rho_max, args.points)?;
            let r = duffing_error_vs_rho(args.order, &grid)?;
            emit(out, &render(args.output.format, &r, || r.study.to_csv()))?;
            report(
                out,
                &format!(
                    "asymptote={} max_error={} below_asymptote={}",
                    fmt_f64(r.asymptote),
                    fmt_f64(r.max_error),
                    r.below_asymptote
                ),
            );
        }
        Study::SexticC0 => {
            let study = sextic_c0_study(args.max_order.unwrap_or(16))?;
            emit(out, &render(args.output.format, &study, || study.to_csv()))?;
            if let Some(fit) = &study.fit {
                report(out, &fit_line("fit", fit));
            }
        }
        Study::NegativeRho => {
            check_rho(args.rho)?;
            let s = negative_rho_study(args.k, args.rho, args.max_order.unwrap_or(12))?;
            emit(out, &render(args.output.format, &s, || s.study.to_csv()))?;
            report(out, &fit_line("even", &s.even_fit));
            report(out, &fit_line("odd", &s.odd_fit));
            report(out, &format!("even_below_odd={}", s.even_below_odd));
        }
        Study::Precession => {
            let (gm, eps, a_c) = check_orbit(&args.orbit)?;
            let a_min = args.a_min.unwrap_or(1.05 * a_c);
            let a_max = args.a_max.unwrap_or(10.0 * a_c);
            if a_min <= a_c {
                return Err(below_critical(a_c));
            }
            if args.orders.is_empty() {
                return Err(invalid("--orders must list at least one order"));
            }
            let grid = log_grid(a_min, a_max, args.points)?;
            let study = precession_error_table(gm, eps, &grid, &args.orders)?;
            emit(out, &render(args.output.format, &study, || study.to_wide_csv()))?;
            report(out, &format!("a_c={}", fmt_f64(a_c)));
        }
    }
    Ok(())
}

fn render<T: Serialize>(format: Format, value: &T, csv: impl FnOnce() -> String) -> String {
    match format {
        Format::Csv => csv(),
        Format::Json => to_json(value),
    }
}

#[derive(Serialize)]
struct PrecessionRow {
    n: usize,
    series: f64,
    exact: Option<f64>,
}

#[derive(Serialize)]
struct PrecessionReport {
    a: f64,
    gm: f64,
    eccentricity: f64,
    a_c: f64,
    units: &'static str,
    extrapolation: bool,
    rows: Vec<PrecessionRow>,
}

fn cmd_precession(args: &PrecessionArgs) -> CliResult<()> {
    let (gm, eps, a_c) = check_orbit(&args.orbit)?;
    let orbit = OrbitParams::new(gm, args.a, eps)?;
    let below = args.a <= a_c;
    if below && !args.no_exact {
        return Err(below_critical(a_c));
    }
    let (convert, units): (fn(f64) -> f64, &'static str) = match args.units {
        Units::Arcsec => (to_arcsec, "arcsec"),
        Units::Rad => (|x| x, "rad"),
    };
    let exact = if args.no_exact { None } else { Some(convert(precession_exact(&orbit)?)) };
    let rows = (0..=args.order)
        .map(|n| match precession_series(&orbit, n) {
            Ok(v) => Ok(PrecessionRow { n, series: convert(v), exact }),
            Err(Error::BeyondCritical { .. }) => Err(below_critical(a_c)),
            Err(e) => Err(e.into()),
        })
        .collect::<CliResult<Vec<_>>>()?;
    let report = PrecessionReport { a: args.a, gm, eccentricity: eps, a_c, units, extrapolation: below, rows };
    let text = match args.output.format {
        Format::Json => to_json(&report),
        Format::Csv => {
            let mut s = format!("n,series_{units},exact_{units},extrapolation\n");
            for r in &report.rows {
                let e = r.exact.map(fmt_f64).unwrap_or_default();
                writeln!(s, "{},{},{},{}", r.n, fmt_f64(r.series), e, below).unwrap();
            }
            s
        }
    };
    emit(&args.output, &text)
}
