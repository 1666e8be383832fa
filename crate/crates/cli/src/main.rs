//! Command-line driver for the `chyp` library: evaluate a single quantity,
//! run a seeded verification suite, or sweep one parameter into a CSV table.
//!
//! Exit-code contract (stable, CI-friendly):
//!
//! * `0` — success (for `verify`: every check passed),
//! * `1` — `verify` ran to completion but at least one check failed
//!   (the report is still emitted),
//! * `2` — bad input: a violated precondition, pole, or domain error; the
//!   message names the violated constraint (also used by argument parsing),
//! * `3` — numerical failure (quadrature budget exhausted, series guard
//!   tripped, catastrophic conditioning).
//!
//! All output is deterministic: identical command lines (including `--seed`)
//! produce byte-identical reports. The environment variable `CHYP_THREADS`
//! caps the worker-thread count; parallel reductions are ordered, so the
//! thread count never changes the output bytes.

use std::path::PathBuf;
use std::process::ExitCode;

use chyp::geometry::pair_invariants_xy;
use chyp::modular::j_invariant;
use chyp::series::boundary::{poisson_kernel, scattering_partial};
use chyp::series::fourier::{fourier_a_m, fourier_b_m};
use chyp::series::kernel::kernel_x;
use chyp::series::poincare::poincare_partial;
use chyp::series::eisenstein_partial;
use chyp::specfun;
use chyp::{Error, QuadratureSpec, RadialKernel, Result, SeriesSpec, SiegelPoint, Truncation};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use num_rational::Rational64;
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "chyp",
    version,
    about = "Numerical automorphic-form machinery on complex hyperbolic space",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one quantity and emit a JSON (or CSV) record.
    Eval(EvalArgs),
    /// Run a verification suite and emit a machine-readable report.
    Verify(VerifyArgs),
    /// Sweep one parameter and emit a CSV table.
    Table(TableArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct EvalArgs {
    /// Quantity to evaluate: eisenstein | poincare | poisson | jinv |
    /// fourier-a | fourier-b | scattering | specfun.<name> with <name> one
    /// of gamma, ln-gamma, bessel-k, bessel-k-scaled, i0-scaled, gauss-2f1,
    /// appell-f3, whittaker-w, confluent-psi, ramanujan-phi, ramanujan-sum.
    quantity: String,

    /// Horizontal dimension n of the space (points carry their own n;
    /// this sets it where no point is given).
    #[arg(long, default_value_t = 1)]
    n: usize,

    /// Spectral parameter s as "re" or "re,im".
    #[arg(long, value_parser = parse_complex)]
    s: Option<Complex64>,

    /// First exponent of a two-variable kernel split, "re" or "re,im"
    /// (with --b; defaults to the midpoint split when omitted).
    #[arg(long, value_parser = parse_complex)]
    a: Option<Complex64>,

    /// Second exponent of a two-variable kernel split, "re" or "re,im".
    #[arg(long, value_parser = parse_complex)]
    b: Option<Complex64>,

    /// Weight k (even, ≥ 4) of a weighted series.
    #[arg(long)]
    k: Option<u32>,

    /// Index m as a rational, e.g. "1", "3/2" (Fourier modes need an
    /// integer).
    #[arg(long, value_parser = parse_rational)]
    m: Option<Rational64>,

    /// Exponent on the β-weight of the plain series.
    #[arg(long)]
    mu: Option<i32>,

    /// Interior point as JSON {"z":[[re,im],...],"zlast":[re,im]}.
    #[arg(long = "Z")]
    z: Option<String>,

    /// Second interior point, same JSON shape as --Z.
    #[arg(long = "Zp")]
    zp: Option<String>,

    /// Boundary point ζ on the real line.
    #[arg(long)]
    zeta: Option<f64>,

    /// Second boundary point η on the real line.
    #[arg(long)]
    eta: Option<f64>,

    /// Truncation box N for lattice sums (also the cutoff of divisor-type
    /// series).
    #[arg(long = "box", default_value_t = 1)]
    box_n: i64,

    /// Finite-difference step override (recorded in the report; evaluation
    /// quantities are quadrature- and series-based).
    #[arg(long)]
    h: Option<f64>,

    /// Quadrature tolerance override (sets both the absolute and relative
    /// targets).
    #[arg(long)]
    tol: Option<f64>,

    /// Random seed (recorded; evaluation itself is deterministic).
    #[arg(long)]
    seed: Option<u64>,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the report to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Positional argument for specfun.<name>, "re" or "re,im"; repeat the
    /// flag once per argument.
    #[arg(long = "args", value_parser = parse_complex)]
    args: Vec<Complex64>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite to run.
    #[arg(value_parser = ["operators", "fourier", "kernels", "boundary", "modular", "all"])]
    suite: String,

    /// Horizontal dimension n.
    #[arg(long, default_value_t = 1)]
    n: usize,

    /// Seed for the sampled checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Smaller sample counts and boxes.
    #[arg(long, default_value_t = false)]
    quick: bool,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the report to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TableArgs {
    /// Sweep to run: green-heights (wall-limit ratio vs height ρ′),
    /// eisenstein-box (partial sum vs truncation N), jinv-index (j vs
    /// index m on the degenerate slice).
    #[arg(value_parser = ["green-heights", "eisenstein-box", "jinv-index"])]
    sweep: String,

    /// Spectral parameter s as "re" or "re,im".
    #[arg(long, value_parser = parse_complex)]
    s: Option<Complex64>,

    /// Exponent on the β-weight (eisenstein-box).
    #[arg(long, default_value_t = 0)]
    mu: i32,

    /// Interior point as JSON {"z":[[re,im],...],"zlast":[re,im]}.
    #[arg(long = "Z")]
    z: Option<String>,

    /// Boundary point (green-heights).
    #[arg(long)]
    zeta: Option<f64>,

    /// Largest truncation box (eisenstein-box ranges N = 1..box;
    /// jinv-index evaluates at this box).
    #[arg(long = "box")]
    box_n: Option<i64>,

    /// Write the table to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_complex(text: &str) -> std::result::Result<Complex64, String> {
    let trimmed = text
        .trim()
        .trim_start_matches('(')
        .trim_end_matches(')')
        .trim();
    let mut parts = trimmed.split(',');
    let re = parts
        .next()
        .unwrap_or("")
        .trim()
        .parse::<f64>()
        .map_err(|e| format!("bad real part in {text:?}: {e}"))?;
    let im = match parts.next() {
        Some(p) => p
            .trim()
            .parse::<f64>()
            .map_err(|e| format!("bad imaginary part in {text:?}: {e}"))?,
        None => 0.0,
    };
    if parts.next().is_some() {
        return Err(format!("expected \"re\" or \"re,im\", got {text:?}"));
    }
    Ok(Complex64::new(re, im))
}

fn parse_rational(text: &str) -> std::result::Result<Rational64, String> {
    let trimmed = text.trim();
    let (num, den) = match trimmed.split_once('/') {
        Some((p, q)) => (p, q),
        None => (trimmed, "1"),
    };
    let p = num
        .trim()
        .parse::<i64>()
        .map_err(|e| format!("bad numerator in {text:?}: {e}"))?;
    let q = den
        .trim()
        .parse::<i64>()
        .map_err(|e| format!("bad denominator in {text:?}: {e}"))?;
    if q == 0 {
        return Err(format!("zero denominator in {text:?}"));
    }
    Ok(Rational64::new(p, q))
}

fn need<T>(value: Option<T>, flag: &str, quantity: &str) -> Result<T> {
    value.ok_or_else(|| {
        Error::precondition(format!("{quantity} requires --{flag}"))
    })
}

fn parse_point(text: &str) -> Result<SiegelPoint> {
    serde_json::from_str(text)
        .map_err(|e| Error::precondition(format!("point JSON: {e}")))
}

fn real_arg(value: Complex64, what: &str) -> Result<f64> {
    if value.im != 0.0 {
        return Err(Error::precondition(format!("{what} must be real")));
    }
    Ok(value.re)
}

fn integer_arg(value: Complex64, what: &str) -> Result<i64> {
    let re = real_arg(value, what)?;
    if re.fract() != 0.0 || !re.is_finite() {
        return Err(Error::precondition(format!("{what} must be an integer")));
    }
    Ok(re as i64)
}

fn fixed_args<'a>(args: &'a [Complex64], want: usize, name: &str) -> Result<&'a [Complex64]> {
    if args.len() != want {
        return Err(Error::precondition(format!(
            "specfun.{name} takes exactly {want} --args occurrence(s), got {}",
            args.len()
        )));
    }
    Ok(args)
}

/// What one `eval` produced, with the numerical metadata it consumed.
struct EvalOutcome {
    value: Complex64,
    truncation: Option<Truncation>,
    quadrature: Option<QuadratureSpec>,
}

fn configure_threads() {
    if let Ok(raw) = std::env::var("CHYP_THREADS") {
        if let Ok(k) = raw.trim().parse::<usize>() {
            if k >= 1 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(k)
                    .build_global();
            }
        }
    }
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    let run = match cli.command {
        Command::Eval(args) => cmd_eval(&args),
        Command::Verify(args) => cmd_verify(&args),
        Command::Table(args) => cmd_table(&args),
    };
    match run {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_input_error() {
                ExitCode::from(2)
            } else {
                ExitCode::from(3)
            }
        }
    }
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Domain(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn complex_json(value: Complex64) -> serde_json::Value {
    json!([value.re, value.im])
}

fn opt_complex_json(value: Option<Complex64>) -> serde_json::Value {
    value.map(complex_json).unwrap_or(serde_json::Value::Null)
}

fn cmd_eval(args: &EvalArgs) -> Result<ExitCode> {
    let quad = match args.tol {
        Some(tol) => {
            if !(tol > 0.0) {
                return Err(Error::precondition("--tol must be positive"));
            }
            QuadratureSpec {
                abs_tol: tol,
                rel_tol: tol,
                ..QuadratureSpec::default()
            }
        }
        None => QuadratureSpec::default(),
    };
    let outcome = dispatch_eval(args, &quad)?;

    let text = match args.format {
        Format::Json => {
            let z_echo = match &args.z {
                Some(raw) => serde_json::to_value(parse_point(raw)?)
                    .map_err(|e| Error::Domain(format!("serialize: {e}")))?,
                None => serde_json::Value::Null,
            };
            let zp_echo = match &args.zp {
                Some(raw) => serde_json::to_value(parse_point(raw)?)
                    .map_err(|e| Error::Domain(format!("serialize: {e}")))?,
                None => serde_json::Value::Null,
            };
            let report = json!({
                "quantity": args.quantity,
                "value": complex_json(outcome.value),
                "inputs": {
                    "n": args.n,
                    "s": opt_complex_json(args.s),
                    "a": opt_complex_json(args.a),
                    "b": opt_complex_json(args.b),
                    "k": args.k,
                    "m": args.m.map(|m| m.to_string()),
                    "mu": args.mu,
                    "Z": z_echo,
                    "Zp": zp_echo,
                    "zeta": args.zeta,
                    "eta": args.eta,
                    "box": args.box_n,
                    "h": args.h,
                    "tol": args.tol,
                    "seed": args.seed,
                    "args": args.args.iter().map(|&c| complex_json(c)).collect::<Vec<_>>(),
                },
                "truncation": outcome.truncation.map(|t| json!({
                    "box_n": t.box_n,
                    "include_permutations": t.include_permutations,
                })).unwrap_or(serde_json::Value::Null),
                "quadrature": outcome.quadrature.map(|q| json!({
                    "abs_tol": q.abs_tol,
                    "rel_tol": q.rel_tol,
                    "max_subdiv": q.max_subdiv,
                })).unwrap_or(serde_json::Value::Null),
            });
            serde_json::to_string_pretty(&report)
                .map_err(|e| Error::Domain(format!("serialize: {e}")))?
        }
        Format::Csv => format!(
            "quantity,value_re,value_im\n{},{},{}",
            args.quantity, outcome.value.re, outcome.value.im
        ),
    };
    emit(&text, &args.out)?;
    Ok(ExitCode::SUCCESS)
}

fn dispatch_eval(args: &EvalArgs, quad: &QuadratureSpec) -> Result<EvalOutcome> {
    let q = args.quantity.as_str();
    match q {
        "eisenstein" => {
            let z = parse_point(&need(args.z.clone(), "Z", q)?)?;
            let s = need(args.s, "s", q)?;
            let mu = args.mu.unwrap_or(0);
            let tr = Truncation::new(args.box_n)?;
            let value = eisenstein_partial(&z, s, mu, &tr)?;
            Ok(EvalOutcome { value, truncation: Some(tr), quadrature: None })
        }
        "poincare" => {
            let z = parse_point(&need(args.z.clone(), "Z", q)?)?;
            let zp = parse_point(&need(args.zp.clone(), "Zp", q)?)?;
            let s = need(args.s, "s", q)?;
            let split = match (args.a, args.b) {
                (Some(a), Some(b)) => Some((a, b)),
                (None, None) => None,
                _ => {
                    return Err(Error::precondition(
                        "--a and --b must be given together",
                    ))
                }
            };
            let tr = Truncation::new(args.box_n)?;
            let value = poincare_partial(&z, &zp, s, split, RadialKernel::TwoVariable, &tr)?;
            Ok(EvalOutcome { value, truncation: Some(tr), quadrature: None })
        }
        "poisson" => {
            let z = parse_point(&need(args.z.clone(), "Z", q)?)?;
            let zeta = need(args.zeta, "zeta", q)?;
            let value = Complex64::new(poisson_kernel(&z, zeta), 0.0);
            Ok(EvalOutcome { value, truncation: None, quadrature: None })
        }
        "jinv" => {
            let z = parse_point(&need(args.z.clone(), "Z", q)?)?;
            let m = args.m.unwrap_or(Rational64::new(1, 1));
            let tr = Truncation::new(args.box_n)?;
            let value = j_invariant(&z, m, &tr)?;
            Ok(EvalOutcome { value, truncation: Some(tr), quadrature: None })
        }
        "scattering" => {
            let zeta = need(args.zeta, "zeta", q)?;
            let eta = need(args.eta, "eta", q)?;
            let s = need(args.s, "s", q)?;
            let tr = Truncation::new(args.box_n)?;
            let value = scattering_partial(args.n, zeta, eta, s, &tr)?;
            Ok(EvalOutcome { value, truncation: Some(tr), quadrature: None })
        }
        "fourier-a" | "fourier-b" => {
            let z = parse_point(&need(args.z.clone(), "Z", q)?)?;
            let s = need(args.s, "s", q)?;
            let m = need(args.m, "m", q)?;
            if !m.is_integer() {
                return Err(Error::precondition(
                    "Fourier modes take an integer --m",
                ));
            }
            if args.box_n < 1 {
                return Err(Error::precondition("--box must be at least 1"));
            }
            let cutoff = args.box_n as u64;
            let mode = m.to_integer();
            let value = if q == "fourier-a" {
                fourier_a_m(mode, z.rho(), s, z.n(), cutoff, quad)?
            } else {
                fourier_b_m(mode, z.rho(), s, z.n(), cutoff, quad)?
            };
            Ok(EvalOutcome {
                value,
                truncation: Some(Truncation::new(args.box_n)?),
                quadrature: Some(*quad),
            })
        }
        _ => match q.strip_prefix("specfun.") {
            Some(name) => dispatch_specfun(name, args, quad),
            None => Err(Error::precondition(format!(
                "unknown quantity {q:?}; see `chyp eval --help`"
            ))),
        },
    }
}

fn dispatch_specfun(name: &str, args: &EvalArgs, quad: &QuadratureSpec) -> Result<EvalOutcome> {
    let a = &args.args;
    let series = SeriesSpec::default();
    let mut quadrature = None;
    let value = match name {
        "gamma" => specfun::gamma(fixed_args(a, 1, name)?[0])?,
        "ln-gamma" => specfun::ln_gamma(fixed_args(a, 1, name)?[0])?,
        "bessel-k" => {
            let v = fixed_args(a, 2, name)?;
            quadrature = Some(*quad);
            specfun::bessel_k(v[0], v[1], quad)?
        }
        "bessel-k-scaled" => {
            let v = fixed_args(a, 2, name)?;
            quadrature = Some(*quad);
            specfun::bessel_k_scaled(v[0], real_arg(v[1], "the argument")?, quad)?
        }
        "i0-scaled" => {
            let v = fixed_args(a, 1, name)?;
            let x = real_arg(v[0], "the argument")?;
            if x < 0.0 {
                return Err(Error::precondition("the argument must be ≥ 0"));
            }
            Complex64::new(specfun::i0_scaled(x), 0.0)
        }
        "gauss-2f1" => {
            let v = fixed_args(a, 4, name)?;
            specfun::gauss_2f1(v[0], v[1], v[2], v[3], &series)?
        }
        "appell-f3" => {
            let v = fixed_args(a, 7, name)?;
            specfun::appell_f3(v[0], v[1], v[2], v[3], v[4], v[5], v[6], &series)?
        }
        "whittaker-w" => {
            let v = fixed_args(a, 3, name)?;
            quadrature = Some(*quad);
            specfun::whittaker_w(v[0], v[1], real_arg(v[2], "the argument")?, quad)?
        }
        "confluent-psi" => {
            let v = fixed_args(a, 3, name)?;
            quadrature = Some(*quad);
            specfun::confluent_psi(v[0], v[1], v[2], quad)?
        }
        "ramanujan-phi" => {
            let v = fixed_args(a, 2, name)?;
            let m = integer_arg(v[0], "the mode")?;
            if args.box_n < 1 {
                return Err(Error::precondition("--box must be at least 1"));
            }
            specfun::ramanujan_phi(m, v[1], args.box_n as u64)?
        }
        "ramanujan-sum" => {
            let v = fixed_args(a, 2, name)?;
            let q = integer_arg(v[0], "the modulus")?;
            if q < 1 {
                return Err(Error::precondition("the modulus must be ≥ 1"));
            }
            let m = integer_arg(v[1], "the mode")?;
            Complex64::new(specfun::ramanujan_sum(q as u64, m)? as f64, 0.0)
        }
        _ => {
            return Err(Error::precondition(format!(
                "unknown special function {name:?}; see `chyp eval --help`"
            )))
        }
    };
    Ok(EvalOutcome { value, truncation: None, quadrature })
}

fn cmd_verify(args: &VerifyArgs) -> Result<ExitCode> {
    let reports = match args.suite.as_str() {
        "operators" => chyp::suites::operators_suite(args.n, args.seed, args.quick)?,
        "fourier" => chyp::suites::fourier_suite(args.n, args.seed, args.quick)?,
        "kernels" => chyp::suites::kernels_suite(args.n, args.seed, args.quick)?,
        "boundary" => chyp::suites::boundary_suite(args.n, args.seed, args.quick)?,
        "modular" => chyp::suites::modular_suite(args.n, args.seed, args.quick)?,
        "all" => chyp::suites::all_suites(args.n, args.seed, args.quick)?,
        other => {
            return Err(Error::precondition(format!("unknown suite {other:?}")))
        }
    };
    let all_pass = reports.iter().all(|r| r.pass);

    let text = match args.format {
        Format::Json => {
            let report = json!({
                "suite": args.suite,
                "n": args.n,
                "seed": args.seed,
                "quick": args.quick,
                "pass": all_pass,
                "checks": reports,
            });
            serde_json::to_string_pretty(&report)
                .map_err(|e| Error::Domain(format!("serialize: {e}")))?
        }
        Format::Csv => {
            let mut lines = vec![
                "check,identity,points,max_residual,tolerance,pass".to_string(),
            ];
            for r in &reports {
                lines.push(format!(
                    "{},{:?},{},{},{},{}",
                    r.check, r.identity, r.points, r.max_residual, r.tolerance, r.pass
                ));
            }
            lines.join("\n")
        }
    };
    emit(&text, &args.out)?;
    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_table(args: &TableArgs) -> Result<ExitCode> {
    let sweep = args.sweep.as_str();
    let text = match sweep {
        "green-heights" => {
            let z = parse_point(&need(args.z.clone(), "Z", sweep)?)?;
            let tprime = need(args.zeta, "zeta", sweep)?;
            let s = need(args.s, "s", sweep)?;
            let p = poisson_kernel(&z, tprime);
            if !(p > 0.0) {
                return Err(Error::Pole(
                    "the interior point projects onto the boundary point".into(),
                ));
            }
            let p_pow = Complex64::from(p).powc(s);
            let mut lines = vec!["rho_prime,ratio_re,ratio_im".to_string()];
            for &rho_prime in &[1e-3, 1e-4, 1e-5] {
                let zeros = vec![Complex64::default(); z.n()];
                let zp = SiegelPoint::from_chart(zeros, tprime, rho_prime)?;
                let (x, _) = pair_invariants_xy(&z, &zp);
                let ratio =
                    Complex64::from(rho_prime).powc(-s) * kernel_x(z.n(), s, x)? / p_pow;
                lines.push(format!("{rho_prime},{},{}", ratio.re, ratio.im));
            }
            lines.join("\n")
        }
        "eisenstein-box" => {
            let z = parse_point(&need(args.z.clone(), "Z", sweep)?)?;
            let s = need(args.s, "s", sweep)?;
            let top = args.box_n.unwrap_or(8);
            let mut lines = vec!["box,value_re,value_im".to_string()];
            for box_n in 1..=top {
                let v = eisenstein_partial(&z, s, args.mu, &Truncation::new(box_n)?)?;
                lines.push(format!("{box_n},{},{}", v.re, v.im));
            }
            lines.join("\n")
        }
        "jinv-index" => {
            let z = parse_point(&need(args.z.clone(), "Z", sweep)?)?;
            let tr = Truncation::new(args.box_n.unwrap_or(100))?;
            let mut lines = vec!["m,j_re,j_im".to_string()];
            for m in [
                Rational64::new(1, 1),
                Rational64::new(1, 2),
                Rational64::new(3, 2),
                Rational64::new(2, 1),
                Rational64::new(5, 3),
                Rational64::new(3, 1),
            ] {
                let v = j_invariant(&z, m, &tr)?;
                lines.push(format!("{m},{},{}", v.re, v.im));
            }
            lines.join("\n")
        }
        other => return Err(Error::precondition(format!("unknown sweep {other:?}"))),
    };
    emit(&text, &args.out)?;
    Ok(ExitCode::SUCCESS)
}
