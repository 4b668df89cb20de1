//! Command-line front end.
//!
//! Exit codes: `0` success or property holds, `1` property violated,
//! `2` usage or parse error, `3` numeric failure (domain error, no root).

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::calculus::{directional_derivative, laplacian};
use crate::exactpoly::{self, parse_rational, RationalPolynomial};
use crate::expr::{parse, Expr};
use crate::integrate::rng::parse_seed;
use crate::mvp::{
    self, builtin_catalog, builtin_field, BoxDomain, McCheckConfig, PropertyVerdict, WeightSpec,
};
use crate::mvroot::{self, Interval};
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "mvlab", version, about = "Mean value abscissas and weighted mean value property checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct Output {
    /// Output format (csv is only available for sweep)
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct FnArg {
    /// Function text, e.g. "x^2 + 3*x"
    #[arg(long = "fn", value_name = "TEXT")]
    function: String,
}

#[derive(Debug, Args)]
struct OneDimCheck {
    #[command(flatten)]
    f: FnArg,
    /// Left end of the sampling domain
    #[arg(long, default_value_t = -2.0, allow_negative_numbers = true)]
    a: f64,
    /// Right end of the sampling domain
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    b: f64,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, default_value = "0", value_parser = seed_arg)]
    seed: u64,
    /// Relative residual tolerance (checker default when omitted)
    #[arg(long)]
    tol: Option<f64>,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct BallArgs {
    /// Function text; alternatively --builtin
    #[arg(long = "fn", value_name = "TEXT", required_unless_present = "builtin")]
    function: Option<String>,
    /// Built-in field name (see `builtins`)
    #[arg(long, conflicts_with = "function")]
    builtin: Option<String>,
    #[arg(long, default_value_t = 2)]
    dim: usize,
    /// Weight in (0, 1), decimal or p/q
    #[arg(long, default_value = "1/2")]
    lambda: String,
    /// Unit offset direction, comma separated (defaults to the last axis)
    #[arg(long, allow_negative_numbers = true)]
    v: Option<String>,
    /// Lower corner of the center box (every coordinate)
    #[arg(long, default_value_t = -2.0, allow_negative_numbers = true)]
    a: f64,
    /// Upper corner of the center box (every coordinate)
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    b: f64,
    #[arg(long, default_value_t = 0.1)]
    hmin: f64,
    #[arg(long, default_value_t = 1.0)]
    hmax: f64,
    #[arg(long, default_value_t = 20)]
    trials: usize,
    #[arg(long, default_value_t = 200_000)]
    samples: usize,
    #[arg(long, default_value = "0", value_parser = seed_arg)]
    seed: u64,
    /// Absolute floor of the per-trial threshold max(tol, 4·stderr)
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Worker threads for sampling; 1 keeps results bit-reproducible
    /// against the sequential sampler
    #[arg(long, default_value_t = 1)]
    threads: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct PointwiseArgs {
    #[command(flatten)]
    f: FnArg,
    #[arg(long, default_value_t = 2)]
    dim: usize,
    /// Evaluate at this single point instead of checking random points
    #[arg(long, allow_negative_numbers = true)]
    at: Option<String>,
    #[arg(long, default_value_t = -2.0, allow_negative_numbers = true)]
    a: f64,
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    b: f64,
    /// Number of random points
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value = "0", value_parser = seed_arg)]
    seed: u64,
    #[arg(long, default_value_t = mvp::POINTWISE_TOL)]
    tol: f64,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a function and print its canonical, fully parenthesized form
    Parse {
        #[command(flatten)]
        f: FnArg,
        #[command(flatten)]
        output: Output,
    },
    /// Find every c in (a, b) with f'(c) = (f(b) - f(a))/(b - a) and its
    /// weight λ = (b - c)/(b - a)
    Abscissa {
        #[command(flatten)]
        f: FnArg,
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        #[arg(long, default_value_t = mvroot::DEFAULT_GRID)]
        grid: usize,
        #[arg(long, default_value_t = mvroot::DEFAULT_TOL)]
        tol: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Track the abscissa nearest the midpoint of [x0 - h, x0 + h] as h
    /// shrinks and fit its convergence order
    Sweep {
        #[command(flatten)]
        f: FnArg,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        x0: f64,
        #[arg(long, default_value_t = 1e-3)]
        hmin: f64,
        #[arg(long, default_value_t = 1e-1)]
        hmax: f64,
        #[arg(long, default_value_t = 20)]
        steps: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Check (f(b) - f(a))/(b - a) = f'((a + b)/2) on random intervals
    CheckMidpoint {
        #[command(flatten)]
        check: OneDimCheck,
    },
    /// Check (f(b) - f(a))/(b - a) = f'(λa + (1 - λ)b) on random intervals
    CheckWeighted {
        /// Weight in (0, 1), decimal or p/q
        #[arg(long)]
        lambda: String,
        #[command(flatten)]
        check: OneDimCheck,
    },
    /// Check f'(x + (1 - 2λ)h) = (1/2h)·∫ f'(t) dt over [x - h, x + h]
    CheckInterval {
        #[arg(long)]
        lambda: String,
        #[command(flatten)]
        check: OneDimCheck,
    },
    /// Decide exactly whether p(b) - p(a) - (b - a)·p'(λa + (1 - λ)b)
    /// vanishes identically for a rational polynomial p
    PolyVerify {
        /// Coefficients, lowest degree first, e.g. "1,2,3" or "1/2,-1/3"
        #[arg(long, allow_negative_numbers = true)]
        coeffs: String,
        #[arg(long)]
        lambda: String,
        #[command(flatten)]
        output: Output,
    },
    /// Abscissa ratio c/b = (k+1)^(-1/k) for x^(k+1) on [0, b] with the
    /// left endpoint fixed
    LambdaFamily {
        /// Single k in 1..=20 (all of them when omitted)
        #[arg(long)]
        k: Option<u32>,
        #[command(flatten)]
        output: Output,
    },
    /// Check g(x + (1 - 2λ)h·v) = average of g over the ball B_h(x)
    BallCheck {
        #[command(flatten)]
        args: BallArgs,
    },
    /// Check g(x + (1 - 2λ)h·v) = average of g over the sphere ∂B_h(x)
    SphereCheck {
        #[command(flatten)]
        args: BallArgs,
    },
    /// Check that the Laplacian Σ ∂²g/∂xᵢ² vanishes (or evaluate it with --at)
    Laplacian {
        #[command(flatten)]
        args: PointwiseArgs,
    },
    /// Check that ∂g/∂v = ∇g·v vanishes (or evaluate it with --at)
    Vderiv {
        /// Unit direction, comma separated
        #[arg(long, allow_negative_numbers = true)]
        v: String,
        #[command(flatten)]
        args: PointwiseArgs,
    },
    /// List the built-in fields for a dimension
    Builtins {
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// Show a single field
        #[arg(long)]
        name: Option<String>,
        #[command(flatten)]
        output: Output,
    },
}

fn seed_arg(s: &str) -> std::result::Result<u64, String> {
    parse_seed(s).ok_or_else(|| format!("'{s}' is not a decimal or 0x-hex u64"))
}

fn parse_reals(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::invalid(format!("'{t}' is not a number")))
        })
        .collect()
}

fn parse_lambda(text: &str) -> Result<f64> {
    Ok(exactpoly::to_f64(&parse_rational(text)?))
}

fn parse_fn(text: &str) -> Result<Expr> {
    Ok(parse(text)?)
}

/// What a subcommand produced: the text to emit and its exit code.
struct Report {
    text: String,
    code: i32,
}

impl Report {
    fn json<T: Serialize>(value: &T, code: i32) -> Result<Report> {
        let mut text = serde_json::to_string_pretty(value)
            .map_err(|e| Error::invalid(format!("serialization failed: {e}")))?;
        text.push('\n');
        Ok(Report { text, code })
    }

    fn verdict<T: Serialize>(context: T, verdict: &PropertyVerdict) -> Result<Report> {
        #[derive(Serialize)]
        struct WithContext<'a, T> {
            #[serde(flatten)]
            context: T,
            #[serde(flatten)]
            verdict: &'a PropertyVerdict,
        }
        let code = if verdict.holds { EXIT_OK } else { EXIT_VIOLATED };
        Report::json(&WithContext { context, verdict }, code)
    }
}

fn json_only(output: &Output) -> Result<()> {
    if output.format == Format::Csv {
        return Err(Error::invalid("csv output is only available for sweep"));
    }
    Ok(())
}

/// Run with full `argv` (including the program name); returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout(), &mut std::io::stderr())
}

/// [`run`] with explicit output streams.
pub fn run_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let informational = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let rendered = e.render().to_string();
            if informational {
                let _ = write!(stdout, "{rendered}");
                return EXIT_OK;
            }
            let _ = write!(stderr, "{rendered}");
            return EXIT_USAGE;
        }
    };
    let out_path = output_of(&cli.command).out.clone();
    match execute(cli.command) {
        Ok(report) => {
            let written = match out_path {
                Some(path) => std::fs::write(&path, &report.text)
                    .map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => stdout.write_all(report.text.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => report.code,
                Err(msg) => {
                    let _ = writeln!(stderr, "{}", json!({ "error": "io", "message": msg }));
                    EXIT_NUMERIC
                }
            }
        }
        Err(e) => {
            let (kind, code) = if e.is_usage() {
                ("usage", EXIT_USAGE)
            } else {
                ("numeric", EXIT_NUMERIC)
            };
            let _ = writeln!(stderr, "{}", json!({ "error": kind, "message": e.to_string() }));
            code
        }
    }
}

fn output_of(cmd: &Command) -> &Output {
    match cmd {
        Command::Parse { output, .. }
        | Command::Abscissa { output, .. }
        | Command::Sweep { output, .. }
        | Command::PolyVerify { output, .. }
        | Command::LambdaFamily { output, .. }
        | Command::Builtins { output, .. } => output,
        Command::CheckMidpoint { check }
        | Command::CheckWeighted { check, .. }
        | Command::CheckInterval { check, .. } => &check.output,
        Command::BallCheck { args } | Command::SphereCheck { args } => &args.output,
        Command::Laplacian { args } | Command::Vderiv { args, .. } => &args.output,
    }
}

fn execute(cmd: Command) -> Result<Report> {
    if !matches!(cmd, Command::Sweep { .. }) {
        json_only(output_of(&cmd))?;
    }
    match cmd {
        Command::Parse { f, .. } => {
            let ast = parse_fn(&f.function)?;
            Report::json(
                &json!({
                    "input": f.function,
                    "canonical": ast.to_canonical(),
                    "max_variable": ast.max_var(),
                }),
                EXIT_OK,
            )
        }
        Command::Abscissa { f, a, b, grid, tol, .. } => {
            let ast = parse_fn(&f.function)?;
            let res = mvroot::find_abscissas(&ast, Interval::new(a, b)?, grid, tol)?;
            Report::json(
                &json!({ "function": ast.to_canonical(), "result": res }),
                EXIT_OK,
            )
        }
        Command::Sweep { f, x0, hmin, hmax, steps, output } => {
            let ast = parse_fn(&f.function)?;
            let table = mvroot::sweep_lambda(&ast, x0, hmin, hmax, steps)?;
            let fit = json!({
                "function": ast.to_canonical(),
                "x0": x0,
                "fitted_order": table.fitted_order,
                "lambda_order": table.lambda_order,
            });
            match output.format {
                Format::Csv => Ok(Report {
                    text: format!("{}# {}\n", table.to_csv(), fit),
                    code: EXIT_OK,
                }),
                Format::Json => Report::json(
                    &json!({
                        "function": ast.to_canonical(),
                        "x0": x0,
                        "rows": table.rows,
                        "fitted_order": table.fitted_order,
                        "lambda_order": table.lambda_order,
                    }),
                    EXIT_OK,
                ),
            }
        }
        Command::CheckMidpoint { check } => one_dim(check, "1/2", false),
        Command::CheckWeighted { lambda, check } => one_dim(check, &lambda, false),
        Command::CheckInterval { lambda, check } => one_dim(check, &lambda, true),
        Command::PolyVerify { coeffs, lambda, .. } => {
            let cs = coeffs
                .split(',')
                .map(parse_rational)
                .collect::<Result<Vec<_>>>()?;
            let p = RationalPolynomial::from_coeffs(cs);
            let lam = parse_rational(&lambda)?;
            let c = exactpoly::classify(&p, &lam)?;
            let predicted = exactpoly::predicted_to_satisfy(&p, &lam);
            Report::json(
                &json!({
                    "property": "weighted_secant_identity",
                    "polynomial": p.to_string(),
                    "lambda": lam.to_string(),
                    "satisfies": c.satisfies,
                    "predicted": predicted,
                    "residual": c.residual.display(),
                    "residual_expanded": c.residual.poly.to_string(),
                }),
                if c.satisfies { EXIT_OK } else { EXIT_VIOLATED },
            )
        }
        Command::LambdaFamily { k, .. } => match k {
            Some(k) => Report::json(&exactpoly::lambda_family(k)?, EXIT_OK),
            None => {
                let all = (1..=20)
                    .map(exactpoly::lambda_family)
                    .collect::<Result<Vec<_>>>()?;
                Report::json(&all, EXIT_OK)
            }
        },
        Command::BallCheck { args } => mc_check(args, false),
        Command::SphereCheck { args } => mc_check(args, true),
        Command::Laplacian { args } => {
            let g = parse_fn(&args.f.function)?;
            if let Some(at) = &args.at {
                let p = parse_reals(at)?;
                let value = laplacian(&g, &p)?;
                return Report::json(
                    &json!({ "function": g.to_canonical(), "point": p, "laplacian": value }),
                    EXIT_OK,
                );
            }
            let dom = BoxDomain::new(args.a, args.b, args.dim)?;
            let v = mvp::check_harmonicity(&g, dom, args.trials, args.seed, args.tol)?;
            Report::verdict(json!({ "function": g.to_canonical(), "dim": args.dim }), &v)
        }
        Command::Vderiv { v, args } => {
            let g = parse_fn(&args.f.function)?;
            let dir = parse_reals(&v)?;
            if let Some(at) = &args.at {
                let p = parse_reals(at)?;
                let value = directional_derivative(&g, &p, &dir)?;
                return Report::json(
                    &json!({ "function": g.to_canonical(), "point": p, "v": dir, "derivative": value }),
                    EXIT_OK,
                );
            }
            if dir.len() != args.dim {
                return Err(Error::invalid(format!(
                    "--v has {} components for --dim {}",
                    dir.len(),
                    args.dim
                )));
            }
            let dom = BoxDomain::new(args.a, args.b, args.dim)?;
            let verdict = mvp::check_v_constancy(&g, &dir, dom, args.trials, args.seed, args.tol)?;
            Report::verdict(
                json!({ "function": g.to_canonical(), "dim": args.dim, "v": dir }),
                &verdict,
            )
        }
        Command::Builtins { dim, name, .. } => match name {
            Some(name) => Report::json(&builtin_field(&name, dim)?, EXIT_OK),
            None => Report::json(&builtin_catalog(dim), EXIT_OK),
        },
    }
}

fn one_dim(check: OneDimCheck, lambda_text: &str, integral: bool) -> Result<Report> {
    let f = parse_fn(&check.f.function)?;
    let lambda = parse_lambda(lambda_text)?;
    let domain = Interval::new(check.a, check.b)?;
    let verdict = if integral {
        let tol = check.tol.unwrap_or(mvp::INTERVAL_TOL);
        mvp::check_interval_mvp(&f, lambda, check.trials, domain, check.seed, tol)?
    } else {
        let tol = check.tol.unwrap_or(mvp::WEIGHTED_TOL);
        mvp::check_weighted_property(&f, lambda, check.trials, domain, check.seed, tol)?
    };
    Report::verdict(
        json!({ "function": f.to_canonical(), "lambda": lambda, "domain": domain }),
        &verdict,
    )
}

fn mc_check(args: BallArgs, sphere: bool) -> Result<Report> {
    let g = match (&args.function, &args.builtin) {
        (Some(text), _) => parse_fn(text)?,
        (None, Some(name)) => builtin_field(name, args.dim)?.expr,
        (None, None) => return Err(Error::invalid("one of --fn or --builtin is required")),
    };
    let lambda = parse_lambda(&args.lambda)?;
    let v = match &args.v {
        Some(text) => parse_reals(text)?,
        None => {
            let mut e = vec![0.0; args.dim];
            if let Some(last) = e.last_mut() {
                *last = 1.0;
            }
            e
        }
    };
    let w = WeightSpec::new(lambda, v)?;
    let mut cfg = McCheckConfig::new(args.dim)?;
    cfg.domain = BoxDomain::new(args.a, args.b, args.dim)?;
    cfg.trials = args.trials;
    cfg.h_min = args.hmin;
    cfg.h_max = args.hmax;
    cfg.samples = args.samples;
    cfg.seed = args.seed;
    cfg.tol_abs = args.tol;
    cfg.threads = args.threads.max(1);
    let verdict = if sphere {
        mvp::check_sphere_mvp(&g, &w, &cfg)?
    } else {
        mvp::check_ball_mvp(&g, &w, &cfg)?
    };
    Report::verdict(
        json!({
            "function": g.to_canonical(),
            "dim": args.dim,
            "lambda": lambda,
            "v": w.v,
            "samples": args.samples,
        }),
        &verdict,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("mvlab").chain(args.iter().copied());
        let code = run_with(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_capture(&[]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["nope"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["parse", "--fn", "2x"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["check-weighted", "--fn", "x", "--lambda", "3/2"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["parse", "--fn", "x", "--format", "csv"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["ball-check", "--fn", "x", "--seed", "zz"]).0, EXIT_USAGE);
    }

    #[test]
    fn help_exits_0() {
        let (code, out, _) = run_capture(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("ball-check"));
    }

    #[test]
    fn numeric_failure_exits_3() {
        let (code, _, err) = run_capture(&["abscissa", "--fn", "log(x)", "--a", "-1", "--b", "1"]);
        assert_eq!(code, EXIT_NUMERIC);
        assert!(err.contains("\"numeric\""));
        let (code, _, _) = run_capture(&["abscissa", "--fn", "sin(40*x)/40 + x^3", "--a", "-1", "--b", "1", "--grid", "1"]);
        assert_eq!(code, EXIT_NUMERIC);
    }

    #[test]
    fn parse_prints_canonical_form() {
        let (code, out, _) = run_capture(&["parse", "--fn", "x^2 + 3*y"]);
        assert_eq!(code, EXIT_OK);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["canonical"], "((x1^2)+(3*x2))");
        assert_eq!(v["max_variable"], 2);
    }
}
