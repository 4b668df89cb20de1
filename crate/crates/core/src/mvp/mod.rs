//! Randomized checkers for the (weighted) mean value properties.
//!
//! One dimension:
//!
//! ```text
//! (f(b) − f(a))/(b − a) = f′(λa + (1 − λ)b)                  (secant form)
//! f′(x + (1 − 2λ)h) = (1/2h) ∫_{x−h}^{x+h} f′(t) dt          (integral form)
//! ```
//!
//! `n` dimensions, for a unit direction `v`:
//!
//! ```text
//! g(x + (1 − 2λ)h·v) = average of g over the ball   B_h(x)
//! g(x + (1 − 2λ)h·v) = average of g over the sphere ∂B_h(x)
//! ```
//!
//! Checkers sample intervals or balls from a seeded stream and report a
//! [`PropertyVerdict`]. They can only falsify: a verdict that holds means
//! no violation was seen at the tested scale and tolerance.

mod builtins;

pub use builtins::{builtin_catalog, builtin_field, harmonic2d_text, BuiltinField};

use rand::Rng;
use serde::Serialize;

use crate::calculus::{check_unit, derivative, directional_derivative, laplacian};
use crate::expr::{eval, Expr};
use crate::integrate::rng::{mix, stream, Stream};
use crate::integrate::{
    integrate_fn, mc_average, mc_average_chunked, BallSpec, McEstimate, Region, DEFAULT_NODES,
    DEFAULT_PANELS,
};
use crate::mvroot::{average_slope, Interval};
use crate::{Error, Result};

pub const MAX_COUNTEREXAMPLES: usize = 10;
pub const WEIGHTED_TOL: f64 = 1e-9;
pub const INTERVAL_TOL: f64 = 1e-8;
pub const POINTWISE_TOL: f64 = 1e-8;
/// Monte Carlo trials fail when `|residual| > max(tol_abs, SIGMAS·stderr)`.
pub const SIGMAS: f64 = 4.0;
pub const MIN_MC_SAMPLES: usize = 10_000;

pub const HOLDS_NOTE: &str = "no violation at tested scale/tolerance";
pub const VIOLATED_NOTE: &str = "violated";

/// Weight `λ ∈ (0, 1)` and, in `n` dimensions, the unit offset direction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightSpec {
    pub lambda: f64,
    pub v: Vec<f64>,
}

impl WeightSpec {
    /// One-dimensional weight.
    pub fn scalar(lambda: f64) -> Result<Self> {
        check_lambda(lambda)?;
        Ok(WeightSpec { lambda, v: vec![] })
    }

    pub fn new(lambda: f64, v: Vec<f64>) -> Result<Self> {
        check_lambda(lambda)?;
        check_unit(&v)?;
        Ok(WeightSpec { lambda, v })
    }

    /// `x + (1 − 2λ)h·v`.
    pub fn offset_point(&self, x: &[f64], h: f64) -> Vec<f64> {
        let s = (1.0 - 2.0 * self.lambda) * h;
        x.iter().zip(&self.v).map(|(x, v)| x + s * v).collect()
    }
}

fn check_lambda(lambda: f64) -> Result<()> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::invalid(format!("lambda {lambda} is not in (0, 1)")));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub case: String,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyVerdict {
    pub property: String,
    pub holds: bool,
    pub note: &'static str,
    pub trials: usize,
    pub violations: usize,
    pub worst_residual: f64,
    pub worst_case: String,
    #[serde(rename = "tolerance")]
    pub tolerance_used: f64,
    pub seed: u64,
    pub counterexamples: Vec<Counterexample>,
    /// Residual of every trial, in trial order.
    #[serde(skip)]
    pub residuals: Vec<f64>,
}

/// Collects trial outcomes into a verdict.
struct VerdictBuilder {
    verdict: PropertyVerdict,
}

impl VerdictBuilder {
    fn new(property: &str, tolerance: f64, seed: u64) -> Self {
        VerdictBuilder {
            verdict: PropertyVerdict {
                property: property.to_string(),
                holds: true,
                note: HOLDS_NOTE,
                trials: 0,
                violations: 0,
                worst_residual: 0.0,
                worst_case: String::new(),
                tolerance_used: tolerance,
                seed,
                counterexamples: vec![],
                residuals: vec![],
            },
        }
    }

    /// `residual` is reported as given; `violated` decides the trial.
    fn record(&mut self, case: impl FnOnce() -> String, residual: f64, violated: bool) {
        let v = &mut self.verdict;
        v.trials += 1;
        v.residuals.push(residual);
        let size = residual.abs();
        let case_text = (size > v.worst_residual || v.trials == 1 || violated).then(case);
        if size > v.worst_residual || v.trials == 1 {
            v.worst_residual = size;
            v.worst_case = case_text.clone().unwrap_or_default();
        }
        if violated {
            v.violations += 1;
            if v.counterexamples.len() < MAX_COUNTEREXAMPLES {
                v.counterexamples.push(Counterexample {
                    case: case_text.unwrap_or_default(),
                    residual,
                });
            }
        }
    }

    fn finish(mut self) -> PropertyVerdict {
        let v = &mut self.verdict;
        v.holds = v.counterexamples.is_empty();
        v.note = if v.holds { HOLDS_NOTE } else { VIOLATED_NOTE };
        self.verdict
    }
}

/// Both sides of a one-dimensional check on one interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Residual1d {
    /// Average slope (secant or integral mean of `f′`).
    pub average: f64,
    /// `f′` at the weighted abscissa.
    pub slope_at_abscissa: f64,
    pub absolute: f64,
    /// `absolute / (1 + |average|)`.
    pub relative: f64,
}

impl Residual1d {
    fn new(average: f64, slope_at_abscissa: f64) -> Self {
        let absolute = (average - slope_at_abscissa).abs();
        Residual1d {
            average,
            slope_at_abscissa,
            absolute,
            relative: absolute / (1.0 + average.abs()),
        }
    }
}

/// Secant form on one interval.
pub fn weighted_residual(f: &Expr, lambda: f64, iv: Interval) -> Result<Residual1d> {
    check_lambda(lambda)?;
    let slope = average_slope(f, iv)?;
    let d = derivative(f, iv.weighted_point(lambda))?;
    Ok(Residual1d::new(slope, d))
}

/// Integral form on `[x − h, x + h]`, with the mean of `f′` by composite
/// Gauss–Legendre quadrature.
pub fn interval_residual(f: &Expr, lambda: f64, x: f64, h: f64) -> Result<Residual1d> {
    check_lambda(lambda)?;
    if !(h > 0.0) {
        return Err(Error::invalid(format!("half-width {h} must be positive")));
    }
    let integral = integrate_fn(
        |t| derivative(f, t),
        x - h,
        x + h,
        DEFAULT_PANELS,
        DEFAULT_NODES,
    )?;
    let mean = integral / (2.0 * h);
    let d = derivative(f, x + (1.0 - 2.0 * lambda) * h)?;
    Ok(Residual1d::new(mean, d))
}

/// Draw an interval inside `domain` no shorter than a millionth of it.
fn sample_interval(domain: Interval, rng: &mut Stream) -> Interval {
    let w = domain.width();
    loop {
        let u: f64 = rng.random();
        let v: f64 = rng.random();
        let (lo, hi) = if u < v { (u, v) } else { (v, u) };
        let (a, b) = (domain.a + w * lo, domain.a + w * hi);
        if b - a >= 1e-6 * w {
            if let Ok(iv) = Interval::new(a, b) {
                return iv;
            }
        }
    }
}

fn check_trials(trials: usize) -> Result<()> {
    if trials == 0 {
        return Err(Error::invalid("need at least one trial"));
    }
    Ok(())
}

fn interval_case(iv: Interval) -> String {
    format!("a={}, b={}", iv.a, iv.b)
}

/// Secant form over `trials` random intervals in `domain`.
pub fn check_weighted_property(
    f: &Expr,
    lambda: f64,
    trials: usize,
    domain: Interval,
    seed: u64,
    tol: f64,
) -> Result<PropertyVerdict> {
    check_trials(trials)?;
    check_lambda(lambda)?;
    let mut rng = stream(seed);
    let mut out = VerdictBuilder::new("weighted_secant", tol, seed);
    for _ in 0..trials {
        let iv = sample_interval(domain, &mut rng);
        let r = weighted_residual(f, lambda, iv).map_err(|e| in_context(e, &interval_case(iv)))?;
        out.record(|| interval_case(iv), r.relative, r.relative > tol);
    }
    Ok(out.finish())
}

/// Integral form over `trials` random `(x, h)`. Draws the same intervals as
/// [`check_weighted_property`] for the same seed and domain.
pub fn check_interval_mvp(
    f: &Expr,
    lambda: f64,
    trials: usize,
    domain: Interval,
    seed: u64,
    tol: f64,
) -> Result<PropertyVerdict> {
    check_trials(trials)?;
    check_lambda(lambda)?;
    let mut rng = stream(seed);
    let mut out = VerdictBuilder::new("weighted_interval_integral", tol, seed);
    for _ in 0..trials {
        let iv = sample_interval(domain, &mut rng);
        let (x, h) = (iv.midpoint(), 0.5 * iv.width());
        let case = || format!("x={x}, h={h}");
        let r = interval_residual(f, lambda, x, h).map_err(|e| in_context(e, &case()))?;
        out.record(case, r.relative, r.relative > tol);
    }
    Ok(out.finish())
}

fn in_context(e: Error, case: &str) -> Error {
    match e {
        Error::Expr(source) => Error::at(case, source),
        other => other,
    }
}

/// Axis-aligned sampling box `[lo, hi]^n` for centers and points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoxDomain {
    pub lo: f64,
    pub hi: f64,
    pub dim: usize,
}

impl BoxDomain {
    pub fn new(lo: f64, hi: f64, dim: usize) -> Result<Self> {
        if !(lo < hi && lo.is_finite() && hi.is_finite()) {
            return Err(Error::invalid(format!("box needs finite lo < hi, got [{lo}, {hi}]")));
        }
        if !(1..=10).contains(&dim) {
            return Err(Error::invalid(format!("dimension {dim} is outside 1..=10")));
        }
        Ok(BoxDomain { lo, hi, dim })
    }

    fn sample(&self, rng: &mut Stream) -> Vec<f64> {
        (0..self.dim)
            .map(|_| self.lo + (self.hi - self.lo) * rng.random::<f64>())
            .collect()
    }
}

/// Settings for the Monte Carlo ball/sphere checkers.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McCheckConfig {
    pub trials: usize,
    pub domain: BoxDomain,
    pub h_min: f64,
    pub h_max: f64,
    pub samples: usize,
    pub seed: u64,
    pub tol_abs: f64,
    /// 1 keeps the sequential, bit-reproducible sampler.
    pub threads: usize,
}

impl McCheckConfig {
    pub fn new(dim: usize) -> Result<Self> {
        Ok(McCheckConfig {
            trials: 20,
            domain: BoxDomain::new(-2.0, 2.0, dim)?,
            h_min: 0.1,
            h_max: 1.0,
            samples: 200_000,
            seed: 0,
            tol_abs: 1e-9,
            threads: 1,
        })
    }
}

/// One Monte Carlo comparison at a fixed center and radius.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McTrial {
    pub center: Vec<f64>,
    pub h: f64,
    /// `g(x + (1 − 2λ)h·v)`.
    pub lhs: f64,
    pub average: McEstimate,
    /// `lhs − average.estimate`.
    pub residual: f64,
    /// `max(tol_abs, 4·stderr)`.
    pub threshold: f64,
}

impl McTrial {
    pub fn violated(&self) -> bool {
        self.residual.abs() > self.threshold
    }
}

#[allow(clippy::too_many_arguments)]
pub fn mc_trial(
    g: &Expr,
    w: &WeightSpec,
    region: Region,
    center: &[f64],
    h: f64,
    samples: usize,
    seed: u64,
    tol_abs: f64,
    threads: usize,
) -> Result<McTrial> {
    if w.v.len() != center.len() {
        return Err(Error::invalid(format!(
            "direction has {} components, center has {}",
            w.v.len(),
            center.len()
        )));
    }
    let spec = BallSpec::new(center.to_vec(), h)?;
    let average = if threads <= 1 {
        mc_average(g, &spec, region, samples, seed)?
    } else {
        mc_average_chunked(g, &spec, region, samples, seed, threads)?
    };
    let offset = w.offset_point(center, h);
    let lhs = eval(g, &offset).map_err(|e| Error::at(format!("offset point {offset:?}"), e))?;
    Ok(McTrial {
        center: center.to_vec(),
        h,
        lhs,
        residual: lhs - average.estimate,
        threshold: tol_abs.max(SIGMAS * average.stderr),
        average,
    })
}

fn check_mc(
    property: &str,
    region: Region,
    g: &Expr,
    w: &WeightSpec,
    cfg: &McCheckConfig,
) -> Result<PropertyVerdict> {
    check_trials(cfg.trials)?;
    if cfg.samples < MIN_MC_SAMPLES {
        return Err(Error::invalid(format!(
            "need at least {MIN_MC_SAMPLES} samples per trial, got {}",
            cfg.samples
        )));
    }
    if !(cfg.h_min > 0.0 && cfg.h_min <= cfg.h_max && cfg.h_max.is_finite()) {
        return Err(Error::invalid(format!(
            "radius range [{}, {}] is invalid",
            cfg.h_min, cfg.h_max
        )));
    }
    if w.v.len() != cfg.domain.dim {
        return Err(Error::invalid(format!(
            "direction has {} components for dimension {}",
            w.v.len(),
            cfg.domain.dim
        )));
    }
    let mut rng = stream(cfg.seed);
    let mut out = VerdictBuilder::new(property, cfg.tol_abs, cfg.seed);
    for t in 0..cfg.trials {
        let center = cfg.domain.sample(&mut rng);
        let h = cfg.h_min + (cfg.h_max - cfg.h_min) * rng.random::<f64>();
        let trial = mc_trial(
            g,
            w,
            region,
            &center,
            h,
            cfg.samples,
            mix(cfg.seed, t as u64),
            cfg.tol_abs,
            cfg.threads,
        )?;
        let violated = trial.violated();
        out.record(
            || format!("x={:?}, h={}", trial.center, trial.h),
            trial.residual,
            violated,
        );
    }
    Ok(out.finish())
}

/// `g(x + (1 − 2λ)h·v)` against the ball average.
pub fn check_ball_mvp(g: &Expr, w: &WeightSpec, cfg: &McCheckConfig) -> Result<PropertyVerdict> {
    check_mc("weighted_ball_mean", Region::Ball, g, w, cfg)
}

/// `g(x + (1 − 2λ)h·v)` against the sphere average (`n ≥ 2`).
pub fn check_sphere_mvp(g: &Expr, w: &WeightSpec, cfg: &McCheckConfig) -> Result<PropertyVerdict> {
    if cfg.domain.dim < 2 {
        return Err(Error::invalid("sphere checks need dimension at least 2"));
    }
    check_mc("weighted_sphere_mean", Region::Sphere, g, w, cfg)
}

fn point_case(p: &[f64]) -> String {
    format!("x={p:?}")
}

/// `|Δg| ≤ tol·(1 + |g|)` at random points.
pub fn check_harmonicity(
    g: &Expr,
    domain: BoxDomain,
    points: usize,
    seed: u64,
    tol: f64,
) -> Result<PropertyVerdict> {
    check_trials(points)?;
    let mut rng = stream(seed);
    let mut out = VerdictBuilder::new("harmonic", tol, seed);
    for _ in 0..points {
        let p = domain.sample(&mut rng);
        let ctx = |e| in_context(e, &point_case(&p));
        let lap = laplacian(g, &p).map_err(ctx)?;
        let value = eval(g, &p).map_err(|e| Error::at(point_case(&p), e))?;
        let r = lap.abs() / (1.0 + value.abs());
        out.record(|| point_case(&p), r, r > tol);
    }
    Ok(out.finish())
}

/// `|∂g/∂v| ≤ tol` at random points.
pub fn check_v_constancy(
    g: &Expr,
    v: &[f64],
    domain: BoxDomain,
    points: usize,
    seed: u64,
    tol: f64,
) -> Result<PropertyVerdict> {
    check_trials(points)?;
    check_unit(v)?;
    let mut rng = stream(seed);
    let mut out = VerdictBuilder::new("constant_along_v", tol, seed);
    for _ in 0..points {
        let p = domain.sample(&mut rng);
        let d = directional_derivative(g, &p, v).map_err(|e| in_context(e, &point_case(&p)))?;
        out.record(|| point_case(&p), d, d.abs() > tol);
    }
    Ok(out.finish())
}
