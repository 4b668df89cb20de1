//! Mean value abscissas and their weights.
//!
//! For `f` on `[a, b]` an abscissa is a root of
//! `φ(c) = f′(c) − (f(b) − f(a))/(b − a)`. Roots are bracketed by a sign
//! scan over a uniform grid and refined by bisection, which copes with
//! several roots and with flat stretches of `φ`.

use serde::Serialize;

use crate::calculus::derivative;
use crate::expr::{eval, Expr};
use crate::integrate::{integrate_fn, DEFAULT_NODES, DEFAULT_PANELS};
use crate::{Error, Result};

pub const DEFAULT_GRID: usize = 1024;
pub const DEFAULT_TOL: f64 = 1e-12;

/// Deviations `|λ − 1/2|` at or below this are treated as exact midpoints
/// when fitting convergence orders.
pub const MIDPOINT_NOISE: f64 = 1e-13;

/// Displacements `|c − midpoint|` within this many ulps of the midpoint are
/// also treated as exact midpoints.
pub const MIDPOINT_ULPS: f64 = 8.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    pub a: f64,
    pub b: f64,
}

impl Interval {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) {
            return Err(Error::invalid(format!("interval [{a}, {b}] is not finite")));
        }
        if !(a < b) {
            return Err(Error::invalid(format!("interval [{a}, {b}] needs a < b")));
        }
        Ok(Interval { a, b })
    }

    pub fn width(&self) -> f64 {
        self.b - self.a
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.a + self.b)
    }

    /// `λa + (1 − λ)b`.
    pub fn weighted_point(&self, lambda: f64) -> f64 {
        lambda * self.a + (1.0 - lambda) * self.b
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AbscissaResult {
    pub interval: Interval,
    pub average_slope: f64,
    /// Sorted, strictly inside the interval.
    pub abscissas: Vec<f64>,
    /// `λ = (b − c)/(b − a)` for each abscissa.
    pub lambdas: Vec<f64>,
    /// `f′` equals the secant slope at every grid point.
    pub degenerate: bool,
}

/// Secant slope `(f(b) − f(a))/(b − a)`.
pub fn average_slope(f: &Expr, iv: Interval) -> Result<f64> {
    let fa = eval(f, &[iv.a])?;
    let fb = eval(f, &[iv.b])?;
    Ok((fb - fa) / iv.width())
}

/// Secant slope computed as the mean of `f′` over `[a, b]` by composite
/// Gauss–Legendre quadrature. Free of the cancellation in `f(b) − f(a)` on
/// short intervals, but needs `f′` to be smooth across the interval.
pub fn mean_derivative_slope(f: &Expr, iv: Interval) -> Result<f64> {
    let total = integrate_fn(
        |x| derivative(f, x),
        iv.a,
        iv.b,
        DEFAULT_PANELS,
        DEFAULT_NODES,
    )?;
    Ok(total / iv.width())
}

pub fn find_abscissas(f: &Expr, iv: Interval, grid: usize, tol: f64) -> Result<AbscissaResult> {
    let slope = average_slope(f, iv)?;
    find_abscissas_with_slope(f, iv, slope, grid, tol)
}

/// [`find_abscissas`] against a precomputed secant slope.
///
/// `tol` scales both the flatness test for degenerate cases and the
/// distance below which two roots are merged; each root itself is bisected
/// down to floating-point resolution.
pub fn find_abscissas_with_slope(
    f: &Expr,
    iv: Interval,
    slope: f64,
    grid: usize,
    tol: f64,
) -> Result<AbscissaResult> {
    if grid == 0 {
        return Err(Error::invalid("grid must have at least one cell"));
    }
    if !(tol > 0.0) {
        return Err(Error::invalid(format!("tolerance {tol} must be positive")));
    }
    let phi = |c: f64| derivative(f, c).map(|d| d - slope);

    let step = iv.width() / grid as f64;
    let nodes: Vec<f64> = (0..=grid)
        .map(|i| if i == grid { iv.b } else { iv.a + step * i as f64 })
        .collect();
    let values = nodes.iter().map(|&c| phi(c)).collect::<Result<Vec<_>>>()?;

    let flat = tol * (1.0 + slope.abs());
    let degenerate = values.iter().all(|v| v.abs() <= flat);
    if degenerate {
        return Ok(AbscissaResult {
            interval: iv,
            average_slope: slope,
            abscissas: vec![],
            lambdas: vec![],
            degenerate: true,
        });
    }

    let width_tol = tol * iv.width();
    let mut roots = Vec::new();
    for i in 0..grid {
        let (c0, c1) = (nodes[i], nodes[i + 1]);
        let (v0, v1) = (values[i], values[i + 1]);
        if v0 == 0.0 && i > 0 {
            roots.push(c0);
        } else if v0 * v1 < 0.0 {
            roots.push(bisect(&phi, c0, c1, v0)?);
        }
    }
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|later, earlier| *later - *earlier <= 2.0 * width_tol);
    roots.retain(|&c| iv.a < c && c < iv.b);

    if roots.is_empty() {
        return Err(Error::NoRoot { a: iv.a, b: iv.b, grid });
    }
    let lambdas = roots.iter().map(|&c| weight_of(c, iv)).collect();
    Ok(AbscissaResult {
        interval: iv,
        average_slope: slope,
        abscissas: roots,
        lambdas,
        degenerate: false,
    })
}

fn bisect(
    phi: &impl Fn(f64) -> Result<f64>,
    mut lo: f64,
    mut hi: f64,
    phi_lo: f64,
) -> Result<f64> {
    let lo_negative = phi_lo < 0.0;
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = phi(mid)?;
        if v == 0.0 {
            return Ok(mid);
        }
        if (v < 0.0) == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn weight_of(c: f64, iv: Interval) -> f64 {
    (iv.b - c) / iv.width()
}

/// Weight of an abscissa, with a flag for the open range `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Weight {
    pub lambda: f64,
    pub interior: bool,
}

/// `λ = (b − c)/(b − a)`, so that `c = λa + (1 − λ)b`.
pub fn lambda_of(c: f64, iv: Interval) -> Result<Weight> {
    if !(iv.a <= c && c <= iv.b) {
        return Err(Error::invalid(format!("c = {c} lies outside [{}, {}]", iv.a, iv.b)));
    }
    let lambda = weight_of(c, iv);
    Ok(Weight {
        lambda,
        interior: lambda > 0.0 && lambda < 1.0,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub h: f64,
    pub c: Option<f64>,
    pub lambda: Option<f64>,
    pub abs_dev: Option<f64>,
    pub status: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepTable {
    pub x0: f64,
    pub rows: Vec<SweepRow>,
    /// Slope of `log|c − midpoint|` against `log h`; `None` when every
    /// row sits at the midpoint.
    pub fitted_order: Option<f64>,
    /// Slope of `log|λ − 1/2|` against `log h` (one less than
    /// `fitted_order`, since `|c − midpoint| = 2h·|λ − 1/2|`).
    pub lambda_order: Option<f64>,
}

impl SweepTable {
    pub const CSV_HEADER: &'static str = "h,c,lambda,abs_dev,status";

    pub fn to_csv(&self) -> String {
        let cell = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                r.h,
                cell(r.c),
                cell(r.lambda),
                cell(r.abs_dev),
                r.status
            ));
        }
        out
    }
}

/// Abscissas of `f` on `[x0 − h, x0 + h]` for geometrically spaced `h`.
///
/// Each row keeps the abscissa nearest the midpoint (the lower one on a
/// tie). A row whose solve fails is kept with its error as status and left
/// out of the fit.
pub fn sweep_lambda(f: &Expr, x0: f64, h_min: f64, h_max: f64, steps: usize) -> Result<SweepTable> {
    if !(h_min > 0.0 && h_min < h_max && h_max.is_finite()) {
        return Err(Error::invalid(format!("need 0 < hmin < hmax, got {h_min}, {h_max}")));
    }
    if steps < 4 {
        return Err(Error::invalid(format!("need at least 4 steps, got {steps}")));
    }
    let ratio = h_max / h_min;
    let rows: Vec<SweepRow> = (0..steps)
        .map(|i| {
            let h = if i == steps - 1 {
                h_max
            } else {
                h_min * ratio.powf(i as f64 / (steps - 1) as f64)
            };
            sweep_row(f, x0, h)
        })
        .collect();

    let mut disp = Vec::new();
    let mut dev = Vec::new();
    for r in rows.iter().filter(|r| r.status == "ok") {
        let (Some(c), Some(d)) = (r.c, r.abs_dev) else { continue };
        let resolution = MIDPOINT_ULPS * f64::EPSILON * (x0.abs() + r.h);
        if d > MIDPOINT_NOISE && (c - x0).abs() > resolution {
            disp.push((r.h.ln(), (c - x0).abs().ln()));
            dev.push((r.h.ln(), d.ln()));
        }
    }
    Ok(SweepTable {
        x0,
        rows,
        fitted_order: least_squares_slope(&disp),
        lambda_order: least_squares_slope(&dev),
    })
}

fn sweep_row(f: &Expr, x0: f64, h: f64) -> SweepRow {
    let solved = Interval::new(x0 - h, x0 + h).and_then(|iv| {
        let slope = mean_derivative_slope(f, iv).or_else(|_| average_slope(f, iv))?;
        find_abscissas_with_slope(f, iv, slope, DEFAULT_GRID, DEFAULT_TOL)
    });
    let failed = |status: String| SweepRow { h, c: None, lambda: None, abs_dev: None, status };
    match solved {
        Err(e) => failed(format!("failed: {e}").replace(',', ";")),
        Ok(res) if res.degenerate => failed("degenerate".into()),
        Ok(res) => {
            let mid = res.interval.midpoint();
            let k = (0..res.abscissas.len())
                .min_by(|&i, &j| {
                    let di = (res.abscissas[i] - mid).abs();
                    let dj = (res.abscissas[j] - mid).abs();
                    di.total_cmp(&dj)
                })
                .expect("non-degenerate result has a root");
            let lambda = res.lambdas[k];
            SweepRow {
                h,
                c: Some(res.abscissas[k]),
                lambda: Some(lambda),
                abs_dev: Some((lambda - 0.5).abs()),
                status: "ok".into(),
            }
        }
    }
}

/// Ordinary least-squares slope; `None` with fewer than two points.
fn least_squares_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn iv(a: f64, b: f64) -> Interval {
        Interval::new(a, b).unwrap()
    }

    #[test]
    fn interval_validation() {
        assert!(Interval::new(1.0, 1.0).is_err());
        assert!(Interval::new(2.0, 1.0).is_err());
        assert!(Interval::new(f64::NAN, 1.0).is_err());
        assert!(Interval::new(0.0, f64::INFINITY).is_err());
    }

    #[test]
    fn secant_slopes() {
        assert_eq!(average_slope(&parse("x^2").unwrap(), iv(0.0, 2.0)).unwrap(), 2.0);
        let e = average_slope(&parse("exp(x)").unwrap(), iv(0.0, 1.0)).unwrap();
        assert!((e - (std::f64::consts::E - 1.0)).abs() < 1e-15);
        let s = average_slope(&parse("sin(x)").unwrap(), iv(0.0, std::f64::consts::PI)).unwrap();
        assert!(s.abs() < 1e-15);
    }

    #[test]
    fn quadratic_midpoint() {
        let r = find_abscissas(&parse("x^2").unwrap(), iv(0.0, 2.0), DEFAULT_GRID, DEFAULT_TOL).unwrap();
        assert_eq!(r.abscissas, vec![1.0]);
        assert_eq!(r.lambdas, vec![0.5]);
    }

    #[test]
    fn exponential_abscissa() {
        let r = find_abscissas(&parse("exp(x)").unwrap(), iv(0.0, 1.0), DEFAULT_GRID, DEFAULT_TOL).unwrap();
        let expected = (std::f64::consts::E - 1.0).ln();
        assert_eq!(r.abscissas.len(), 1);
        assert!((r.abscissas[0] - expected).abs() < 1e-11);
        assert!((r.lambdas[0] - (1.0 - expected)).abs() < 1e-11);
    }

    #[test]
    fn cubic_has_two_abscissas() {
        let r = find_abscissas(&parse("x^3").unwrap(), iv(-1.0, 1.0), DEFAULT_GRID, DEFAULT_TOL).unwrap();
        let s = 1.0 / 3f64.sqrt();
        assert_eq!(r.abscissas.len(), 2);
        assert!((r.abscissas[0] + s).abs() < 1e-11);
        assert!((r.abscissas[1] - s).abs() < 1e-11);
    }

    #[test]
    fn affine_is_degenerate() {
        let r = find_abscissas(&parse("2*x+5").unwrap(), iv(0.0, 1.0), DEFAULT_GRID, DEFAULT_TOL).unwrap();
        assert!(r.degenerate);
        assert!(r.abscissas.is_empty());
    }

    #[test]
    fn coarse_grid_can_alias() {
        // φ = cos(40x) - slope changes sign many times per cell at grid 1
        let f = parse("sin(40*x)/40 + x^3").unwrap();
        let r = find_abscissas(&f, iv(-1.0, 1.0), 1, DEFAULT_TOL);
        assert!(matches!(r, Err(Error::NoRoot { .. })));
        assert!(find_abscissas(&f, iv(-1.0, 1.0), DEFAULT_GRID, DEFAULT_TOL).is_ok());
    }

    #[test]
    fn weights() {
        let w = lambda_of(1.0, iv(0.0, 2.0)).unwrap();
        assert_eq!(w, Weight { lambda: 0.5, interior: true });
        let w = lambda_of(0.5413249, iv(0.0, 1.0)).unwrap();
        assert!((w.lambda - 0.4586751).abs() < 1e-15);
        let w = lambda_of(0.0, iv(0.0, 1.0)).unwrap();
        assert_eq!(w, Weight { lambda: 1.0, interior: false });
        assert!(lambda_of(1.5, iv(0.0, 1.0)).is_err());
    }

    #[test]
    fn sweep_argument_checks() {
        let f = parse("x^2").unwrap();
        assert!(sweep_lambda(&f, 0.0, 0.1, 0.01, 10).is_err());
        assert!(sweep_lambda(&f, 0.0, 0.0, 0.01, 10).is_err());
        assert!(sweep_lambda(&f, 0.0, 0.01, 0.1, 3).is_err());
    }

    #[test]
    fn sweep_on_affine_marks_rows_degenerate() {
        let t = sweep_lambda(&parse("3*x-1").unwrap(), 0.5, 1e-3, 1e-1, 5).unwrap();
        assert!(t.rows.iter().all(|r| r.status == "degenerate"));
        assert_eq!(t.fitted_order, None);
    }

    #[test]
    fn csv_layout() {
        let t = sweep_lambda(&parse("x^2").unwrap(), 3.0, 1e-3, 1e-1, 4).unwrap();
        let csv = t.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("h,c,lambda,abs_dev,status"));
        assert_eq!(lines.count(), 4);
    }
}
