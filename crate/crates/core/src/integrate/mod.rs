//! Interval quadrature and Monte Carlo averages over balls and spheres.

mod montecarlo;
mod quadrature;
pub mod rng;

pub use montecarlo::{
    mc_average, mc_average_chunked, mc_ball_average, mc_sphere_average, sample_ball,
    sample_ball_into, sample_sphere, sample_sphere_into, BallSpec, McEstimate, Region, CHUNK,
    MIN_SAMPLES,
};
pub use quadrature::GaussLegendre;

use std::f64::consts::PI;

use crate::expr::{eval, Expr};
use crate::{Error, Result};

pub const DEFAULT_PANELS: usize = 64;
pub const DEFAULT_NODES: usize = 16;

/// Composite Gauss–Legendre integral of `f(x)` over `[a, b]`.
pub fn integrate_1d(f: &Expr, a: f64, b: f64, panels: usize, nodes: usize) -> Result<f64> {
    integrate_fn(|x| Ok(eval(f, &[x])?), a, b, panels, nodes)
}

/// [`integrate_1d`] for an arbitrary fallible integrand.
pub fn integrate_fn<F>(f: F, a: f64, b: f64, panels: usize, nodes: usize) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::invalid(format!("integration needs finite a < b, got [{a}, {b}]")));
    }
    GaussLegendre::new(nodes)?.composite(f, a, b, panels)
}

fn check_dim(n: usize, min: usize) -> Result<()> {
    if !(min..=10).contains(&n) {
        return Err(Error::invalid(format!("dimension {n} is outside {min}..=10")));
    }
    Ok(())
}

/// Volume of the `n`-ball of radius `h`:
/// `V₁ = 2h`, `V₂ = πh²`, `Vₙ = (2πh²/n)·Vₙ₋₂`.
pub fn ball_volume(n: usize, h: f64) -> Result<f64> {
    check_dim(n, 1)?;
    if !(h > 0.0) {
        return Err(Error::invalid(format!("radius {h} must be positive")));
    }
    let mut v = if n % 2 == 1 { 2.0 * h } else { PI * h * h };
    let mut k = if n % 2 == 1 { 1 } else { 2 };
    while k < n {
        k += 2;
        v *= 2.0 * PI * h * h / k as f64;
    }
    Ok(v)
}

/// Area of the sphere bounding the `n`-ball, `n·Vₙ(h)/h`, for `n ≥ 2`.
pub fn sphere_area(n: usize, h: f64) -> Result<f64> {
    check_dim(n, 2)?;
    Ok(n as f64 * ball_volume(n, h)? / h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    #[test]
    fn volumes() {
        assert!((ball_volume(2, 1.0).unwrap() - PI).abs() < 1e-15);
        assert!((ball_volume(3, 2.0).unwrap() - 4.0 / 3.0 * PI * 8.0).abs() < 1e-12);
        assert!((ball_volume(4, 1.0).unwrap() - PI * PI / 2.0).abs() < 1e-15);
        assert_eq!(ball_volume(1, 0.5).unwrap(), 1.0);
        assert!(ball_volume(0, 1.0).is_err());
        assert!(ball_volume(11, 1.0).is_err());
    }

    #[test]
    fn areas() {
        assert!((sphere_area(2, 1.0).unwrap() - 2.0 * PI).abs() < 1e-15);
        assert!((sphere_area(3, 1.0).unwrap() - 4.0 * PI).abs() < 1e-14);
        assert!((sphere_area(3, 2.0).unwrap() - 16.0 * PI).abs() < 1e-13);
        assert!(sphere_area(1, 1.0).is_err());
    }

    #[test]
    fn classical_integrals() {
        let x2 = integrate_1d(&parse("x^2").unwrap(), 0.0, 1.0, DEFAULT_PANELS, DEFAULT_NODES).unwrap();
        assert!((x2 - 1.0 / 3.0).abs() < 1e-14);
        let s = integrate_1d(&parse("sin(x)").unwrap(), 0.0, PI, DEFAULT_PANELS, DEFAULT_NODES).unwrap();
        assert!((s - 2.0).abs() < 1e-12);
        let x9 = integrate_1d(&parse("x^9").unwrap(), 0.0, 1.0, 1, 5).unwrap();
        assert!((x9 - 0.1).abs() < 1e-15);
    }

    #[test]
    fn bad_bounds() {
        assert!(integrate_1d(&parse("x").unwrap(), 1.0, 0.0, 4, 4).is_err());
    }
}
