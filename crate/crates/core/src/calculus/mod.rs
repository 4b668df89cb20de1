//! Forward-mode derivatives of parsed expressions.
//!
//! One-dimensional work uses [`Jet3`] (value through third derivative in a
//! single pass). In `n` dimensions, [`HyperDual`] passes give first
//! partials and exact diagonal second partials; the Laplacian costs `n`
//! passes and never forms a Hessian.

mod hyperdual;
mod jet;

pub use hyperdual::HyperDual;
pub use jet::Jet3;

use crate::expr::{eval_scalar, Expr};
use crate::{Error, Result};

/// Value and first three derivatives of a univariate function.
pub(crate) type Taylor = [f64; 4];

/// Tolerance on `|v| - 1` for direction vectors.
pub const UNIT_TOLERANCE: f64 = 1e-12;

/// `x^p` and its first three derivatives. Falling-factorial coefficients
/// that vanish (integer `p`) zero the term instead of producing `0·∞`.
pub(crate) fn power_derivatives(x: f64, p: f64) -> Taylor {
    let mut out = [x.powf(p), 0.0, 0.0, 0.0];
    let mut coeff = 1.0;
    for (k, slot) in out.iter_mut().enumerate().skip(1) {
        coeff *= p - (k as f64 - 1.0);
        if coeff != 0.0 {
            *slot = coeff * x.powf(p - k as f64);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Derivatives1d {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
}

impl From<Jet3> for Derivatives1d {
    fn from(j: Jet3) -> Self {
        Derivatives1d {
            value: j.value,
            d1: j.d1,
            d2: j.d2,
            d3: j.d3,
        }
    }
}

/// `f(x0), f'(x0), f''(x0), f'''(x0)` for `f` in the single variable `x`.
pub fn derivatives_1d(f: &Expr, x0: f64) -> Result<Derivatives1d> {
    Ok(eval_scalar(f, &[Jet3::variable(x0)])?.into())
}

/// `f'(x0)` alone.
pub fn derivative(f: &Expr, x0: f64) -> Result<f64> {
    Ok(derivatives_1d(f, x0)?.d1)
}

fn axis(n: usize, i: usize) -> Vec<f64> {
    let mut e = vec![0.0; n];
    e[i] = 1.0;
    e
}

fn check_dims(g: &Expr, x: &[f64]) -> Result<()> {
    if x.is_empty() {
        return Err(Error::invalid("point has no coordinates"));
    }
    if g.max_var() > x.len() {
        return Err(Error::invalid(format!(
            "expression uses x{} but the point has {} coordinates",
            g.max_var(),
            x.len()
        )));
    }
    Ok(())
}

/// `∂g/∂xᵢ` and `∂²g/∂xᵢ²` (0-based `i`) from one hyper-dual pass.
pub fn axis_partials(g: &Expr, x: &[f64], i: usize) -> Result<(f64, f64)> {
    check_dims(g, x)?;
    let e = axis(x.len(), i);
    let r = eval_scalar(g, &HyperDual::seed(x, &e, &e))?;
    Ok((r.d_a, r.d_ab))
}

pub fn gradient(g: &Expr, x: &[f64]) -> Result<Vec<f64>> {
    (0..x.len())
        .map(|i| axis_partials(g, x, i).map(|(d, _)| d))
        .collect()
}

/// Sum of the diagonal second partials.
pub fn laplacian(g: &Expr, x: &[f64]) -> Result<f64> {
    let mut sum = 0.0;
    for i in 0..x.len() {
        sum += axis_partials(g, x, i)?.1;
    }
    Ok(sum)
}

pub fn check_unit(v: &[f64]) -> Result<()> {
    let norm = v.iter().map(|c| c * c).sum::<f64>().sqrt();
    if !((norm - 1.0).abs() <= UNIT_TOLERANCE) {
        return Err(Error::invalid(format!("direction has norm {norm}, expected 1")));
    }
    Ok(())
}

/// `∇g(x)·v` for a unit vector `v`.
pub fn directional_derivative(g: &Expr, x: &[f64], v: &[f64]) -> Result<f64> {
    if v.len() != x.len() {
        return Err(Error::invalid(format!(
            "direction has {} components, point has {}",
            v.len(),
            x.len()
        )));
    }
    check_unit(v)?;
    let grad = gradient(g, x)?;
    Ok(grad.iter().zip(v).map(|(g, v)| g * v).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse, ExprError};

    fn d1d(src: &str, x0: f64) -> (f64, f64, f64, f64) {
        let d = derivatives_1d(&parse(src).unwrap(), x0).unwrap();
        (d.value, d.d1, d.d2, d.d3)
    }

    #[test]
    fn monomial_and_classics() {
        assert_eq!(d1d("x^3", 2.0), (8.0, 12.0, 12.0, 6.0));
        assert_eq!(d1d("exp(x)", 0.0), (1.0, 1.0, 1.0, 1.0));
        assert_eq!(d1d("sin(x)", 0.0), (0.0, 1.0, 0.0, -1.0));
    }

    #[test]
    fn integer_power_at_zero_is_finite() {
        assert_eq!(d1d("x^2", 0.0), (0.0, 0.0, 2.0, 0.0));
        assert_eq!(d1d("x^3", 0.0), (0.0, 0.0, 0.0, 6.0));
        assert_eq!(d1d("x^0", 0.0), (1.0, 0.0, 0.0, 0.0));
    }

    #[test]
    fn quotient_rule() {
        // 1/x at 2: 1/2, -1/4, 2/8, -6/16
        assert_eq!(d1d("1/x", 2.0), (0.5, -0.25, 0.25, -0.375));
    }

    #[test]
    fn abs_at_zero_has_no_derivative() {
        let f = parse("abs(x)").unwrap();
        assert!(matches!(
            derivatives_1d(&f, 0.0),
            Err(Error::Expr(ExprError::DerivativeUndefined(_)))
        ));
        assert_eq!(derivatives_1d(&f, -2.0).unwrap().d1, -1.0);
    }

    #[test]
    fn gradient_examples() {
        let g = parse("x^2 - y^2").unwrap();
        assert_eq!(gradient(&g, &[1.0, 2.0]).unwrap(), vec![2.0, -4.0]);
        assert_eq!(gradient(&parse("x").unwrap(), &[0.3, 0.7]).unwrap(), vec![1.0, 0.0]);
        assert_eq!(gradient(&parse("x*y").unwrap(), &[3.0, 5.0]).unwrap(), vec![5.0, 3.0]);
    }

    #[test]
    fn laplacian_examples() {
        let p = [0.4, -1.3, 2.2];
        assert_eq!(laplacian(&parse("x^2 - y^2").unwrap(), &p[..2]).unwrap(), 0.0);
        assert_eq!(laplacian(&parse("x^2 + y^2").unwrap(), &p[..2]).unwrap(), 4.0);
        assert_eq!(laplacian(&parse("x^2 + y^2 + z^2").unwrap(), &p).unwrap(), 6.0);
    }

    #[test]
    fn directional_examples() {
        let p = [1.0, 2.0];
        let dd = |src: &str, v: &[f64]| directional_derivative(&parse(src).unwrap(), &p, v);
        assert_eq!(dd("x", &[0.0, 1.0]).unwrap(), 0.0);
        assert_eq!(dd("x^2 - y^2", &[1.0, 0.0]).unwrap(), 2.0);
        assert_eq!(dd("x + y", &[0.0, 1.0]).unwrap(), 1.0);
        assert!(matches!(dd("x", &[1.0, 1.0]), Err(Error::InvalidArgument(_))));
        assert!(dd("x", &[1.0]).is_err());
    }

    #[test]
    fn dimension_mismatch() {
        assert!(laplacian(&parse("x*z").unwrap(), &[1.0, 2.0]).is_err());
    }
}
