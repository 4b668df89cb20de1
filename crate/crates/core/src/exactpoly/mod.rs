//! Exact decision of the weighted mean value identity for polynomials.
//!
//! For a rational polynomial `p` and weight `λ`, the residual
//!
//! ```text
//! R(a, b) = p(b) − p(a) − (b − a)·p′(λa + (1 − λ)b)
//! ```
//!
//! is expanded exactly. `R ≡ 0` means the weighted abscissa works for every
//! interval; this happens exactly when `deg p ≤ 1`, or `deg p ≤ 2` with
//! `λ = 1/2`.

mod poly;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

pub use poly::{to_f64, BivariatePolynomial, RationalPolynomial};

use crate::expr::parse;
use crate::mvroot::{find_abscissas, Interval, DEFAULT_GRID, DEFAULT_TOL};
use crate::{Error, Result};

/// Largest degree the bivariate expansion accepts.
pub const DEGREE_CAP: usize = 64;

/// Right endpoints used by the fixed-left-endpoint residual.
pub const FAMILY_ENDPOINTS: [f64; 4] = [0.5, 1.0, 2.0, 5.0];

/// Parse `"p/q"`, an integer, or a decimal such as `"-0.25"` or `"3e-2"`
/// into an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let s = text.trim();
    let bad = || Error::invalid(format!("'{text}' is not a rational number"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::invalid(format!("'{text}' has a zero denominator")));
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(k) => (&s[..k], s[k + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty()
        || !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let numer: BigInt = format!("{int_part}{frac_part}").parse().map_err(|_| bad())?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigRational::from_integer(BigInt::from(10));
    let mut value = BigRational::from_integer(numer);
    for _ in 0..scale.unsigned_abs() {
        if scale > 0 {
            value *= &ten;
        } else {
            value /= &ten;
        }
    }
    Ok(if negative { -value } else { value })
}

pub fn poly_from_coeffs(coeffs: &[BigRational]) -> RationalPolynomial {
    RationalPolynomial::from_coeffs(coeffs.iter().cloned())
}

fn check_lambda(lambda: &BigRational) -> Result<()> {
    if *lambda <= BigRational::zero() || *lambda >= BigRational::one() {
        return Err(Error::invalid(format!("lambda {lambda} is not in (0, 1)")));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct MvtResidual {
    pub poly: BivariatePolynomial,
    pub is_identically_zero: bool,
}

impl MvtResidual {
    /// `"(c)(b-a)^m"` when the residual has that shape, else the expansion.
    pub fn display(&self) -> String {
        match self.poly.as_difference_power() {
            Some((c, 1)) => format!("({c})(b-a)"),
            Some((c, m)) => format!("({c})(b-a)^{m}"),
            None => self.poly.to_string(),
        }
    }
}

/// Exact residual `p(b) − p(a) − (b − a)·p′(λa + (1 − λ)b)`.
pub fn mvt_residual(p: &RationalPolynomial, lambda: &BigRational) -> Result<MvtResidual> {
    check_lambda(lambda)?;
    if let Some(d) = p.degree().filter(|&d| d > DEGREE_CAP) {
        return Err(Error::DegreeTooLarge { degree: d, cap: DEGREE_CAP });
    }
    let mut secant = BivariatePolynomial::zero();
    for (i, c) in p.coeffs().iter().enumerate() {
        secant = &secant + &BivariatePolynomial::term(0, i, c.clone());
        secant = &secant - &BivariatePolynomial::term(i, 0, c.clone());
    }
    let abscissa = BivariatePolynomial::linear(lambda.clone(), BigRational::one() - lambda);
    let slope_at_abscissa = p
        .derivative()
        .coeffs()
        .iter()
        .rev()
        .fold(BivariatePolynomial::zero(), |acc, c| {
            &(&acc * &abscissa) + &BivariatePolynomial::constant(c.clone())
        });
    let poly = &secant - &(&BivariatePolynomial::difference() * &slope_at_abscissa);
    let is_identically_zero = poly.is_zero();
    Ok(MvtResidual { poly, is_identically_zero })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub satisfies: bool,
    pub residual: MvtResidual,
}

pub fn classify(p: &RationalPolynomial, lambda: &BigRational) -> Result<Classification> {
    let residual = mvt_residual(p, lambda)?;
    Ok(Classification {
        satisfies: residual.is_identically_zero,
        residual,
    })
}

/// The characterization the exact residual must agree with:
/// affine polynomials work for every weight, quadratics only at `λ = 1/2`.
pub fn predicted_to_satisfy(p: &RationalPolynomial, lambda: &BigRational) -> bool {
    let half = BigRational::new(1.into(), 2.into());
    match p.degree() {
        None | Some(0) | Some(1) => true,
        Some(2) => *lambda == half,
        Some(_) => false,
    }
}

/// Abscissa ratio for `x^(k+1)` on `[0, b]` with the left endpoint pinned.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LambdaFamily {
    pub k: u32,
    /// `c / b = (k+1)^(-1/k)`, independent of `b`.
    pub ratio: f64,
    /// Weight on `a` when `c = λa + (1 − λ)b`, i.e. `1 − ratio`.
    pub lambda_weight_on_a: f64,
    /// Weight when `c = λ·b`, i.e. `1/(k+1)^(1/k)`.
    pub lambda_c_over_b: f64,
    /// The same ratio located by the grid/bisection abscissa finder on `[0, 1]`.
    pub root_ratio: f64,
    /// Worst relative fixed-endpoint residual over [`FAMILY_ENDPOINTS`].
    pub residual_check: f64,
}

pub fn lambda_family(k: u32) -> Result<LambdaFamily> {
    if !(1..=20).contains(&k) {
        return Err(Error::invalid(format!("k = {k} is outside 1..=20")));
    }
    let kf = f64::from(k);
    let ratio = (kf + 1.0).powf(-1.0 / kf);
    let f = RationalPolynomial::monomial(k as usize + 1);
    let residual_check = fixed_left_residual(&f, ratio);

    let expr = parse(&format!("x^{}", k + 1))?;
    let found = find_abscissas(&expr, Interval::new(0.0, 1.0)?, DEFAULT_GRID, DEFAULT_TOL)?;
    let root_ratio = *found
        .abscissas
        .first()
        .ok_or(Error::NoRoot { a: 0.0, b: 1.0, grid: DEFAULT_GRID })?;

    Ok(LambdaFamily {
        k,
        ratio,
        lambda_weight_on_a: 1.0 - ratio,
        lambda_c_over_b: 1.0 / (kf + 1.0).powf(1.0 / kf),
        root_ratio,
        residual_check,
    })
}

/// `max_b |(p(b) − p(0))/b − p′(ratio·b)| / (1 + |(p(b) − p(0))/b|)` over
/// [`FAMILY_ENDPOINTS`].
pub fn fixed_left_residual(p: &RationalPolynomial, ratio: f64) -> f64 {
    let dp = p.derivative();
    FAMILY_ENDPOINTS
        .iter()
        .map(|&b| {
            let slope = (p.eval_f64(b) - p.eval_f64(0.0)) / b;
            (slope - dp.eval_f64(ratio * b)).abs() / (1.0 + slope.abs())
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("1/2").unwrap(), r(1, 2));
        assert_eq!(parse_rational("-3").unwrap(), r(-3, 1));
        assert_eq!(parse_rational("0.3").unwrap(), r(3, 10));
        assert_eq!(parse_rational("-1.25").unwrap(), r(-5, 4));
        assert_eq!(parse_rational("3e-2").unwrap(), r(3, 100));
        assert_eq!(parse_rational("2E3").unwrap(), r(2000, 1));
        assert_eq!(parse_rational(" 6/-4 ").unwrap(), r(-3, 2));
        for bad in ["", "1/0", "a", "1.2.3", "-", "1/2/3", "."] {
            assert!(parse_rational(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn cubic_at_midpoint() {
        let res = mvt_residual(&RationalPolynomial::monomial(3), &r(1, 2)).unwrap();
        assert!(!res.is_identically_zero);
        let expected = BivariatePolynomial::difference().pow(3).scale(&r(1, 4));
        assert_eq!(res.poly, expected);
        assert_eq!(res.display(), "(1/4)(b-a)^3");
    }

    #[test]
    fn square_at_one_third() {
        let res = mvt_residual(&RationalPolynomial::monomial(2), &r(1, 3)).unwrap();
        assert_eq!(res.poly, BivariatePolynomial::difference().pow(2).scale(&r(-1, 3)));
    }

    #[test]
    fn classify_examples() {
        let q = RationalPolynomial::from_i64(&[1, 2, 3]);
        assert!(classify(&q, &r(1, 2)).unwrap().satisfies);
        let lin = RationalPolynomial::from_i64(&[5, -7]);
        assert!(classify(&lin, &r(3, 10)).unwrap().satisfies);
        let c = classify(&RationalPolynomial::monomial(2), &r(3, 10)).unwrap();
        assert!(!c.satisfies);
        assert_eq!(c.residual.display(), "(-2/5)(b-a)^2");
    }

    #[test]
    fn zero_polynomial_satisfies() {
        assert!(classify(&RationalPolynomial::zero(), &r(1, 7)).unwrap().satisfies);
    }

    #[test]
    fn lambda_out_of_range() {
        let p = RationalPolynomial::monomial(2);
        assert!(mvt_residual(&p, &r(0, 1)).is_err());
        assert!(mvt_residual(&p, &r(1, 1)).is_err());
        assert!(mvt_residual(&p, &r(-1, 2)).is_err());
    }

    #[test]
    fn degree_cap() {
        let p = RationalPolynomial::monomial(DEGREE_CAP + 1);
        assert!(matches!(
            mvt_residual(&p, &r(1, 2)),
            Err(Error::DegreeTooLarge { degree: 65, .. })
        ));
        assert!(mvt_residual(&RationalPolynomial::monomial(DEGREE_CAP), &r(1, 2)).is_ok());
    }

    #[test]
    fn family_k_range() {
        assert!(lambda_family(0).is_err());
        assert!(lambda_family(21).is_err());
        let one = lambda_family(1).unwrap();
        assert_eq!(one.ratio, 0.5);
        assert_eq!(one.lambda_weight_on_a, 0.5);
        assert_eq!(one.lambda_c_over_b, 0.5);
    }
}
