use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::expr::Expr;

/// Dense univariate polynomial with exact rational coefficients, lowest
/// degree first. Trailing zeros are always stripped, so the zero
/// polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RationalPolynomial {
    coeffs: Vec<BigRational>,
}

impl RationalPolynomial {
    pub fn from_coeffs(coeffs: impl IntoIterator<Item = BigRational>) -> Self {
        let mut p = RationalPolynomial {
            coeffs: coeffs.into_iter().collect(),
        };
        p.normalize();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigRational::from_integer(c.into())))
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// `x^d`.
    pub fn monomial(d: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); d + 1];
        coeffs[d] = BigRational::one();
        Self { coeffs }
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i))),
        )
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c * s))
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + to_f64(c))
    }

    /// The same polynomial as an expression in `x`, for the numeric checkers.
    pub fn to_expr(&self) -> Expr {
        let mut terms = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let c = Expr::num(to_f64(c));
                match i {
                    0 => c,
                    1 => Expr::mul(c, Expr::var(1)),
                    _ => Expr::mul(c, Expr::pow(Expr::var(1), Expr::num(i as f64))),
                }
            });
        let first = terms.next().unwrap_or(Expr::num(0.0));
        terms.fold(first, Expr::add)
    }
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

impl Add for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn add(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPolynomial::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)))
    }
}

impl Sub for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn sub(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPolynomial::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)))
    }
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<_> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (c.clone(), monomial_text("x", i)))
            .collect();
        write_terms(f, &terms)
    }
}

fn monomial_text(var: &str, power: usize) -> String {
    match power {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{power}"),
    }
}

/// Writes `c1*m1 + c2*m2 - ...`, or `0` when empty.
fn write_terms(f: &mut fmt::Formatter<'_>, terms: &[(BigRational, String)]) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (k, (c, mono)) in terms.iter().enumerate() {
        let mag = c.abs();
        if k == 0 {
            if c.is_negative() {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
        }
        if mono.is_empty() {
            write!(f, "{mag}")?;
        } else if mag.is_one() {
            write!(f, "{mono}")?;
        } else {
            write!(f, "{mag}*{mono}")?;
        }
    }
    Ok(())
}

/// Polynomial in the formal variables `a` and `b`, stored sparsely as
/// `(i, j) → coefficient of a^i b^j` with no zero entries.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BivariatePolynomial {
    terms: BTreeMap<(usize, usize), BigRational>,
}

impl BivariatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        Self::term(0, 0, c)
    }

    pub fn term(i: usize, j: usize, c: BigRational) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, c);
        p
    }

    /// `ca·a + cb·b`.
    pub fn linear(ca: BigRational, cb: BigRational) -> Self {
        let mut p = Self::term(1, 0, ca);
        p.add_term(0, 1, cb);
        p
    }

    /// `b − a`.
    pub fn difference() -> Self {
        Self::linear(-BigRational::one(), BigRational::one())
    }

    fn add_term(&mut self, i: usize, j: usize, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((i, j)).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: usize, j: usize) -> BigRational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::constant(BigRational::one()), |acc, _| &acc * self)
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            out.add_term(i, j, c * s);
        }
        out
    }

    pub fn eval(&self, a: &BigRational, b: &BigRational) -> BigRational {
        self.terms
            .iter()
            .map(|(&(i, j), c)| c * pow_rat(a, i) * pow_rat(b, j))
            .fold(BigRational::zero(), |acc, t| acc + t)
    }

    pub fn eval_f64(&self, a: f64, b: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&(i, j), c)| to_f64(c) * a.powi(i as i32) * b.powi(j as i32))
            .sum()
    }

    /// `Some((c, m))` when the polynomial is exactly `c·(b − a)^m`, `c ≠ 0`.
    pub fn as_difference_power(&self) -> Option<(BigRational, usize)> {
        let m = self.total_degree()?;
        let c = self.coeff(0, m);
        if c.is_zero() {
            return None;
        }
        (Self::difference().pow(m).scale(&c) == *self).then_some((c, m))
    }
}

fn pow_rat(x: &BigRational, e: usize) -> BigRational {
    (0..e).fold(BigRational::one(), |acc, _| acc * x)
}

impl Add for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn add(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Neg for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn neg(self) -> BivariatePolynomial {
        self.scale(&-BigRational::one())
    }
}

impl Sub for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn sub(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        self + &(-rhs)
    }
}

impl Mul for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn mul(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = BivariatePolynomial::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for BivariatePolynomial {
    /// Expanded form, highest total degree first, then by descending power of `a`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&(i, j)| std::cmp::Reverse((i + j, i)));
        let terms: Vec<_> = keys
            .into_iter()
            .map(|(i, j)| {
                let mono = [monomial_text("a", i), monomial_text("b", j)]
                    .into_iter()
                    .filter(|s| !s.is_empty())
                    .collect::<Vec<_>>()
                    .join("*");
                (self.terms[&(i, j)].clone(), mono)
            })
            .collect();
        write_terms(f, &terms)
    }
}
