use std::ops::{Add, Div, Mul, Neg, Sub};

use super::ast::{BinaryOp, Expr, Func};
use super::ExprError;

/// Number-like type an expression can be evaluated over.
///
/// Implemented for `f64` and the forward-mode types in
/// [`crate::calculus`]. Domain checks are made on [`Scalar::value`], so
/// every implementation rejects exactly the same inputs.
pub trait Scalar:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn constant(v: f64) -> Self;
    fn value(&self) -> f64;

    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn sqrt(self) -> Self;
    fn tanh(self) -> Self;
    /// `None` when the absolute value has no derivative at this point.
    fn abs(self) -> Option<Self>;
    /// `self^p` for a constant exponent.
    fn powf(self, p: f64) -> Self;
    /// `self^rhs` for a variable exponent; the base is positive.
    fn pow(self, rhs: Self) -> Self;
}

impl Scalar for f64 {
    fn constant(v: f64) -> Self {
        v
    }
    fn value(&self) -> f64 {
        *self
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn tanh(self) -> Self {
        f64::tanh(self)
    }
    fn abs(self) -> Option<Self> {
        Some(f64::abs(self))
    }
    fn powf(self, p: f64) -> Self {
        f64::powf(self, p)
    }
    fn pow(self, rhs: Self) -> Self {
        f64::powf(self, rhs)
    }
}

/// Evaluate at a point; `point[i]` binds `x{i+1}`.
pub fn eval(ast: &Expr, point: &[f64]) -> Result<f64, ExprError> {
    eval_scalar(ast, point)
}

/// Generic evaluation over any [`Scalar`].
pub fn eval_scalar<S: Scalar>(ast: &Expr, point: &[S]) -> Result<S, ExprError> {
    match ast {
        Expr::Num(v) => Ok(S::constant(*v)),
        Expr::Var(i) => point
            .get(i - 1)
            .copied()
            .ok_or(ExprError::UnboundVariable(*i)),
        Expr::Neg(e) => Ok(-eval_scalar(e, point)?),
        Expr::Binary(op, l, r) => {
            let lhs = eval_scalar(l, point)?;
            match op {
                BinaryOp::Add => Ok(lhs + eval_scalar(r, point)?),
                BinaryOp::Sub => Ok(lhs - eval_scalar(r, point)?),
                BinaryOp::Mul => Ok(lhs * eval_scalar(r, point)?),
                BinaryOp::Div => {
                    let rhs = eval_scalar(r, point)?;
                    if rhs.value() == 0.0 {
                        return Err(domain(ast, "division by zero", rhs.value()));
                    }
                    Ok(lhs / rhs)
                }
                BinaryOp::Pow => eval_pow(ast, lhs, r, point),
            }
        }
        Expr::Call(func, arg) => {
            let u = eval_scalar(arg, point)?;
            let x = u.value();
            Ok(match func {
                Func::Sin => u.sin(),
                Func::Cos => u.cos(),
                Func::Exp => u.exp(),
                Func::Tanh => u.tanh(),
                Func::Log => {
                    if x <= 0.0 {
                        return Err(domain(ast, "log of non-positive argument", x));
                    }
                    u.ln()
                }
                Func::Sqrt => {
                    if x < 0.0 {
                        return Err(domain(ast, "sqrt of negative argument", x));
                    }
                    u.sqrt()
                }
                Func::Abs => u
                    .abs()
                    .ok_or_else(|| ExprError::DerivativeUndefined(ast.to_canonical()))?,
            })
        }
    }
}

fn eval_pow<S: Scalar>(ast: &Expr, base: S, exponent: &Expr, point: &[S]) -> Result<S, ExprError> {
    let b = base.value();
    if exponent.is_closed() {
        // constant exponent: negative bases are fine for integer powers
        let p: f64 = eval(exponent, &[])?;
        if b < 0.0 && p.fract() != 0.0 {
            return Err(domain(ast, "negative base with non-integer exponent", b));
        }
        if b == 0.0 && p < 0.0 {
            return Err(domain(ast, "zero raised to a negative power", b));
        }
        return Ok(base.powf(p));
    }
    let rhs = eval_scalar(exponent, point)?;
    if b <= 0.0 {
        return Err(domain(ast, "non-positive base with variable exponent", b));
    }
    Ok(base.pow(rhs))
}

fn domain(ast: &Expr, reason: &'static str, argument: f64) -> ExprError {
    ExprError::Domain {
        reason,
        argument,
        subexpr: ast.to_canonical(),
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;

    fn at(src: &str, point: &[f64]) -> Result<f64, ExprError> {
        eval(&parse(src).unwrap(), point)
    }

    #[test]
    fn arithmetic() {
        assert_eq!(at("x^2 + 3*x", &[2.0]).unwrap(), 10.0);
        assert_eq!(at("sin(x)", &[0.0]).unwrap(), 0.0);
        assert_eq!(at("2+3*4", &[]).unwrap(), 14.0);
        assert_eq!(at("-x^2", &[2.0]).unwrap(), -4.0);
        assert_eq!(at("2^3^2", &[]).unwrap(), 512.0);
        assert_eq!(at("x*y - z", &[2.0, 3.0, 1.0]).unwrap(), 5.0);
    }

    #[test]
    fn domain_errors() {
        match at("1 + log(x)", &[-1.0]) {
            Err(ExprError::Domain { subexpr, argument, .. }) => {
                assert_eq!(subexpr, "log(x1)");
                assert_eq!(argument, -1.0);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(at("sqrt(x)", &[-4.0]), Err(ExprError::Domain { .. })));
        assert!(matches!(at("1/x", &[0.0]), Err(ExprError::Domain { .. })));
        assert!(matches!(at("x^0.5", &[-1.0]), Err(ExprError::Domain { .. })));
        assert!(matches!(at("x^-1", &[0.0]), Err(ExprError::Domain { .. })));
        assert!(matches!(at("x^y", &[-1.0, 2.0]), Err(ExprError::Domain { .. })));
        assert_eq!(at("x^3", &[-2.0]).unwrap(), -8.0);
    }

    #[test]
    fn unbound_variable() {
        assert!(matches!(at("x + y", &[1.0]), Err(ExprError::UnboundVariable(2))));
    }
}
