use std::ops::{Add, Div, Mul, Neg, Sub};

use super::{power_derivatives, Taylor};
use crate::expr::Scalar;

/// Hyper-dual number `value + d_a·ε₁ + d_b·ε₂ + d_ab·ε₁ε₂` with
/// `ε₁² = ε₂² = 0`.
///
/// Seeding the input as `x + a·ε₁ + b·ε₂` leaves `d_ab = aᵀ H b`, so
/// `a = b = eᵢ` gives `∂²g/∂xᵢ²` with no truncation error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperDual {
    pub value: f64,
    pub d_a: f64,
    pub d_b: f64,
    pub d_ab: f64,
}

impl HyperDual {
    pub fn new(value: f64, d_a: f64, d_b: f64, d_ab: f64) -> Self {
        HyperDual { value, d_a, d_b, d_ab }
    }

    /// Seed a point with perturbation directions `a` and `b`.
    pub fn seed(x: &[f64], a: &[f64], b: &[f64]) -> Vec<HyperDual> {
        x.iter()
            .zip(a)
            .zip(b)
            .map(|((&x, &a), &b)| HyperDual::new(x, a, b, 0.0))
            .collect()
    }

    fn chain(self, t: Taylor) -> Self {
        let [f0, f1, f2, _] = t;
        HyperDual {
            value: f0,
            d_a: f1 * self.d_a,
            d_b: f1 * self.d_b,
            d_ab: f2 * self.d_a * self.d_b + f1 * self.d_ab,
        }
    }
}

impl Add for HyperDual {
    type Output = HyperDual;
    fn add(self, r: HyperDual) -> HyperDual {
        HyperDual::new(
            self.value + r.value,
            self.d_a + r.d_a,
            self.d_b + r.d_b,
            self.d_ab + r.d_ab,
        )
    }
}

impl Sub for HyperDual {
    type Output = HyperDual;
    fn sub(self, r: HyperDual) -> HyperDual {
        HyperDual::new(
            self.value - r.value,
            self.d_a - r.d_a,
            self.d_b - r.d_b,
            self.d_ab - r.d_ab,
        )
    }
}

impl Neg for HyperDual {
    type Output = HyperDual;
    fn neg(self) -> HyperDual {
        HyperDual::new(-self.value, -self.d_a, -self.d_b, -self.d_ab)
    }
}

impl Mul for HyperDual {
    type Output = HyperDual;
    fn mul(self, r: HyperDual) -> HyperDual {
        HyperDual {
            value: self.value * r.value,
            d_a: self.d_a * r.value + self.value * r.d_a,
            d_b: self.d_b * r.value + self.value * r.d_b,
            d_ab: self.d_ab * r.value
                + self.d_a * r.d_b
                + self.d_b * r.d_a
                + self.value * r.d_ab,
        }
    }
}

impl Div for HyperDual {
    type Output = HyperDual;
    fn div(self, r: HyperDual) -> HyperDual {
        let q0 = self.value / r.value;
        let qa = (self.d_a - q0 * r.d_a) / r.value;
        let qb = (self.d_b - q0 * r.d_b) / r.value;
        let qab = (self.d_ab - qa * r.d_b - qb * r.d_a - q0 * r.d_ab) / r.value;
        HyperDual::new(q0, qa, qb, qab)
    }
}

impl Scalar for HyperDual {
    fn constant(v: f64) -> Self {
        HyperDual::new(v, 0.0, 0.0, 0.0)
    }
    fn value(&self) -> f64 {
        self.value
    }
    fn sin(self) -> Self {
        let (s, c) = self.value.sin_cos();
        self.chain([s, c, -s, 0.0])
    }
    fn cos(self) -> Self {
        let (s, c) = self.value.sin_cos();
        self.chain([c, -s, -c, 0.0])
    }
    fn exp(self) -> Self {
        let e = self.value.exp();
        self.chain([e, e, e, 0.0])
    }
    fn ln(self) -> Self {
        let x = self.value;
        self.chain([x.ln(), 1.0 / x, -1.0 / (x * x), 0.0])
    }
    fn sqrt(self) -> Self {
        let s = self.value.sqrt();
        self.chain([s, 0.5 / s, -0.25 / (self.value * s), 0.0])
    }
    fn tanh(self) -> Self {
        let t = self.value.tanh();
        let sech2 = 1.0 - t * t;
        self.chain([t, sech2, -2.0 * t * sech2, 0.0])
    }
    fn abs(self) -> Option<Self> {
        if self.value == 0.0 {
            return None;
        }
        Some(self.chain([self.value.abs(), self.value.signum(), 0.0, 0.0]))
    }
    fn powf(self, p: f64) -> Self {
        self.chain(power_derivatives(self.value, p))
    }
    fn pow(self, rhs: Self) -> Self {
        let mut out = (rhs * self.ln()).exp();
        out.value = self.value.powf(rhs.value);
        out
    }
}
