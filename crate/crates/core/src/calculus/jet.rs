use std::ops::{Add, Div, Mul, Neg, Sub};

use super::{power_derivatives, Taylor};
use crate::expr::Scalar;

/// Order-3 univariate jet. `d2` and `d3` hold the derivatives themselves,
/// not Taylor coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet3 {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
}

impl Jet3 {
    pub fn new(value: f64, d1: f64, d2: f64, d3: f64) -> Self {
        Jet3 { value, d1, d2, d3 }
    }

    /// The independent variable at `x`.
    pub fn variable(x: f64) -> Self {
        Jet3::new(x, 1.0, 0.0, 0.0)
    }

    /// Faà di Bruno through order 3.
    fn chain(self, t: Taylor) -> Self {
        let [f0, f1, f2, f3] = t;
        let (u1, u2, u3) = (self.d1, self.d2, self.d3);
        Jet3 {
            value: f0,
            d1: f1 * u1,
            d2: f2 * u1 * u1 + f1 * u2,
            d3: f3 * u1 * u1 * u1 + 3.0 * f2 * u1 * u2 + f1 * u3,
        }
    }
}

impl Add for Jet3 {
    type Output = Jet3;
    fn add(self, r: Jet3) -> Jet3 {
        Jet3::new(self.value + r.value, self.d1 + r.d1, self.d2 + r.d2, self.d3 + r.d3)
    }
}

impl Sub for Jet3 {
    type Output = Jet3;
    fn sub(self, r: Jet3) -> Jet3 {
        Jet3::new(self.value - r.value, self.d1 - r.d1, self.d2 - r.d2, self.d3 - r.d3)
    }
}

impl Neg for Jet3 {
    type Output = Jet3;
    fn neg(self) -> Jet3 {
        Jet3::new(-self.value, -self.d1, -self.d2, -self.d3)
    }
}

impl Mul for Jet3 {
    type Output = Jet3;
    fn mul(self, r: Jet3) -> Jet3 {
        let (u, v) = (self, r);
        Jet3 {
            value: u.value * v.value,
            d1: u.d1 * v.value + u.value * v.d1,
            d2: u.d2 * v.value + 2.0 * u.d1 * v.d1 + u.value * v.d2,
            d3: u.d3 * v.value + 3.0 * (u.d2 * v.d1 + u.d1 * v.d2) + u.value * v.d3,
        }
    }
}

impl Div for Jet3 {
    type Output = Jet3;
    // from u = q·v and Leibniz
    fn div(self, r: Jet3) -> Jet3 {
        let (u, v) = (self, r);
        let q0 = u.value / v.value;
        let q1 = (u.d1 - q0 * v.d1) / v.value;
        let q2 = (u.d2 - 2.0 * q1 * v.d1 - q0 * v.d2) / v.value;
        let q3 = (u.d3 - 3.0 * q2 * v.d1 - 3.0 * q1 * v.d2 - q0 * v.d3) / v.value;
        Jet3::new(q0, q1, q2, q3)
    }
}

impl Scalar for Jet3 {
    fn constant(v: f64) -> Self {
        Jet3::new(v, 0.0, 0.0, 0.0)
    }
    fn value(&self) -> f64 {
        self.value
    }
    fn sin(self) -> Self {
        let (s, c) = self.value.sin_cos();
        self.chain([s, c, -s, -c])
    }
    fn cos(self) -> Self {
        let (s, c) = self.value.sin_cos();
        self.chain([c, -s, -c, s])
    }
    fn exp(self) -> Self {
        let e = self.value.exp();
        self.chain([e, e, e, e])
    }
    fn ln(self) -> Self {
        let x = self.value;
        self.chain([x.ln(), 1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x)])
    }
    fn sqrt(self) -> Self {
        let s = self.value.sqrt();
        let x = self.value;
        self.chain([s, 0.5 / s, -0.25 / (x * s), 0.375 / (x * x * s)])
    }
    fn tanh(self) -> Self {
        let t = self.value.tanh();
        let sech2 = 1.0 - t * t;
        self.chain([t, sech2, -2.0 * t * sech2, sech2 * (6.0 * t * t - 2.0)])
    }
    fn abs(self) -> Option<Self> {
        if self.value == 0.0 {
            return None;
        }
        let s = self.value.signum();
        Some(self.chain([self.value.abs(), s, 0.0, 0.0]))
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
