//! Numerical and exact tools for constrained mean value theorems.
//!
//! * [`expr`] parses and evaluates the functions under test.
//! * [`calculus`] supplies derivatives by forward-mode differentiation.
//! * [`exactpoly`] decides the weighted mean value identity exactly for
//!   rational polynomials.
//! * [`mvroot`] locates mean value abscissas and their weights.
//! * [`integrate`] provides Gauss–Legendre quadrature and seeded Monte Carlo
//!   averages over balls and spheres.
//! * [`mvp`] holds the randomized property checkers and a library of
//!   harmonic fields.
//! * [`cli`] is the command-line front end behind the `mvlab` binary.

pub mod calculus;
pub mod cli;
pub mod exactpoly;
pub mod expr;
pub mod integrate;
pub mod mvp;
pub mod mvroot;

mod error;

pub use error::Error;
pub use expr::{parse, Expr};

pub type Result<T, E = Error> = std::result::Result<T, E>;
