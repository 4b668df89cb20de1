//! Randomized checks of the weighted secant identity in one dimension, in
//! secant form and integral form.

use mvlab::expr::parse;
use mvlab::mvp::{check_interval_mvp, check_weighted_property, INTERVAL_TOL, WEIGHTED_TOL};
use mvlab::mvroot::Interval;

fn main() -> mvlab::Result<()> {
    let domain = Interval::new(-2.0, 2.0)?;
    for text in ["3*x - 1", "x^2 + x", "x^3", "exp(x)"] {
        let f = parse(text)?;
        for lambda in [0.5, 0.3] {
            let secant = check_weighted_property(&f, lambda, 200, domain, 7, WEIGHTED_TOL)?;
            let integral = check_interval_mvp(&f, lambda, 200, domain, 7, INTERVAL_TOL)?;
            println!(
                "{text:<8} lambda={lambda}: secant holds={:<5} worst {:.2e}; integral holds={:<5} worst {:.2e}",
                secant.holds, secant.worst_residual, integral.holds, integral.worst_residual
            );
        }
    }
    Ok(())
}
