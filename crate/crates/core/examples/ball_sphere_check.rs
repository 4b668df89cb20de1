//! Weighted ball and sphere mean value checks in n dimensions.

use mvlab::expr::parse;
use mvlab::mvp::{builtin_field, check_ball_mvp, check_sphere_mvp, McCheckConfig, WeightSpec};

fn main() -> mvlab::Result<()> {
    let mut cases = vec![];
    let lifted = builtin_field("vconst_harmonic", 3)?;
    cases.push(("x1^2 - x2^2 in 3-D, v = e3", lifted.expr, vec![0.0, 0.0, 1.0]));
    cases.push(("x^2 - y^2, v = e1", parse("x^2 - y^2")?, vec![1.0, 0.0]));
    cases.push(("x^2 + y^2, v = e2", parse("x^2 + y^2")?, vec![0.0, 1.0]));

    for (label, g, v) in cases {
        let mut cfg = McCheckConfig::new(v.len())?;
        cfg.trials = 10;
        cfg.samples = 100_000;
        for lambda in [0.5, 0.3] {
            let w = WeightSpec::new(lambda, v.clone())?;
            let ball = check_ball_mvp(&g, &w, &cfg)?;
            let sphere = check_sphere_mvp(&g, &w, &cfg)?;
            println!(
                "{label:<28} lambda={lambda}: ball {}/{} violations, sphere {}/{} violations",
                ball.violations, ball.trials, sphere.violations, sphere.trials
            );
        }
    }
    Ok(())
}
