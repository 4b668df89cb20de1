//! How fast the abscissa approaches the midpoint as the interval shrinks.

use mvlab::expr::parse;
use mvlab::mvroot::sweep_lambda;

fn main() -> mvlab::Result<()> {
    for (text, x0) in [("exp(x)", 0.0), ("x^3", 0.0), ("sin(x)", 1.0), ("x^2", 3.0)] {
        let t = sweep_lambda(&parse(text)?, x0, 1e-3, 1e-1, 20)?;
        let fmt = |o: Option<f64>| o.map_or("undefined".to_string(), |v| format!("{v:.4}"));
        println!(
            "{text:<8} x0={x0}: |c - x0| order {}, |lambda - 1/2| order {}",
            fmt(t.fitted_order),
            fmt(t.lambda_order)
        );
    }
    println!();
    print!("{}", sweep_lambda(&parse("exp(x)")?, 0.0, 1e-3, 1e-1, 6)?.to_csv());
    Ok(())
}
