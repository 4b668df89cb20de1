//! Every mean value abscissa of a function on an interval, with weights.
//!
//! cargo run --example abscissas -- "x^3" -1 1

use mvlab::expr::parse;
use mvlab::mvroot::{find_abscissas, Interval, DEFAULT_GRID, DEFAULT_TOL};

fn main() -> mvlab::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (text, a, b) = match args.as_slice() {
        [f, a, b] => (f.clone(), a.parse().unwrap_or(0.0), b.parse().unwrap_or(1.0)),
        _ => ("exp(x)".to_string(), 0.0, 1.0),
    };
    let f = parse(&text)?;
    let r = find_abscissas(&f, Interval::new(a, b)?, DEFAULT_GRID, DEFAULT_TOL)?;
    println!("{text} on [{a}, {b}], secant slope {}", r.average_slope);
    if r.degenerate {
        println!("f' equals the slope everywhere: every point is an abscissa");
    }
    for (c, l) in r.abscissas.iter().zip(&r.lambdas) {
        println!("  c = {c:.15}  lambda = {l:.15}");
    }
    Ok(())
}
