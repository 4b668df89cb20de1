//! Forward-mode derivatives: third-order jets in 1-D, gradient and
//! Laplacian in n-D.

use mvlab::calculus::{derivatives_1d, directional_derivative, gradient, laplacian};
use mvlab::expr::parse;

fn main() -> mvlab::Result<()> {
    for (text, x) in [("x^3", 2.0), ("exp(x)*sin(x)", 0.7), ("x^x", 1.5)] {
        let d = derivatives_1d(&parse(text)?, x)?;
        println!("{text:<14} at {x}: f={:.6} f'={:.6} f''={:.6} f'''={:.6}", d.value, d.d1, d.d2, d.d3);
    }

    let g = parse("x1^3 - 3*x1*x2^2 + x3^2")?;
    let p = [1.0, 0.5, -2.0];
    println!("gradient  {:?}", gradient(&g, &p)?);
    println!("laplacian {}", laplacian(&g, &p)?);
    println!("d/dv, v = e3: {}", directional_derivative(&g, &p, &[0.0, 0.0, 1.0])?);

    match derivatives_1d(&parse("abs(x)")?, 0.0) {
        Ok(_) => unreachable!(),
        Err(e) => println!("abs at 0: {e}"),
    }
    Ok(())
}
