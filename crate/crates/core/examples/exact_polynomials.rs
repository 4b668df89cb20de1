//! Exact symbolic residuals p(b) - p(a) - (b - a)·p'(λa + (1 - λ)b).

use mvlab::exactpoly::{classify, parse_rational, predicted_to_satisfy, RationalPolynomial};

fn main() -> mvlab::Result<()> {
    let polys = [
        RationalPolynomial::from_i64(&[5, -2]),
        RationalPolynomial::from_i64(&[1, 2, 3]),
        RationalPolynomial::from_i64(&[0, 0, 0, 1]),
        RationalPolynomial::from_i64(&[1, 0, -4, 0, 1]),
    ];
    for lambda in ["1/2", "1/3", "9/10"] {
        let lam = parse_rational(lambda)?;
        for p in &polys {
            let c = classify(p, &lam)?;
            println!(
                "lambda {lambda:<4} p = {p:<22} satisfies={:<5} predicted={:<5} residual {}",
                c.satisfies,
                predicted_to_satisfy(p, &lam),
                c.residual.display()
            );
        }
    }
    Ok(())
}
