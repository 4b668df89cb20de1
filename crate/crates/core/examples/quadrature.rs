//! Gauss–Legendre quadrature and ball/sphere measures.

use mvlab::expr::parse;
use mvlab::integrate::{ball_volume, integrate_1d, sphere_area, GaussLegendre};

fn main() -> mvlab::Result<()> {
    let rule = GaussLegendre::new(5)?;
    println!("5-point nodes   {:?}", rule.nodes);
    println!("5-point weights {:?}", rule.weights);
    for (text, a, b) in [("x^9", 0.0, 1.0), ("sin(x)", 0.0, std::f64::consts::PI), ("exp(-x^2)", -3.0, 3.0)] {
        println!("∫ {text} over [{a}, {b:.4}] = {:.15}", integrate_1d(&parse(text)?, a, b, 64, 16)?);
    }
    for n in 1..=10 {
        let area = if n >= 2 { format!("{:.12}", sphere_area(n, 1.0)?) } else { "-".into() };
        println!("n={n:>2}  V={:.12}  S={area}", ball_volume(n, 1.0)?);
    }
    Ok(())
}
