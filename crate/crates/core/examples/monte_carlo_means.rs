//! Monte Carlo averages over balls and spheres, sequential and chunked.

use mvlab::expr::parse;
use mvlab::integrate::{mc_average, mc_average_chunked, BallSpec, Region};

fn main() -> mvlab::Result<()> {
    let cases = [
        ("x^2 - y^2", vec![1.0, 2.0], 0.5),
        ("x^2 + y^2", vec![0.0, 0.0], 1.0),
        ("x1*x2*x3 + x3^2", vec![0.5, -0.5, 1.0], 0.8),
    ];
    for (text, center, h) in cases {
        let g = parse(text)?;
        let spec = BallSpec::new(center.clone(), h)?;
        for region in [Region::Ball, Region::Sphere] {
            let seq = mc_average(&g, &spec, region, 400_000, 1)?;
            let par = mc_average_chunked(&g, &spec, region, 400_000, 1, 4)?;
            println!(
                "{text:<16} {region:?} about {center:?}, h={h}: {:.6} ± {:.1e} (chunked {:.6})",
                seq.estimate, seq.stderr, par.estimate
            );
        }
    }
    Ok(())
}
