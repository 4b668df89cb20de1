//! Abscissa ratio for x^(k+1) on [0, b] with the left endpoint pinned.

use mvlab::exactpoly::lambda_family;

fn main() -> mvlab::Result<()> {
    println!("{:>3} {:>18} {:>18} {:>18} {:>10}", "k", "c/b", "1 - c/b", "root finder", "residual");
    for k in 1..=20 {
        let f = lambda_family(k)?;
        println!(
            "{k:>3} {:>18.15} {:>18.15} {:>18.15} {:>10.1e}",
            f.ratio, f.lambda_weight_on_a, f.root_ratio, f.residual_check
        );
    }
    Ok(())
}
