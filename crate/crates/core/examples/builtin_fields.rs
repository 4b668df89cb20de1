//! The built-in field library and its pointwise checks.

use mvlab::mvp::{builtin_catalog, check_harmonicity, check_v_constancy, BoxDomain};

fn main() -> mvlab::Result<()> {
    let n = 3;
    let domain = BoxDomain::new(-2.0, 2.0, n)?;
    for field in builtin_catalog(n) {
        let harmonic = check_harmonicity(&field.expr, domain, 50, 0, 1e-8)?;
        let constant = match &field.constant_direction {
            Some(v) => format!("{}", check_v_constancy(&field.expr, v, domain, 50, 0, 1e-8)?.holds),
            None => "-".into(),
        };
        println!(
            "{:<20} {:<40} harmonic={:<5} (checked {:<5}) constant along v: {constant}",
            field.name,
            field.expr.to_canonical(),
            field.harmonic,
            harmonic.holds
        );
    }
    Ok(())
}
