use serde::Serialize;

use crate::expr::{parse, Expr};
use crate::{Error, Result};

const AFFINE_COEFFS: [f64; 10] = [2.0, -1.0, 0.5, 3.0, -0.25, 1.5, -2.0, 0.75, 1.0, -1.25];

/// A named field from the built-in library.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BuiltinField {
    pub name: String,
    pub dim: usize,
    #[serde(serialize_with = "as_canonical")]
    pub expr: Expr,
    pub harmonic: bool,
    /// A unit direction the field is constant along, if it has one.
    pub constant_direction: Option<Vec<f64>>,
}

fn as_canonical<S: serde::Serializer>(e: &Expr, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&e.to_canonical())
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn power_text(var: &str, p: u32) -> Option<String> {
    match p {
        0 => None,
        1 => Some(var.to_string()),
        _ => Some(format!("{var}^{p}")),
    }
}

/// `Re (x1 + i·x2)^k` written out as a polynomial.
pub fn harmonic2d_text(k: u32) -> String {
    if k == 0 {
        return "1".into();
    }
    let mut out = String::new();
    for j in (0..=k).step_by(2) {
        let c = binomial(k.into(), j.into());
        let negative = (j / 2) % 2 == 1;
        let mut factors: Vec<String> = Vec::new();
        if c != 1 {
            factors.push(c.to_string());
        }
        factors.extend(power_text("x1", k - j));
        factors.extend(power_text("x2", j));
        let term = factors.join("*");
        if out.is_empty() {
            if negative {
                out.push('-');
            }
            out.push_str(&term);
        } else {
            out.push_str(if negative { " - " } else { " + " });
            out.push_str(&term);
        }
    }
    out
}

fn axis(n: usize, i: usize) -> Vec<f64> {
    let mut e = vec![0.0; n];
    e[i] = 1.0;
    e
}

fn parse_builtin(text: &str) -> Expr {
    parse(text).expect("built-in field text parses")
}

fn check_n(n: usize, min: usize, name: &str) -> Result<()> {
    if !(min..=10).contains(&n) {
        return Err(Error::invalid(format!("{name} needs dimension in {min}..=10, got {n}")));
    }
    Ok(())
}

fn suffix(name: &str, prefix: &str) -> Option<Result<u32>> {
    let rest = name.strip_prefix(prefix)?;
    Some(
        rest.parse::<u32>()
            .map_err(|_| Error::invalid(format!("bad index in builtin name '{name}'"))),
    )
}

/// Look up a built-in field for dimension `n`.
///
/// * `harmonic2d_k` (`k ≤ 6`): `Re (x1 + i·x2)^k`; for `n ≥ 3` it is
///   constant along the last axis.
/// * `vconst_harmonic` / `vconst_harmonic_k` (`n ≥ 3`, default `k = 2`):
///   the same polynomial, flagged as a lift constant along `x_n`.
/// * `coordinate_i`: `x_i`.
/// * `radial_sq`: `Σ x_i²` (not harmonic).
/// * `affine`: `1 + Σ c_i x_i` with fixed coefficients.
pub fn builtin_field(name: &str, n: usize) -> Result<BuiltinField> {
    let (expr, harmonic, constant_direction, min_dim) =
        if let Some(k) = suffix(name, "harmonic2d_") {
            let k = k?;
            if k > 6 {
                return Err(Error::invalid(format!("harmonic2d_k needs k <= 6, got {k}")));
            }
            check_n(n, 2, name)?;
            let dir = (n >= 3).then(|| axis(n, n - 1));
            (parse_builtin(&harmonic2d_text(k)), true, dir, 2)
        } else if name == "vconst_harmonic" || name.starts_with("vconst_harmonic_") {
            let k = match suffix(name, "vconst_harmonic_") {
                Some(k) => k?,
                None => 2,
            };
            if k > 6 {
                return Err(Error::invalid(format!("vconst_harmonic_k needs k <= 6, got {k}")));
            }
            check_n(n, 3, name)?;
            (parse_builtin(&harmonic2d_text(k)), true, Some(axis(n, n - 1)), 3)
        } else if let Some(i) = suffix(name, "coordinate_") {
            let i = i? as usize;
            check_n(n, 1, name)?;
            if !(1..=n).contains(&i) {
                return Err(Error::invalid(format!("{name} needs 1 <= i <= {n}")));
            }
            let dir = (n >= 2).then(|| axis(n, if i == n { 0 } else { n - 1 }));
            (Expr::var(i), true, dir, 1)
        } else if name == "radial_sq" {
            check_n(n, 1, name)?;
            let text = (1..=n).map(|i| format!("x{i}^2")).collect::<Vec<_>>().join(" + ");
            (parse_builtin(&text), false, None, 1)
        } else if name == "affine" {
            check_n(n, 1, name)?;
            let text = std::iter::once("1".to_string())
                .chain((1..=n).map(|i| format!("{}*x{i}", AFFINE_COEFFS[i - 1])))
                .collect::<Vec<_>>()
                .join(" + ");
            // perpendicular to the coefficient vector in the (x1, x2) plane
            let dir = (n >= 2).then(|| {
                let (c1, c2) = (AFFINE_COEFFS[0], AFFINE_COEFFS[1]);
                let norm = (c1 * c1 + c2 * c2).sqrt();
                let mut v = vec![0.0; n];
                v[0] = c2 / norm;
                v[1] = -c1 / norm;
                v
            });
            (parse_builtin(&text), true, dir, 1)
        } else {
            return Err(Error::invalid(format!("unknown builtin field '{name}'")));
        };
    debug_assert!(n >= min_dim);
    Ok(BuiltinField {
        name: name.to_string(),
        dim: n,
        expr,
        harmonic,
        constant_direction,
    })
}

/// Every catalog entry available in dimension `n`.
pub fn builtin_catalog(n: usize) -> Vec<BuiltinField> {
    let mut names: Vec<String> = Vec::new();
    if n >= 2 {
        names.extend((0..=6).map(|k| format!("harmonic2d_{k}")));
    }
    if n >= 3 {
        names.extend((1..=6).map(|k| format!("vconst_harmonic_{k}")));
    }
    names.extend((1..=n).map(|i| format!("coordinate_{i}")));
    names.push("radial_sq".into());
    names.push("affine".into());
    names
        .iter()
        .filter_map(|name| builtin_field(name, n).ok())
        .collect()
}
