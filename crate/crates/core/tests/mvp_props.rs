use mvlab::expr::{eval, parse};
use mvlab::mvp::{
    builtin_catalog, builtin_field, check_ball_mvp, check_harmonicity, check_interval_mvp,
    check_sphere_mvp, check_v_constancy, check_weighted_property, mc_trial, BoxDomain,
    McCheckConfig, PropertyVerdict, WeightSpec, HOLDS_NOTE, MAX_COUNTEREXAMPLES, WEIGHTED_TOL,
};
use mvlab::integrate::Region;
use mvlab::mvroot::Interval;
use mvlab::Error;
use proptest::prelude::*;

fn domain() -> Interval {
    Interval::new(-2.0, 2.0).unwrap()
}

fn assert_verdict_invariants(v: &PropertyVerdict) {
    assert_eq!(v.holds, v.counterexamples.is_empty());
    assert!(v.worst_residual >= 0.0);
    assert!(v.counterexamples.len() <= MAX_COUNTEREXAMPLES);
    assert!(v.violations >= v.counterexamples.len());
    assert_eq!(v.residuals.len(), v.trials);
}

fn small_cfg(n: usize, seed: u64) -> McCheckConfig {
    let mut cfg = McCheckConfig::new(n).unwrap();
    cfg.trials = 8;
    cfg.samples = 40_000;
    cfg.seed = seed;
    cfg
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn quadratics_hold_at_the_midpoint_only(
        c0 in -5.0f64..5.0,
        c1 in -5.0f64..5.0,
        c2 in prop_oneof![-5.0f64..-0.1, 0.1f64..5.0],
        seed in any::<u64>(),
    ) {
        let f = parse(&format!("{c2}*x^2 + {c1}*x + {c0}")).unwrap();
        let mid = check_weighted_property(&f, 0.5, 100, domain(), seed, WEIGHTED_TOL).unwrap();
        prop_assert!(mid.holds, "{:?}", mid.worst_case);
        for lambda in [0.25, 0.75] {
            let v = check_weighted_property(&f, lambda, 100, domain(), seed, WEIGHTED_TOL).unwrap();
            prop_assert!(!v.holds);
            assert_verdict_invariants(&v);
        }
    }

    #[test]
    fn affine_functions_hold_at_every_weight(
        c0 in -5.0f64..5.0,
        c1 in -5.0f64..5.0,
        lambda in 0.01f64..0.99,
        seed in any::<u64>(),
    ) {
        let f = parse(&format!("{c1}*x + {c0}")).unwrap();
        let v = check_weighted_property(&f, lambda, 100, domain(), seed, WEIGHTED_TOL).unwrap();
        prop_assert!(v.holds);
        let v = check_interval_mvp(&f, lambda, 100, domain(), seed, WEIGHTED_TOL).unwrap();
        prop_assert!(v.holds);
    }

    #[test]
    fn secant_and_integral_forms_agree(
        i in 0usize..8,
        lambda in prop::sample::select(vec![0.2, 0.25, 0.5, 0.6, 0.9]),
        seed in any::<u64>(),
    ) {
        let corpus = ["x^3", "exp(x)", "sin(2*x)", "x^2 - 3*x", "tanh(x)", "sqrt(x + 3)", "4*x", "cos(x)^2"];
        let f = parse(corpus[i]).unwrap();
        let a = check_weighted_property(&f, lambda, 50, domain(), seed, WEIGHTED_TOL).unwrap();
        let b = check_interval_mvp(&f, lambda, 50, domain(), seed, WEIGHTED_TOL).unwrap();
        prop_assert_eq!(a.holds, b.holds);
        prop_assert!((a.worst_residual - b.worst_residual).abs() <= 1e-6);
    }
}

#[test]
fn one_dimensional_reference_cases() {
    let d = domain();
    assert!(check_weighted_property(&parse("x^2").unwrap(), 0.5, 200, d, 0, WEIGHTED_TOL).unwrap().holds);
    let v = check_weighted_property(&parse("x^3").unwrap(), 0.5, 200, d, 0, WEIGHTED_TOL).unwrap();
    assert!(!v.holds);
    assert_ne!(v.note, HOLDS_NOTE);
    assert!(!check_weighted_property(&parse("x^2").unwrap(), 0.3, 200, d, 0, WEIGHTED_TOL).unwrap().holds);
    let err = check_weighted_property(&parse("log(x)").unwrap(), 0.5, 10, d, 0, WEIGHTED_TOL).unwrap_err();
    assert!(matches!(err, Error::At { .. }), "{err:?}");
}

#[test]
fn constant_along_v_family_passes_everything() {
    let cases = [
        ("vconst_harmonic", 3),
        ("vconst_harmonic_4", 4),
        ("harmonic2d_3", 3),
        ("coordinate_2", 2),
        ("coordinate_1", 3),
        ("affine", 2),
        ("affine", 4),
    ];
    for (name, n) in cases {
        let field = builtin_field(name, n).unwrap();
        let v = field.constant_direction.clone().unwrap();
        let dom = BoxDomain::new(-2.0, 2.0, n).unwrap();
        assert!(check_harmonicity(&field.expr, dom, 50, 1, 1e-8).unwrap().holds, "{name}");
        assert!(check_v_constancy(&field.expr, &v, dom, 50, 1, 1e-8).unwrap().holds, "{name}");
        for lambda in [0.3, 0.5, 0.7] {
            let w = WeightSpec::new(lambda, v.clone()).unwrap();
            let cfg = small_cfg(n, 3);
            let ball = check_ball_mvp(&field.expr, &w, &cfg).unwrap();
            let sphere = check_sphere_mvp(&field.expr, &w, &cfg).unwrap();
            assert_verdict_invariants(&ball);
            assert!(ball.holds, "{name} n={n} ball lambda={lambda}: {ball:?}");
            assert!(sphere.holds, "{name} n={n} sphere lambda={lambda}: {sphere:?}");
        }
    }
}

#[test]
fn harmonic_but_not_constant_along_v_needs_the_midpoint() {
    let g = builtin_field("harmonic2d_2", 2).unwrap().expr;
    let cfg = small_cfg(2, 4);
    let off = WeightSpec::new(0.3, vec![1.0, 0.0]).unwrap();
    let v = check_ball_mvp(&g, &off, &cfg).unwrap();
    assert!(!v.holds);
    assert_verdict_invariants(&v);
    let mid = WeightSpec::new(0.5, vec![1.0, 0.0]).unwrap();
    assert!(check_ball_mvp(&g, &mid, &cfg).unwrap().holds);

    // g(1.2, 2) − g(1, 2)
    let t = mc_trial(&g, &off, Region::Ball, &[1.0, 2.0], 0.5, 200_000, 9, 1e-9, 1).unwrap();
    assert!((t.residual - 0.44).abs() <= f64::max(0.01, 4.0 * t.average.stderr));
    assert!(t.violated());
}

#[test]
fn midpoint_weight_ignores_direction() {
    let g = parse("x1^3 - 3*x1*x2^2 + x3").unwrap();
    let cfg = small_cfg(3, 5);
    let a = check_ball_mvp(&g, &WeightSpec::new(0.5, vec![1.0, 0.0, 0.0]).unwrap(), &cfg).unwrap();
    let s = 3f64.sqrt().recip();
    let b = check_ball_mvp(&g, &WeightSpec::new(0.5, vec![s, -s, s]).unwrap(), &cfg).unwrap();
    assert_eq!(a.residuals, b.residuals);
    assert!(a.holds);
}

#[test]
fn non_harmonic_fields_are_caught() {
    let g = parse("x^2 + y^2").unwrap();
    let w = WeightSpec::new(0.5, vec![0.0, 1.0]).unwrap();
    let cfg = small_cfg(2, 6);
    assert!(!check_ball_mvp(&g, &w, &cfg).unwrap().holds);
    assert!(!check_sphere_mvp(&g, &w, &cfg).unwrap().holds);
    let dom = BoxDomain::new(-2.0, 2.0, 2).unwrap();
    assert!(!check_harmonicity(&g, dom, 20, 0, 1e-8).unwrap().holds);
    let radial = builtin_field("radial_sq", 3).unwrap();
    assert!(!radial.harmonic && radial.constant_direction.is_none());
}

#[test]
fn catalog_entries_are_consistent() {
    for n in 1..=5 {
        for field in builtin_catalog(n) {
            assert!(field.expr.max_var() <= n, "{} in {n}", field.name);
            if let Some(v) = &field.constant_direction {
                let p = vec![0.7; n];
                let q: Vec<f64> = p.iter().zip(v).map(|(x, v)| x + 0.3 * v).collect();
                let (gp, gq) = (eval(&field.expr, &p).unwrap(), eval(&field.expr, &q).unwrap());
                assert!((gp - gq).abs() <= 1e-12 * (1.0 + gp.abs()), "{}", field.name);
            }
        }
    }
}
