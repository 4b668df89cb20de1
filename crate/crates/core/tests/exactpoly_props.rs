use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use mvlab::exactpoly::{
    classify, fixed_left_residual, lambda_family, mvt_residual, parse_rational,
    predicted_to_satisfy, to_f64, RationalPolynomial, DEGREE_CAP,
};
use mvlab::Error;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn lambdas() -> [BigRational; 4] {
    [rat(1, 2), rat(1, 3), rat(2, 5), rat(9, 10)]
}

/// Residual at one rational point via the univariate evaluator.
fn pointwise(p: &RationalPolynomial, lambda: &BigRational, a: &BigRational, b: &BigRational) -> BigRational {
    let c = lambda * a + (BigRational::one() - lambda) * b;
    p.eval(b) - p.eval(a) - (b - a) * p.derivative().eval(&c)
}

#[test]
fn exhaustive_monomial_dichotomy() {
    let (a, b) = (rat(-3, 7), rat(5, 4));
    for d in 0..=8 {
        let p = RationalPolynomial::monomial(d);
        for lambda in lambdas() {
            let expected = d <= 1 || (d == 2 && lambda == rat(1, 2));
            let c = classify(&p, &lambda).unwrap();
            assert_eq!(c.satisfies, expected, "x^{d} at lambda {lambda}");
            assert_eq!(predicted_to_satisfy(&p, &lambda), expected);
            assert_eq!(c.residual.is_identically_zero, c.residual.poly.is_zero());
            assert_eq!(pointwise(&p, &lambda, &a, &b).is_zero(), expected, "x^{d} at {lambda}");
            assert_eq!(c.residual.poly.eval(&a, &b), pointwise(&p, &lambda, &a, &b));
        }
    }
}

#[test]
fn residual_shapes() {
    let r = mvt_residual(&RationalPolynomial::monomial(3), &rat(1, 2)).unwrap();
    assert_eq!(r.display(), "(1/4)(b-a)^3");
    // (b−a)(a+b) − 2(b−a)(3a+7b)/10 = (b−a)(2a−2b)/5
    let r = mvt_residual(&RationalPolynomial::monomial(2), &rat(3, 10)).unwrap();
    assert_eq!(r.display(), "(-2/5)(b-a)^2");
    assert!(mvt_residual(&RationalPolynomial::monomial(DEGREE_CAP + 1), &rat(1, 2)).is_err());
    assert!(matches!(
        mvt_residual(&RationalPolynomial::monomial(2), &rat(3, 2)),
        Err(Error::InvalidArgument(_))
    ));
}

#[test]
fn rational_parsing() {
    assert_eq!(parse_rational("3/10").unwrap(), rat(3, 10));
    assert_eq!(parse_rational("-4").unwrap(), rat(-4, 1));
    assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
    assert_eq!(parse_rational("1.5e-2").unwrap(), rat(3, 200));
    assert!(parse_rational("1/0").is_err());
    assert!(parse_rational("x").is_err());
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-30i64..=30, 1i64..=9).prop_map(|(n, d)| rat(n, d))
}

fn poly(max_degree: usize) -> impl Strategy<Value = RationalPolynomial> {
    prop::collection::vec(rational(), 0..=max_degree + 1).prop_map(RationalPolynomial::from_coeffs)
}

fn lambda() -> impl Strategy<Value = BigRational> {
    prop::sample::select(lambdas().to_vec())
}

proptest! {
    #[test]
    fn residual_is_linear(p in poly(5), q in poly(5), alpha in rational(), lam in lambda()) {
        let rp = mvt_residual(&p, &lam).unwrap().poly;
        let rq = mvt_residual(&q, &lam).unwrap().poly;
        let sum = mvt_residual(&(&p + &q), &lam).unwrap().poly;
        prop_assert_eq!(sum, &rp + &rq);
        let scaled = mvt_residual(&p.scale(&alpha), &lam).unwrap().poly;
        prop_assert_eq!(scaled, rp.scale(&alpha));
    }

    #[test]
    fn satisfying_set_is_closed(p in poly(2), q in poly(2), alpha in rational(), lam in lambda()) {
        if classify(&p, &lam).unwrap().satisfies && classify(&q, &lam).unwrap().satisfies {
            prop_assert!(classify(&(&p + &q), &lam).unwrap().satisfies);
            prop_assert!(classify(&p.scale(&alpha), &lam).unwrap().satisfies);
        }
    }

    #[test]
    fn classification_matches_characterization(p in poly(6), lam in lambda()) {
        prop_assert_eq!(classify(&p, &lam).unwrap().satisfies, predicted_to_satisfy(&p, &lam));
    }

    #[test]
    fn lambda_family_tolerates_affine_terms(k in 1u32..=20, beta in rational(), gamma in rational()) {
        let fam = lambda_family(k).unwrap();
        let mut cs = vec![BigRational::zero(); k as usize + 2];
        cs[0] = gamma;
        cs[1] = beta;
        cs[k as usize + 1] = BigRational::one();
        let p = RationalPolynomial::from_coeffs(cs);
        prop_assert!(fixed_left_residual(&p, fam.ratio) <= 1e-12);
    }

    #[test]
    fn symbolic_residual_matches_float_evaluation(
        p in poly(5),
        lam in lambda(),
        ab in prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 20),
    ) {
        let r = mvt_residual(&p, &lam).unwrap();
        let l = to_f64(&lam);
        let dp = p.derivative();
        for (a, b) in ab {
            let c = l * a + (1.0 - l) * b;
            let (pa, pb, slope_term) = (p.eval_f64(a), p.eval_f64(b), (b - a) * dp.eval_f64(c));
            let direct = pb - pa - slope_term;
            let symbolic = r.poly.eval_f64(a, b);
            let scale = 1.0 + pa.abs() + pb.abs() + slope_term.abs();
            prop_assert!((direct - symbolic).abs() <= 1e-10 * scale, "{} vs {}", direct, symbolic);
        }
    }
}
