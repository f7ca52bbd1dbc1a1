//! Property tests for the algebraic invariants.

use num_traits::{One, Zero};
use proptest::prelude::*;

use pfe::exact::{degenerate_falling_factorial, falling_factorial, int, powu, rat_parse, ratio};
use pfe::export::{expansion_from_json, expansion_to_json, table_from_json, table_to_json};
use pfe::parse::parse_poly;
use pfe::represent::Theorem;
use pfe::stirling::{build_table, table_invert};
use pfe::umbral::OperatorSeries;
use pfe::{FamilySpec, MomentModel, Rational, Representer, StirlingFamily, TruncatedSeries, XPolynomial};

fn rational() -> impl Strategy<Value = Rational> {
    (-60i64..=60, 1i64..=24).prop_map(|(n, d)| ratio(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |q| !q.is_zero())
}

fn series(order: usize) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(rational(), order + 1).prop_map(TruncatedSeries::new)
}

fn delta_series(order: usize) -> impl Strategy<Value = TruncatedSeries> {
    (nonzero_rational(), prop::collection::vec(rational(), order - 1)).prop_map(|(c1, rest)| {
        let mut c = vec![Rational::zero(), c1];
        c.extend(rest);
        TruncatedSeries::new(c)
    })
}

fn poly(max_degree: usize) -> impl Strategy<Value = XPolynomial> {
    prop::collection::vec(rational(), 1..=max_degree + 1).prop_map(XPolynomial::new)
}

fn model() -> impl Strategy<Value = MomentModel> {
    prop_oneof![
        Just(MomentModel::unit()),
        (1i64..=9).prop_map(|k| MomentModel::bernoulli(ratio(k, 9)).unwrap()),
        (1i64..=12).prop_map(|k| MomentModel::poisson(ratio(k, 4)).unwrap()),
        (1i64..=8).prop_map(|k| MomentModel::geometric(ratio(k, 9)).unwrap()),
        (1i64..=12).prop_map(|k| MomentModel::exponential(ratio(k, 3)).unwrap()),
    ]
}

fn u_value() -> impl Strategy<Value = Rational> {
    rational().prop_filter("u != 1", |u| !u.is_one())
}

fn lambda_value() -> impl Strategy<Value = Rational> {
    prop_oneof![Just(int(0)), (-8i64..=8, 1i64..=8).prop_map(|(n, d)| ratio(n, d))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn reversion_round_trips(a in delta_series(12)) {
        let b = a.reversion().unwrap();
        let t = TruncatedSeries::identity(12);
        prop_assert_eq!(a.compose(&b).unwrap(), t.clone());
        prop_assert_eq!(b.compose(&a).unwrap(), t);
    }

    #[test]
    fn exp_and_log1p_are_inverse(mut a in series(10)) {
        a = a.shift_constant(&-a.coeff(0));
        let e = a.exp().unwrap();
        prop_assert_eq!(e.shift_constant(&int(-1)).log1p().unwrap(), a.clone());
        prop_assert_eq!(a.log1p().unwrap().exp().unwrap().shift_constant(&int(-1)), a);
    }

    #[test]
    fn series_product_is_a_commutative_ring(a in series(8), b in series(8), c in series(8)) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
    }

    #[test]
    fn reciprocal_inverts(a in series(8), c0 in nonzero_rational()) {
        let a = a.shift_constant(&(c0 - a.coeff(0)));
        prop_assert_eq!(a.mul(&a.recip().unwrap()).unwrap(), TruncatedSeries::one(8));
    }

    #[test]
    fn rational_field_axioms(a in rational(), b in rational(), c in nonzero_rational()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        prop_assert_eq!(&a / &c * &c, a.clone());
        prop_assert_eq!(&c * c.recip(), Rational::one());
        prop_assert_eq!(rat_parse(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn degenerate_falling_factorial_specializes(x in rational(), n in 0usize..10) {
        prop_assert_eq!(degenerate_falling_factorial(&x, n, &int(0)), powu(&x, n));
        prop_assert_eq!(degenerate_falling_factorial(&x, n, &int(1)), falling_factorial(&x, n));
        prop_assert_eq!(XPolynomial::degenerate_falling(n, &int(1)), XPolynomial::falling(n));
    }

    #[test]
    fn inverse_relations_round_trip(
        m in model(),
        lambda in lambda_value(),
        b in prop::collection::vec(rational(), 9),
    ) {
        let s2 = build_table(StirlingFamily::S2YLambda, 8, &lambda, Some(&m)).unwrap();
        let s1 = build_table(StirlingFamily::S1YLambda, 8, &lambda, Some(&m)).unwrap();
        let a: Vec<Rational> = (0..=8).map(|n| (0..=n).map(|k| s2.get(n, k) * &b[k]).sum()).collect();
        let back: Vec<Rational> = (0..=8).map(|n| (0..=n).map(|k| s1.get(n, k) * &a[k]).sum()).collect();
        prop_assert_eq!(back, b);
        prop_assert_eq!(table_invert(&table_invert(&s2).unwrap()).unwrap(), s2);
    }

    #[test]
    fn operator_composition_is_series_product(f in series(7), g in series(7), p in poly(7)) {
        let lhs = OperatorSeries(f.clone()).apply(&OperatorSeries(g.clone()).apply(&p).unwrap()).unwrap();
        let rhs = OperatorSeries(f.mul(&g).unwrap()).apply(&p).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn polynomial_display_parses_back(p in poly(8)) {
        prop_assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn expansion_round_trips(
        m in model(),
        u in u_value(),
        lambda in lambda_value(),
        r in 0usize..=3,
        p in poly(6),
    ) {
        let spec = FamilySpec::new(m, u, lambda.clone(), r).unwrap();
        let rep = Representer::new(&spec, 6).unwrap();
        let mut theorems = vec![Theorem::HigherOrder];
        if r == 1 {
            theorems.push(Theorem::Degenerate);
            if lambda.is_zero() {
                theorems.push(Theorem::Standard);
            }
        }
        let reference = rep.expand(&p, theorems[0].formulas().next().unwrap()).unwrap();
        for th in theorems {
            for formula in th.formulas() {
                let e = rep.expand(&p, formula).unwrap();
                prop_assert_eq!(&e.coefficients, &reference.coefficients);
                prop_assert_eq!(rep.reconstruct(&e).unwrap(), p.clone());
            }
        }
    }

    #[test]
    fn json_round_trips(m in model(), lambda in lambda_value(), u in u_value(), p in poly(4)) {
        for family in StirlingFamily::ALL {
            let model = family.is_probabilistic().then_some(&m);
            let t = build_table(family, 5, &lambda, model).unwrap();
            prop_assert_eq!(table_from_json(&table_to_json(&t)).unwrap(), t);
        }
        let spec = FamilySpec::new(m, u, lambda, 2).unwrap();
        let e = Representer::new(&spec, 4).unwrap()
            .expand(&p, Theorem::HigherOrder.formulas().next().unwrap()).unwrap();
        prop_assert_eq!(expansion_from_json(&expansion_to_json(&e, None)).unwrap(), e);
    }
}
