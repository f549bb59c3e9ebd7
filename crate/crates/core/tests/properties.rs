use manin_denef::algebra::{rat, MPoly, RatFunc, Rational, VarId};
use manin_denef::campaign::{natural_cmp, random_order_case, random_triple, representation_roundtrip};
use manin_denef::places::{derivative_order_check, ord_at, Order, Place};
use manin_denef::series::{solve_diff1, solve_diff2, diff1_residual, diff2_residual, TruncSeries};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn poly_strategy() -> impl Strategy<Value = MPoly> {
    prop::collection::vec(((0u32..4, 0u32..3), -9i64..=9, 1i64..=3), 0..5).prop_map(|ts| {
        let terms = ts.into_iter().map(|((a, b), n, d)| (vec![a, b], rat(n, d))).collect();
        MPoly::from_terms(&[VarId::z(), VarId::delta()], terms)
    })
}

fn ratfunc_strategy() -> impl Strategy<Value = RatFunc> {
    (poly_strategy(), poly_strategy()).prop_filter_map("zero denominator", |(n, d)| RatFunc::new(&n, &d).ok())
}

fn series_strategy() -> impl Strategy<Value = TruncSeries<Rational>> {
    prop::collection::vec((-20i64..=20, 1i64..=5), 8..20).prop_map(|cs| {
        let t = cs.len() as i64;
        TruncSeries::polynomial(VarId::z(), cs.into_iter().map(|(n, d)| rat(n, d)).collect(), t).with_exact(false)
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn field_axioms(a in ratfunc_strategy(), b in ratfunc_strategy(), c in ratfunc_strategy()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert!((&(&a - &b) + &b - a.clone()).is_zero());
        if !b.is_zero() {
            prop_assert_eq!((&a * &b).checked_div(&b).unwrap(), a.clone());
        }
    }

    #[test]
    fn canonical_form_is_unique(a in ratfunc_strategy(), b in poly_strategy()) {
        // multiplying through by a common factor must not change the normal form
        if !b.is_zero() {
            let scaled = RatFunc::new(&(&a.num() * &b), &(&a.den() * &b)).unwrap();
            prop_assert_eq!(scaled.to_string(), a.to_string());
        }
        let back: RatFunc = a.to_string().replace('δ', "delta").parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn derivative_rules(a in ratfunc_strategy(), b in ratfunc_strategy()) {
        let z = VarId::z();
        prop_assert_eq!((&a * &b).derivative(&z), &(&a.derivative(&z) * &b) + &(&a * &b.derivative(&z)));
        if !b.is_zero() {
            let q = a.checked_div(&b).unwrap().derivative(&z);
            let want = (&(&a.derivative(&z) * &b) - &(&a * &b.derivative(&z))).checked_div(&(&b * &b)).unwrap();
            prop_assert_eq!(q, want);
        }
    }

    #[test]
    fn orders_are_additive(a in ratfunc_strategy(), b in ratfunc_strategy(), which in 0usize..4) {
        let p = [Place::z(), Place::z_minus_one(), Place::delta_plus_two(), Place::quadratic()][which].clone();
        match (ord_at(&a, &p), ord_at(&b, &p)) {
            (Order::Finite(i), Order::Finite(j)) => prop_assert_eq!(ord_at(&(&a * &b), &p), Order::Finite(i + j)),
            _ => prop_assert_eq!(ord_at(&(&a * &b), &p), Order::Infinity),
        }
    }

    #[test]
    fn derivative_order_rule_never_fails(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, place) = random_order_case(&mut rng);
        prop_assert!(derivative_order_check(&g, &place).is_ok(), "{} at {}", g, place);
    }

    #[test]
    fn series_inverse(s in series_strategy()) {
        if !s.coeff(0).eq(&rat(0, 1)) {
            let inv = s.inverse().unwrap();
            let one = s.mul(&inv);
            prop_assert_eq!(one.coeff(0), rat(1, 1));
            for k in 1..one.trunc_order() {
                prop_assert_eq!(one.coeff(k), rat(0, 1));
            }
        }
    }

    #[test]
    fn difference_equation_solvers(b in series_strategy()) {
        let g = solve_diff1(&b).unwrap();
        prop_assert!(diff1_residual(&g, &b).truncate(b.trunc_order()).is_zero());
        let s = solve_diff2(&b).unwrap();
        prop_assert!(diff2_residual(&s, &b).truncate(s.g.trunc_order()).is_zero());
    }

    #[test]
    fn representation_round_trips(seed in any::<u64>(), deg in 0usize..=8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rep = random_triple(&mut rng, deg, 32);
        prop_assert_eq!(representation_roundtrip(&rep).unwrap(), "0");
    }

    #[test]
    fn natural_order_reads_numbers(a in -200i64..200, b in -200i64..200) {
        let (x, y) = (format!("lemma.liz.n={a}"), format!("lemma.liz.n={b}"));
        prop_assert_eq!(natural_cmp(&x, &y), a.cmp(&b));
    }
}
