use gaudin::bethe::{check_reality, solve_inverse_wronskian, verify_identity, SolveOptions};
use gaudin::exactalg::{BigFloat, Rat, Ring};
use gaudin::repn::IrrepModel;
use gaudin::schubert::verify_duality;
use gaudin::symgroup::{beta, BetheConfig, GroupAlgebraElement, Sign};
use gaudin::weylalg::check_f_vanishing;
use proptest::prelude::*;

const PREC: u32 = 256;

fn config(z: &[(i64, i64)]) -> BetheConfig<Rat> {
    BetheConfig::new(z.iter().map(|&(p, q)| Rat::new(p, q)).collect())
}

fn points(n: std::ops::Range<usize>) -> impl Strategy<Value = Vec<(i64, i64)>> {
    proptest::collection::vec((-9i64..10, 1i64..5), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn identity_at_random_points(z in points(1..4)) {
        let r = verify_identity(&config(&z));
        prop_assert!(r.passed(), "{:?}", r.first_mismatch);
    }

    #[test]
    fn f_vanishes_at_random_points(z in points(1..4)) {
        let r = check_f_vanishing(&config(&z), None);
        prop_assert!(r.passed(), "{:?}", r.nonvanishing);
    }

    #[test]
    fn specialized_generators_commute(z in points(3..4), a in (0usize..4, 0usize..4), b in (0usize..4, 0usize..4)) {
        let cfg = config(&z);
        let ga = beta(&cfg, a.0, a.1.min(3 - a.0.min(3)), Sign::Minus);
        let gb = beta(&cfg, b.0, b.1.min(3 - b.0.min(3)), Sign::Plus);
        let c = ga.times(&gb).minus(&gb.times(&ga));
        prop_assert!(c.is_zero());
    }

    #[test]
    fn star_is_multiplicative_on_generators(z in points(3..4), k in 0usize..4) {
        let cfg = config(&z);
        let x: GroupAlgebraElement<Rat> = beta(&cfg, k, 3 - k, Sign::Minus);
        let y = beta(&cfg, 3 - k, 0, Sign::Plus);
        prop_assert_eq!(x.times(&y).star(), x.star().times(&y.star()));
        prop_assert_eq!(x.star(), beta(&cfg, k, 3 - k, Sign::Plus));
    }

    #[test]
    fn representation_is_multiplicative(z in points(3..4), k in 0usize..4) {
        let cfg = config(&z);
        let model = IrrepModel::build(&"2,1".parse().unwrap()).unwrap();
        let x = beta(&cfg, k, 3 - k, Sign::Minus);
        let y = beta(&cfg, 1, 1, Sign::Plus);
        prop_assert_eq!(model.act(&x.times(&y)), model.act(&x).mul(&model.act(&y)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn random_rational_solutions(z in points(3..4)) {
        let mut zs = z.clone();
        zs.sort_by(|a, b| (a.0 * b.1).cmp(&(b.0 * a.1)));
        zs.dedup_by(|a, b| a.0 * b.1 == b.0 * a.1);
        prop_assume!(zs.len() == 3);
        let cfg = config(&z).to_numeric(PREC);
        let opts = SolveOptions::with_precision(PREC);
        let rep = solve_inverse_wronskian(&cfg, &opts).unwrap();
        prop_assert!(rep.complete(), "{:?}", rep.rejected);
        prop_assert_eq!(rep.total(), 4);
        prop_assert!(check_reality(&rep.records, &opts.tolerance).passed);
        prop_assert!(verify_duality(&rep.records, &opts.tolerance).passed);
        prop_assert!(rep.max_wr_residual < BigFloat::ten_pow_neg(40, PREC));
    }
}
