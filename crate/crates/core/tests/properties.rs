use std::sync::OnceLock;

use lusztig_q::lusztig::freudenthal_multiplicity;
use lusztig_q::{Engine, Weight};
use num_bigint::BigInt;
use proptest::prelude::*;

const TYPES: &[&str] = &["A1", "A2", "A3", "B2", "B3", "C2", "C3", "G2"];

fn engines() -> &'static Vec<Engine> {
    static E: OnceLock<Vec<Engine>> = OnceLock::new();
    E.get_or_init(|| TYPES.iter().map(|t| Engine::parse(t).unwrap()).collect())
}

fn case() -> impl Strategy<Value = (usize, Vec<i64>, Vec<i64>)> {
    (0..TYPES.len()).prop_flat_map(|t| {
        let r = engines()[t].root_system().rank();
        (
            Just(t),
            proptest::collection::vec(0i64..=2, r),
            proptest::collection::vec(-4i64..=4, r),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn algorithms_agree((t, l, m) in case()) {
        let e = &engines()[t];
        let (l, m) = (Weight::new(l), Weight::new(m));
        let a = e.lusztig_q_analogue(&l, &m).unwrap();
        prop_assert_eq!(&a, &e.q_analogue_by_induction(&l, &m).unwrap());
        prop_assert_eq!(&a, &e.q_analogue_via_kernel(&l, &m).unwrap());
    }

    #[test]
    fn shape_of_q_analogues((t, l, m) in case()) {
        let e = &engines()[t];
        let rs = e.root_system();
        let (l, m) = (Weight::new(l), Weight::new(m));
        let a = e.lusztig_q_analogue(&l, &m).unwrap();
        match rs.depth(&l, &m) {
            None => prop_assert!(a.is_zero()),
            Some(d) => {
                prop_assert!(a.is_monic());
                prop_assert_eq!(a.degree(), Some(d));
                prop_assert!(a.substitute_q_plus_1().unwrap().coefficients_nonnegative());
                let mult = freudenthal_multiplicity(rs, &l, &m).unwrap();
                prop_assert_eq!(a.eval_integer(1).unwrap(), BigInt::from(mult));
            }
        }
        if e.broer_nonnegativity_test(&m).unwrap() {
            prop_assert!(a.coefficients_nonnegative());
        }
    }

    #[test]
    fn weighted_sums_symmetric((t, l, g) in (0..TYPES.len()).prop_flat_map(|t| {
        let r = engines()[t].root_system().rank();
        (Just(t), proptest::collection::vec(0i64..=1, r), proptest::collection::vec(0i64..=1, r))
    })) {
        let e = &engines()[t];
        let (l, g) = (Weight::new(l), Weight::new(g));
        let a = e.weighted_sum(&l, &g).unwrap();
        prop_assert_eq!(&a, &e.weighted_sum(&g, &l).unwrap());
        prop_assert_eq!(&a, &e.brylinski_form(&l, &g).unwrap());
        prop_assert_eq!(&a, &e.tensor_zero_q(&l, &g).unwrap());
        prop_assert!(a.coefficients_nonnegative());
    }
}
