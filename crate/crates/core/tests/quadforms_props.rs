use proptest::prelude::*;
use ratdist::arith::rat;
use ratdist::quadforms::{hilbert_symbol, is_isotropic, relevant_places, Place};

fn nonzero() -> impl Strategy<Value = (i64, i64)> {
    (-500i64..500, 1i64..60).prop_filter("nonzero", |(n, _)| *n != 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn product_formula(a in nonzero(), b in nonzero()) {
        let (a, b) = (rat(a.0, a.1), rat(b.0, b.1));
        let prod: i8 = relevant_places(&a, &b)
            .unwrap()
            .iter()
            .map(|v| hilbert_symbol(&a, &b, v).unwrap())
            .product();
        prop_assert_eq!(prod, 1);
        // places outside the relevant set are trivial
        for p in [11i64, 13, 101] {
            let v = Place::prime(p);
            if !relevant_places(&a, &b).unwrap().contains(&v) {
                prop_assert_eq!(hilbert_symbol(&a, &b, &v).unwrap(), 1);
            }
        }
    }

    #[test]
    fn symbol_is_symmetric(a in nonzero(), b in nonzero()) {
        let (a, b) = (rat(a.0, a.1), rat(b.0, b.1));
        for v in relevant_places(&a, &b).unwrap() {
            prop_assert_eq!(hilbert_symbol(&a, &b, &v).unwrap(), hilbert_symbol(&b, &a, &v).unwrap());
        }
        prop_assert_eq!(is_isotropic(&a, &b).unwrap(), is_isotropic(&b, &a).unwrap());
    }
}
