use proptest::prelude::*;
use ratdist::arith::{int, rat, Rational};
use ratdist::geometry::{PlanePoint, Triangle};
use ratdist::kummer::{derive_quartic, quartic_eval};
use ratdist::three_point::generate3;

fn tri(pts: [(Rational, Rational); 3]) -> Triangle {
    Triangle::from_points(pts.map(|(x, y)| PlanePoint::rational(x, y))).unwrap()
}

#[test]
fn generated_solutions_lie_on_the_quartic() {
    let t = tri([(int(0), int(0)), (int(1), int(0)), (int(0), int(1))]);
    let out = generate3(&t, 0, 12, 6, 3).unwrap();
    assert!(out.solutions.len() >= 50, "{}", out.solutions.len());
    let kq = derive_quartic(&int(0), &int(1)).unwrap();
    for s in out.solutions.iter().take(50) {
        assert_eq!(quartic_eval(&kq, &s.d0, &s.d, &s.dprime), int(0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn only_even_powers(an in -20i64..20, ad in 1i64..9, bn in 1i64..20, bd in 1i64..9) {
        let kq = derive_quartic(&rat(an, ad), &rat(bn, bd)).unwrap();
        prop_assert_eq!(kq.poly.degree(), 4);
        for (m, _) in kq.poly.terms() {
            prop_assert!(m.iter().all(|e| e % 2 == 0));
        }
    }

    #[test]
    fn scaled_triangles_agree(an in -4i64..5, bn in 1i64..5, sn in 1i64..6, sd in 1i64..4, seed in 0u64..50) {
        let (a, b, s) = (rat(an, 2), rat(bn, 2), rat(sn, sd));
        let t = tri([(int(0), int(0)), (s.clone(), int(0)), (&s * &a, &s * &b)]);
        if let Ok(out) = generate3(&t, 0, 1, 4, seed) {
            let kq = derive_quartic(&a, &b).unwrap();
            for sol in &out.solutions {
                prop_assert_eq!(quartic_eval(&kq, &(&sol.d0 / &s), &(&sol.d / &s), &(&sol.dprime / &s)), int(0));
            }
        }
    }
}
