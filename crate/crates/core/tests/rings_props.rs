use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ratdist::error::Error;
use ratdist::rings::*;

const NONSQUARES: [u64; 10] = [2, 3, 5, 6, 7, 8, 10, 11, 13, 12];

#[test]
fn two_hundred_gaussian_decompositions() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut n = 0;
    while n < 200 {
        let (re, im) = (rng.gen_range(-50i64..=50), rng.gen_range(-50i64..=50));
        if re * re + im * im > 2500 || (re == 0 && im == 0) {
            continue;
        }
        let sys = gaussian_decompose(&GaussianInt::new(re, im)).unwrap();
        assert!(sys.verify(), "{re} {im}");
        n += 1;
    }
}

#[test]
fn square_norm_alphas_use_the_second_branch() {
    for (re, im) in [(3, 4), (5, 12), (0, 2), (-7, 24), (15, 20), (0, -9), (4, 0)] {
        let sys = gaussian_decompose(&GaussianInt::new(re, im)).unwrap();
        assert!(sys.verify());
        assert_eq!(sys.r, sys.s);
        assert_eq!(sys.u, sys.v);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn line_points_verify(di in 0usize..10, ox in -5i64..5, oy in -5i64..5, px in -9i64..9, py in -9i64..9) {
        prop_assume!((ox, oy) != (px, py));
        let delta = NONSQUARES[di];
        let (o, p) = ((BigInt::from(ox), BigInt::from(oy)), (BigInt::from(px), BigInt::from(py)));
        let pts = realquad_line_points((&o.0, &o.1), (&p.0, &p.1), delta, 4).unwrap();
        prop_assert_eq!(pts.len(), 4);
        for q in &pts {
            prop_assert!(q.verify((&o.0, &o.1), (&p.0, &p.1)));
            let w = q.omega.as_ref().unwrap();
            prop_assert!(w.is_unit() && w.is_one_mod_two());
        }
    }

    #[test]
    fn confocal_points_verify(di in 0usize..4, px in 1i64..6, py in -5i64..6) {
        let delta = NONSQUARES[di];
        let (o, p) = ((BigInt::from(0), BigInt::from(0)), (BigInt::from(px), BigInt::from(py)));
        let seed = realquad_line_points((&o.0, &o.1), (&p.0, &p.1), delta, 2).unwrap().remove(1);
        match realquad_confocal_extend((&o.0, &o.1), (&p.0, &p.1), &seed, 2, 60) {
            Ok(pts) => {
                let k = &seed.d_o - &seed.d_p;
                for q in &pts {
                    prop_assert!(q.verify((&o.0, &o.1), (&p.0, &p.1)));
                    // either branch of the hyperbola |d_o - d_p| = |k|
                    let diff = &q.d_o - &q.d_p;
                    prop_assert!(diff == k || diff == -k.clone(), "{} vs {}", diff, k);
                }
            }
            Err(Error::AutomorphNotFound(_)) | Err(Error::DegenerateParameter(_)) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn gaussian_orbits_verify(re in -20i64..20, im in -20i64..20) {
        prop_assume!((re, im) != (0, 0));
        let sys = gaussian_decompose(&GaussianInt::new(re, im)).unwrap();
        let orb = gaussian_orbit(&sys, 4, 50).unwrap();
        for p in &orb.points {
            prop_assert!(p.verify(&sys.alpha) && p.verify_norms(&sys.alpha));
        }
        for p in &orb.filtered {
            prop_assert!(p.verify_norms(&sys.alpha));
        }
    }

    #[test]
    fn unit_powers_stay_units(di in 0usize..10, e in 1u32..8) {
        let w = fundamental_unit(NONSQUARES[di]).unwrap().pow(e);
        prop_assert!(w.is_unit());
        prop_assert!(w.signum() > 0);
    }
}

#[test]
fn confocal_orbit_may_switch_branch() {
    let (o, p) = ((BigInt::from(0), BigInt::from(0)), (BigInt::from(1), BigInt::from(-4)));
    let seed = realquad_line_points((&o.0, &o.1), (&p.0, &p.1), 2, 2).unwrap().remove(1);
    let k = &seed.d_o - &seed.d_p;
    let pts = realquad_confocal_extend((&o.0, &o.1), (&p.0, &p.1), &seed, 2, 60).unwrap();
    assert!(!pts.is_empty());
    for q in &pts {
        assert!(q.verify((&o.0, &o.1), (&p.0, &p.1)));
        let diff = &q.d_o - &q.d_p;
        assert!(diff == k || diff == -k.clone());
    }
    assert!(pts.iter().any(|q| &q.d_o - &q.d_p == -k.clone()));
}
