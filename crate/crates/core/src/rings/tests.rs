use num_bigint::BigInt;

use super::*;
use crate::error::Error;

fn b(n: i64) -> BigInt {
    BigInt::from(n)
}

fn g(re: i64, im: i64) -> GaussianInt {
    GaussianInt::new(re, im)
}

#[test]
fn fundamental_units() {
    assert_eq!(fundamental_unit(2).unwrap(), RealQuadInt::new(1, 1, 2));
    assert_eq!(fundamental_unit(3).unwrap(), RealQuadInt::new(2, 1, 3));
    assert_eq!(fundamental_unit(5).unwrap(), RealQuadInt::new(2, 1, 5));
    assert_eq!(fundamental_unit(61).unwrap(), RealQuadInt::new(29718, 3805, 61));
    assert!(matches!(fundamental_unit(9), Err(Error::PerfectSquareDelta(9))));
}

#[test]
fn line_points_for_three_four() {
    let (o, p) = ((b(0), b(0)), (b(3), b(4)));
    let pts = realquad_line_points((&o.0, &o.1), (&p.0, &p.1), 2, 3).unwrap();
    // w = 1: Q = (0, b), distance to O is |b| and to P is |a|
    assert_eq!(pts[0].omega, Some(RealQuadInt::one(2)));
    assert_eq!((pts[0].d_o.clone(), pts[0].d_p.clone()), (RealQuadInt::int(4, 2), RealQuadInt::int(3, 2)));
    // w = 3 + 2 sqrt2: t = 4 + 6 sqrt2, s = 9
    assert_eq!(pts[1].omega, Some(RealQuadInt::new(3, 2, 2)));
    assert_eq!(pts[1].y, RealQuadInt::new(4, 6, 2));
    assert_eq!(pts[1].d_p, RealQuadInt::int(9, 2));
    assert_eq!(pts[2].omega, Some(RealQuadInt::new(17, 12, 2)));
    for q in &pts {
        assert!(q.verify((&o.0, &o.1), (&p.0, &p.1)));
        let w = q.omega.as_ref().unwrap();
        assert!(w.is_unit() && w.is_one_mod_two());
    }
}

#[test]
fn line_points_on_the_axis_swap_roles() {
    let pts = realquad_line_points((&b(1), &b(1)), (&b(1), &b(6)), 3, 3).unwrap();
    for q in &pts {
        assert!(q.verify((&b(1), &b(1)), (&b(1), &b(6))));
    }
    assert!(pts[0].degenerate);
}

#[test]
fn confocal_extension_from_the_two_example() {
    let (o, p) = ((b(0), b(0)), (b(3), b(4)));
    let seed = realquad_line_points((&o.0, &o.1), (&p.0, &p.1), 2, 2).unwrap().remove(1);
    let more = realquad_confocal_extend((&o.0, &o.1), (&p.0, &p.1), &seed, 3, 200).unwrap();
    assert_eq!(more.len(), 3);
    let k = &seed.d_o - &seed.d_p;
    for q in &more {
        assert!(q.verify((&o.0, &o.1), (&p.0, &p.1)));
        assert_eq!(&q.d_o - &q.d_p, k);
    }
    assert!(realquad_confocal_extend((&o.0, &o.1), (&p.0, &p.1), &seed, 0, 200).unwrap().is_empty());
    let axis = realquad_line_points((&b(0), &b(0)), (&b(3), &b(0)), 2, 2).unwrap().remove(1);
    let on_axis = RealQuadPoint {
        x: axis.y.clone(),
        y: RealQuadInt::int(0, 2),
        d_o: axis.d_o.clone(),
        d_p: (&axis.y - &RealQuadInt::int(3, 2)).abs(),
        omega: None,
        step: None,
        degenerate: false,
    };
    assert!(matches!(
        realquad_confocal_extend((&b(0), &b(0)), (&b(3), &b(0)), &on_axis, 2, 50),
        Err(Error::DegenerateParameter(_))
    ));
}

#[test]
fn ring_sqrt_round_trip() {
    for (a, bb) in [(3, 2), (-5, 7), (0, 4), (6, 0)] {
        let x = RealQuadInt::new(a, bb, 7);
        let sq = &x * &x;
        let r = ring_sqrt(&sq).unwrap();
        assert_eq!(&r * &r, sq);
    }
    assert!(ring_sqrt(&RealQuadInt::new(2, 0, 7)).is_none());
}

#[test]
fn gaussian_decompositions() {
    let s = gaussian_decompose(&g(1, 1)).unwrap();
    assert_eq!((s.d1.clone(), s.d2.clone()), (g(1, 1), g(1, -1)));
    assert_eq!((s.r.clone(), s.s.clone(), s.u.clone(), s.v.clone()), (g(1, 0), g(0, 0), g(0, 0), g(0, 1)));
    assert!(s.verify());
    let s = gaussian_decompose(&g(3, 4)).unwrap();
    assert_eq!((s.d1.clone(), s.d2.clone()), (g(3, 0), g(2, 0)));
    assert_eq!((s.r.clone(), s.s.clone()), (g(2, 1), g(2, 1)));
    assert_eq!((s.u.clone(), s.v.clone()), (g(2, -1), g(2, -1)));
    assert!(s.verify());
    // 2i = (1+i)^2 has squarefree part 1
    let s = gaussian_decompose(&g(0, 2)).unwrap();
    assert!(s.verify());
    assert_eq!(s.r, g(1, 1));
    // imaginary squarefree part: 3i * (2+i)^2
    let alpha = &g(0, 3) * &g(2, 1).square();
    let s = gaussian_decompose(&alpha).unwrap();
    assert!(s.verify());
    assert!(s.d1.is_imaginary() && s.d2.is_imaginary());
}

#[test]
fn gaussian_orbit_examples() {
    let s = gaussian_decompose(&g(3, 4)).unwrap();
    let orb = gaussian_orbit(&s, 5, 200).unwrap();
    let first = &orb.points[0];
    assert_eq!(first.steps, (0, 0));
    assert_eq!((first.w1.clone(), first.w2.clone()), (g(9, 12), g(9, -12)));
    assert_eq!(first.z, g(15, 0));
    assert_eq!(first.point, Some((g(9, 0), g(12, 0))));
    assert_eq!(orb.points.len(), 5);
    assert!(orb.points.iter().all(|p| p.verify(&s.alpha)));

    let s = gaussian_decompose(&g(1, 1)).unwrap();
    let orb = gaussian_orbit(&s, 3, 200).unwrap();
    let base = orb.filtered.iter().find(|p| p.steps == (0, 0)).unwrap();
    assert_eq!(base.w2, g(0, 0));
    assert!(base.point.is_none());
    assert!(base.verify_norms(&s.alpha));
    assert!(orb.points.iter().all(|p| p.verify(&s.alpha)));
}
