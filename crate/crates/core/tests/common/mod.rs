#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use ratdist::arith::{rat, QuadExt, Rational};
use ratdist::geometry::{PlanePoint, Triangle};

pub fn small_rat(rng: &mut ChaCha8Rng, h: i64) -> Rational {
    rat(rng.gen_range(-h..=h), rng.gen_range(1..=h))
}

/// Either rational or a pure rational multiple of `sqrt d`.
fn coord(rng: &mut ChaCha8Rng, d: u64) -> QuadExt {
    let q = small_rat(rng, 6);
    if d > 1 && rng.gen_bool(0.5) {
        QuadExt::new(rat(0, 1), q, d).unwrap()
    } else {
        QuadExt::from(q)
    }
}

/// A non-collinear triangle whose coordinates live in one quadratic field.
pub fn random_triangle(rng: &mut ChaCha8Rng) -> Triangle {
    let fields = [1u64, 1, 2, 3, 5, 6, 7, 15];
    loop {
        let d = fields[rng.gen_range(0..fields.len())];
        let pts = [0, 1, 2].map(|_| PlanePoint::new(coord(rng, d), coord(rng, d)));
        if let Ok(t) = Triangle::from_points(pts) {
            if !t.is_collinear() {
                return t;
            }
        }
    }
}

pub fn random_rational_triangle(rng: &mut ChaCha8Rng, h: i64) -> Triangle {
    loop {
        let pts = [0, 1, 2].map(|_| (small_rat(rng, h), small_rat(rng, h)));
        if let Ok(t) = Triangle::from_rational_points(pts) {
            if !t.is_collinear() {
                return t;
            }
        }
    }
}
