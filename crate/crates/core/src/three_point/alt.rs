//! A second section of the fibration, parametrized by the unit conic
//! `p f^2 + r g^2 = 1` with `k = p f`, `k' - k c = r g`.

use std::collections::HashSet;

use num_traits::Zero;

use crate::arith::Rational;
use crate::enumerate::RationalEnumerator;
use crate::error::{Error, Result};
use crate::quadforms::{conic_parametrize, rational_witness, AffineConic};

use super::{Solution3, ThreePointFrame};

/// The solution attached to the unit-conic point `(f, g)`.
pub fn alt_section(fr: &ThreePointFrame, f: &Rational, g: &Rational) -> Result<Solution3> {
    let (p, r, c) = (&fr.p, &fr.r, &fr.c);
    if p * f * f + r * g * g != Rational::from_integer(1.into()) {
        return Err(Error::DegenerateParameter(format!("({f}, {g}) is not on p f^2 + r g^2 = 1")));
    }
    let k = p * f;
    if k.is_zero() {
        return Err(Error::KZero);
    }
    let phi1 = r * g;
    let kp = &phi1 + &k * c;
    let delta = p - &k * &k;
    let deltap = &fr.pprime - &kp * &kp;
    let phi0 = &kp * &delta - &k * &deltap;
    let four = Rational::from_integer(4.into());
    let two = Rational::from_integer(2.into());
    let b = &four * p * r * &delta - &four * p * &phi0 * &phi1;
    if b.is_zero() {
        return Err(Error::BZero);
    }
    let cc = &phi0 * &phi0 - r * &delta * &delta;
    let x = -cc / b;
    let y = (&two * p * &phi1 * &x - &phi0) / (&two * r * &k);
    let z = (&two * p * &x - &delta) / (&two * &k);
    let sol = Solution3::build(fr, x, y, z, k, kp);
    if !sol.verify(fr) {
        return Err(Error::DegenerateParameter(format!("alternative section at ({f}, {g}) fails verification")));
    }
    Ok(sol)
}

/// `count` distinct rational points of `p f^2 + r g^2 = 1`.
pub fn unit_conic_points(fr: &ThreePointFrame, count: usize, seed: u64) -> Result<Vec<(Rational, Rational)>> {
    let (x, y, z) = rational_witness(&fr.p, &fr.r)?;
    let (f0, g0) = (x / &z, y / z);
    let conic = AffineConic {
        axx: fr.p.clone(),
        axy: Rational::zero(),
        ayy: fr.r.clone(),
        ax: Rational::zero(),
        ay: Rational::zero(),
        a0: Rational::from_integer((-1).into()),
    };
    let param = conic_parametrize(&conic, &f0, &g0)?;
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(count);
    if seen.insert((f0.clone(), g0.clone())) {
        out.push((f0, g0));
    }
    for t in RationalEnumerator::new(seed).take(count.saturating_mul(4) + 50) {
        if out.len() >= count {
            break;
        }
        if let Some(pt) = param.point(&t) {
            if seen.insert(pt.clone()) {
                out.push(pt);
            }
        }
    }
    out.truncate(count);
    Ok(out)
}
