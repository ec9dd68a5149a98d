//! The plane cubic `(pH^2 - K^2)(eta H - mu K') = (p'H^2 - K'^2)(pH - mu K)`
//! attached to a fiber, and its chord-tangent group law with origin `N`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::quadforms::bigint_str;

use super::{FiberPoint, ThreePointFrame};

/// Projective point `(K : K' : H)`, primitive integral with positive
/// leading nonzero coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CubicPoint {
    #[serde(with = "bigint_str")]
    pub k: BigInt,
    #[serde(with = "bigint_str")]
    pub kp: BigInt,
    #[serde(with = "bigint_str")]
    pub h: BigInt,
}

impl CubicPoint {
    pub fn from_rationals(v: &[Rational; 3]) -> Result<Self> {
        if v.iter().all(Zero::is_zero) {
            return Err(Error::ZeroInput);
        }
        let l = v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let mut ints: Vec<BigInt> = v.iter().map(|q| (q * Rational::from_integer(l.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, n| acc.gcd(n));
        let lead_neg = ints.iter().find(|n| !n.is_zero()).is_some_and(|n| n.is_negative());
        for n in &mut ints {
            *n = &*n / &g;
            if lead_neg {
                *n = -&*n;
            }
        }
        let [k, kp, h]: [BigInt; 3] = ints.try_into().expect("three coordinates");
        Ok(CubicPoint { k, kp, h })
    }

    pub fn from_ints(k: i64, kp: i64, h: i64) -> Self {
        CubicPoint::from_rationals(&[k, kp, h].map(|n| Rational::from_integer(n.into())))
            .expect("nonzero point")
    }

    pub fn coords(&self) -> [Rational; 3] {
        [&self.k, &self.kp, &self.h].map(|n| Rational::from_integer(n.clone()))
    }

    pub fn at_infinity(&self) -> bool {
        self.h.is_zero()
    }

    /// Affine coordinates `(k, k') = (K/H, K'/H)`.
    pub fn affine(&self) -> Option<(Rational, Rational)> {
        if self.h.is_zero() {
            return None;
        }
        Some((
            Rational::new(self.k.clone(), self.h.clone()),
            Rational::new(self.kp.clone(), self.h.clone()),
        ))
    }

    /// Number of decimal digits of the largest coordinate.
    pub fn height_digits(&self) -> usize {
        [&self.k, &self.kp, &self.h]
            .iter()
            .map(|n| n.magnitude().to_string().len())
            .max()
            .unwrap_or(1)
    }
}

impl fmt::Display for CubicPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} : {} : {})", self.k, self.kp, self.h)
    }
}

/// The cubic of one fiber, with its coefficients pulled out of the frame.
#[derive(Debug, Clone)]
pub struct Cubic {
    p: Rational,
    pp: Rational,
    eta: Rational,
    mu: Rational,
}

impl Cubic {
    pub fn new(f: &ThreePointFrame, fp: &FiberPoint) -> Self {
        Cubic {
            p: f.p.clone(),
            pp: f.pprime.clone(),
            eta: fp.eta.clone(),
            mu: fp.mu.clone(),
        }
    }

    fn parts(&self, v: &[Rational; 3]) -> [Rational; 4] {
        let [k, kp, h] = v;
        [
            &self.p * h * h - k * k,
            &self.eta * h - &self.mu * kp,
            &self.pp * h * h - kp * kp,
            &self.p * h - &self.mu * k,
        ]
    }

    pub fn eval(&self, v: &[Rational; 3]) -> Rational {
        let [x1, y1, z1, w1] = self.parts(v);
        x1 * y1 - z1 * w1
    }

    pub fn gradient(&self, v: &[Rational; 3]) -> [Rational; 3] {
        let [k, kp, h] = v;
        let [x1, y1, z1, w1] = self.parts(v);
        let two = Rational::from_integer(2.into());
        [
            -(&two * k * &y1) + &self.mu * &z1,
            -(&self.mu * &x1) + &two * kp * &w1,
            &two * &self.p * h * &y1 + &self.eta * &x1 - &two * &self.pp * h * &w1 - &self.p * &z1,
        ]
    }

    pub fn contains(&self, pt: &CubicPoint) -> bool {
        self.eval(&pt.coords()).is_zero()
    }

    pub fn a() -> CubicPoint {
        CubicPoint::from_ints(1, 0, 0)
    }

    pub fn b() -> CubicPoint {
        CubicPoint::from_ints(0, 1, 0)
    }

    pub fn c() -> CubicPoint {
        CubicPoint::from_ints(1, 1, 0)
    }

    pub fn n(&self) -> CubicPoint {
        CubicPoint::from_rationals(&[self.p.clone(), self.eta.clone(), self.mu.clone()])
            .expect("p > 0")
    }

    /// Third intersection of the line `P1 P2` (the tangent when equal).
    pub fn third(&self, p1: &CubicPoint, p2: &CubicPoint) -> Result<CubicPoint> {
        if p1 == p2 {
            return self.tangent_third(p1);
        }
        let (u, v) = (p1.coords(), p2.coords());
        // g(s, t) = F(sU + tV) = s t (c2 s + c1 t)
        let g = |s: i64, t: i64| {
            let (s, t) = (Rational::from_integer(s.into()), Rational::from_integer(t.into()));
            self.eval(&lin(&s, &u, &t, &v))
        };
        let (g1, g2) = (g(1, 1), g(1, -1));
        let two = Rational::from_integer(2.into());
        let c1 = (&g1 + &g2) / &two;
        let c2 = (&g1 - &g2) / &two;
        if c1.is_zero() && c2.is_zero() {
            return Err(Error::LineOnCurve);
        }
        CubicPoint::from_rationals(&lin(&c1, &u, &-c2, &v))
    }

    fn tangent_third(&self, pt: &CubicPoint) -> Result<CubicPoint> {
        let u = pt.coords();
        let grad = self.gradient(&u);
        if grad.iter().all(Zero::is_zero) {
            return Err(Error::SingularPoint);
        }
        // a second point D of the tangent line, not proportional to U
        let d = (0..3)
            .map(|i| {
                let mut e = [Rational::zero(), Rational::zero(), Rational::zero()];
                e[i] = Rational::one();
                cross(&grad, &e)
            })
            .find(|d| !d.iter().all(Zero::is_zero) && !proportional(d, &u))
            .expect("tangent line is two-dimensional");
        // g(s, t) = F(sU + tD) = t^2 (c1 s + c0 t)
        let c0 = self.eval(&d);
        let one = Rational::one();
        let c1 = self.eval(&lin(&one, &u, &one, &d)) - &c0;
        if c0.is_zero() && c1.is_zero() {
            return Err(Error::LineOnCurve);
        }
        CubicPoint::from_rationals(&lin(&c0, &u, &-c1, &d))
    }

    /// `P1 + P2 = N * (P1 * P2)`.
    pub fn add(&self, p1: &CubicPoint, p2: &CubicPoint) -> Result<CubicPoint> {
        let s = self.third(p1, p2)?;
        self.third(&self.n(), &s)
    }

    /// `-P = P * (N * N)`.
    pub fn neg(&self, p: &CubicPoint) -> Result<CubicPoint> {
        let nn = self.third(&self.n(), &self.n())?;
        self.third(p, &nn)
    }

    /// `n * P` by repeated addition, `0 * P = N`.
    pub fn multiple(&self, p: &CubicPoint, n: u32) -> Result<CubicPoint> {
        let mut acc = self.n();
        for _ in 0..n {
            acc = self.add(&acc, p)?;
        }
        Ok(acc)
    }
}

fn lin(s: &Rational, u: &[Rational; 3], t: &Rational, v: &[Rational; 3]) -> [Rational; 3] {
    [0, 1, 2].map(|i| s * &u[i] + t * &v[i])
}

fn cross(a: &[Rational; 3], b: &[Rational; 3]) -> [Rational; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn proportional(a: &[Rational; 3], b: &[Rational; 3]) -> bool {
    cross(a, b).iter().all(Zero::is_zero)
}

/// Evaluates the cubic of fiber `fp` at `pt`.
pub fn cubic_eval(f: &ThreePointFrame, fp: &FiberPoint, pt: &CubicPoint) -> Rational {
    Cubic::new(f, fp).eval(&pt.coords())
}

pub fn cubic_third_intersection(
    f: &ThreePointFrame,
    fp: &FiberPoint,
    p1: &CubicPoint,
    p2: &CubicPoint,
) -> Result<CubicPoint> {
    Cubic::new(f, fp).third(p1, p2)
}

pub fn cubic_add(f: &ThreePointFrame, fp: &FiberPoint, p1: &CubicPoint, p2: &CubicPoint) -> Result<CubicPoint> {
    Cubic::new(f, fp).add(p1, p2)
}

pub fn cubic_neg(f: &ThreePointFrame, fp: &FiberPoint, p: &CubicPoint) -> Result<CubicPoint> {
    Cubic::new(f, fp).neg(p)
}

/// Closed form of `A + B`:
/// `(2p(eta-p) + pr(c lambda-1)^2 - pr lambda^2 : 2eta(eta-p) + pr(c lambda-1)^2 - pr lambda^2 : 2mu(eta-p))`.
pub fn section_a_plus_b(f: &ThreePointFrame, fp: &FiberPoint) -> Result<CubicPoint> {
    let e = &fp.eta - &f.p;
    if e.is_zero() {
        return Err(Error::EtaEqualsP);
    }
    let two = Rational::from_integer(2.into());
    let pr = &f.p * &f.r;
    let cl1 = &f.c * &fp.lambda - Rational::one();
    let common = &pr * &cl1 * &cl1 - &pr * &fp.lambda * &fp.lambda;
    CubicPoint::from_rationals(&[
        &two * &f.p * &e + &common,
        &two * &fp.eta * &e + &common,
        &two * &fp.mu * &e,
    ])
}
