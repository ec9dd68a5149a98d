//! Points with coordinates and distances in `Z[sqrt(delta)]`, built from
//! units of the ring.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{from_bigint, int_sqrt_exact, squarefree_int, QuadExt};
use crate::error::{Error, Result};
use crate::quadforms::bigint_str;

/// `a + b sqrt(delta)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RealQuadInt {
    #[serde(with = "bigint_str")]
    pub a: BigInt,
    #[serde(with = "bigint_str")]
    pub b: BigInt,
    pub delta: u64,
}

impl RealQuadInt {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, delta: u64) -> Self {
        RealQuadInt {
            a: a.into(),
            b: b.into(),
            delta,
        }
    }

    pub fn int(a: impl Into<BigInt>, delta: u64) -> Self {
        RealQuadInt::new(a, 0, delta)
    }

    pub fn one(delta: u64) -> Self {
        RealQuadInt::int(1, delta)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        RealQuadInt::new(self.a.clone(), -&self.b, self.delta)
    }

    pub fn norm(&self) -> BigInt {
        &self.a * &self.a - BigInt::from(self.delta) * &self.b * &self.b
    }

    pub fn is_unit(&self) -> bool {
        self.norm().abs().is_one()
    }

    /// Inverse of a unit.
    pub fn unit_inverse(&self) -> Option<Self> {
        let n = self.norm();
        if !n.abs().is_one() {
            return None;
        }
        let c = self.conj();
        Some(if n.is_one() { c } else { -c })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = RealQuadInt::one(self.delta);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `self = 1 (mod 2 Z[sqrt(delta)])`.
    pub fn is_one_mod_two(&self) -> bool {
        self.a.is_odd() && self.b.is_even()
    }

    /// Exact sign of the real number `a + b sqrt(delta)`.
    pub fn signum(&self) -> i8 {
        let sa = self.a.signum();
        let sb = self.b.signum();
        if sa == sb || sb.is_zero() {
            return sa.to_i8().unwrap_or(0);
        }
        if sa.is_zero() {
            return sb.to_i8().unwrap_or(0);
        }
        // opposite signs: compare a^2 with delta b^2
        match (&self.a * &self.a).cmp(&(BigInt::from(self.delta) * &self.b * &self.b)) {
            Ordering::Greater => sa.to_i8().unwrap_or(0),
            Ordering::Less => sb.to_i8().unwrap_or(0),
            Ordering::Equal => 0,
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn to_quadext(&self) -> Result<QuadExt> {
        let (d0, f) = squarefree_int(&BigInt::from(self.delta))?;
        let d0 = d0.to_u64().ok_or(Error::PerfectSquareDelta(self.delta))?;
        QuadExt::new(from_bigint(self.a.clone()), from_bigint(&self.b * f), d0)
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * (self.delta as f64).sqrt()
    }

    /// Exact quotient by a rational integer, if it divides both parts.
    pub fn div_exact(&self, n: &BigInt) -> Option<Self> {
        if n.is_zero() || !(&self.a % n).is_zero() || !(&self.b % n).is_zero() {
            return None;
        }
        Some(RealQuadInt::new(&self.a / n, &self.b / n, self.delta))
    }
}

impl fmt::Display for RealQuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let sign = if self.b.is_negative() { "-" } else { "+" };
        write!(f, "{} {sign} {}*sqrt{}", self.a, self.b.abs(), self.delta)
    }
}

impl Add for &RealQuadInt {
    type Output = RealQuadInt;
    fn add(self, o: &RealQuadInt) -> RealQuadInt {
        debug_assert_eq!(self.delta, o.delta);
        RealQuadInt::new(&self.a + &o.a, &self.b + &o.b, self.delta)
    }
}

impl Sub for &RealQuadInt {
    type Output = RealQuadInt;
    fn sub(self, o: &RealQuadInt) -> RealQuadInt {
        debug_assert_eq!(self.delta, o.delta);
        RealQuadInt::new(&self.a - &o.a, &self.b - &o.b, self.delta)
    }
}

impl Mul for &RealQuadInt {
    type Output = RealQuadInt;
    fn mul(self, o: &RealQuadInt) -> RealQuadInt {
        debug_assert_eq!(self.delta, o.delta);
        let d = BigInt::from(self.delta);
        RealQuadInt::new(
            &self.a * &o.a + d * &self.b * &o.b,
            &self.a * &o.b + &self.b * &o.a,
            self.delta,
        )
    }
}

impl Neg for RealQuadInt {
    type Output = RealQuadInt;
    fn neg(self) -> RealQuadInt {
        RealQuadInt::new(-self.a, -self.b, self.delta)
    }
}

/// Smallest unit `x + y sqrt(delta)`, `x, y > 0`, of norm `+-1`, from the
/// continued fraction of `sqrt(delta)`.
pub fn fundamental_unit(delta: u64) -> Result<RealQuadInt> {
    let d = BigInt::from(delta);
    if delta < 2 || int_sqrt_exact(&d).is_some() {
        return Err(Error::PerfectSquareDelta(delta));
    }
    let a0 = d.sqrt();
    let (mut m, mut den, mut a) = (BigInt::zero(), BigInt::one(), a0.clone());
    // convergents h/k
    let (mut h_prev, mut h) = (BigInt::one(), a0.clone());
    let (mut k_prev, mut k) = (BigInt::zero(), BigInt::one());
    loop {
        let cand = RealQuadInt::new(h.clone(), k.clone(), delta);
        if cand.is_unit() {
            return Ok(cand);
        }
        m = &den * &a - &m;
        den = (&d - &m * &m) / &den;
        a = (&a0 + &m) / &den;
        let h_next = &a * &h + &h_prev;
        let k_next = &a * &k + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
    }
}

/// Smallest power `e <= 6` of the fundamental unit with `eps^e = 1 (mod 2)`.
pub fn unit_one_mod_two(delta: u64) -> Result<(RealQuadInt, u32)> {
    let eps = fundamental_unit(delta)?;
    let mut w = eps.clone();
    for e in 1..=6 {
        if w.is_one_mod_two() {
            return Ok((w, e));
        }
        w = &w * &eps;
    }
    // the group (Z[sqrt d]/2)^x has order at most 4, so this is unreachable
    unreachable!("no power of {eps} up to 6 is 1 mod 2")
}

/// A point of the plane with coordinates in `Z[sqrt(delta)]` and its
/// distances to `O` and `P`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealQuadPoint {
    pub x: RealQuadInt,
    pub y: RealQuadInt,
    pub d_o: RealQuadInt,
    pub d_p: RealQuadInt,
    /// The unit the point came from, for points on the line.
    pub omega: Option<RealQuadInt>,
    /// Power of the automorph, for points from a confocal conic.
    pub step: Option<u32>,
    pub degenerate: bool,
}

impl RealQuadPoint {
    /// Exact check of `|Q-O|^2 = d_o^2` and `|Q-P|^2 = d_p^2`, with
    /// nonnegative distances.
    pub fn verify(&self, o: (&BigInt, &BigInt), p: (&BigInt, &BigInt)) -> bool {
        let dl = self.x.delta;
        let sq = |v: &RealQuadInt| v * v;
        let dist2 = |cx: &BigInt, cy: &BigInt| {
            &sq(&(&self.x - &RealQuadInt::int(cx.clone(), dl))) + &sq(&(&self.y - &RealQuadInt::int(cy.clone(), dl)))
        };
        dist2(o.0, o.1) == sq(&self.d_o)
            && dist2(p.0, p.1) == sq(&self.d_p)
            && self.d_o.signum() >= 0
            && self.d_p.signum() >= 0
    }
}

/// Points on the line through `O` perpendicular to `OP` (in the
/// coordinate role where `OP = (a, b)` has `a != 0`):
/// `Q = O + (0, t)` with `s - b + t = a w`, `s + b - t = a w^-1` for units
/// `w = 1 (mod 2)`, so `|QO| = |t|`, `|QP| = |s|`.
///
/// The first record (`w = 1`) is `Q = O + (0, b)`, flagged degenerate
/// when it coincides with a vertex.
pub fn realquad_line_points(
    o: (&BigInt, &BigInt),
    p: (&BigInt, &BigInt),
    delta: u64,
    count: usize,
) -> Result<Vec<RealQuadPoint>> {
    let (a, b) = (p.0 - o.0, p.1 - o.1);
    if a.is_zero() && b.is_zero() {
        return Err(Error::CoincidentPoints);
    }
    let swap = a.is_zero();
    let (a, b) = if swap { (b, a) } else { (a, b) };
    let (w1, _) = unit_one_mod_two(delta)?;
    let av = RealQuadInt::int(a, delta);
    let bv = RealQuadInt::int(b, delta);
    let two = BigInt::from(2);
    let mut out = Vec::with_capacity(count);
    let mut w = RealQuadInt::one(delta);
    for _ in 0..count {
        let winv = w.unit_inverse().expect("unit");
        let s = (&(&av * &w) + &(&av * &winv)).div_exact(&two).expect("w = 1 mod 2");
        let t = &bv + &(&(&av * &w) - &(&av * &winv)).div_exact(&two).expect("w = 1 mod 2");
        let zero = RealQuadInt::int(0, delta);
        let (dx, dy) = if swap { (t.clone(), zero) } else { (zero, t.clone()) };
        let q = RealQuadPoint {
            x: &dx + &RealQuadInt::int(o.0.clone(), delta),
            y: &dy + &RealQuadInt::int(o.1.clone(), delta),
            d_o: t.abs(),
            d_p: s.abs(),
            omega: Some(w.clone()),
            step: None,
            degenerate: t.is_zero() || s.is_zero(),
        };
        debug_assert!(q.verify(o, p));
        out.push(q);
        w = &w * &w1;
    }
    Ok(out)
}

/// A solution `(U, V)` of `U^2 - m V^2 = 1` with `V != 0` in `Z[sqrt(delta)]`.
///
/// When the conjugate of `m` is negative the conjugate equation
/// `U'^2 + |m'| V'^2 = 1` forces `V' = v1 - v2 sqrt(delta)` to be tiny, so
/// only `v1` next to `v2 sqrt(delta)` is tried, for `v2 <= bound^2`.
/// Otherwise the components of `V` are scanned in the box `|v1|, |v2| <= bound`.
pub fn pell_in_ring(m: &RealQuadInt, bound: u64) -> Option<(RealQuadInt, RealQuadInt)> {
    let dl = m.delta;
    let one = RealQuadInt::one(dl);
    let try_v = |v: RealQuadInt| {
        let u2 = &one + &(&(m * &v) * &v);
        ring_sqrt(&u2).map(|u| (u, v))
    };
    if m.conj().signum() < 0 {
        let root = (dl as f64).sqrt();
        for v2 in 1..=bound.saturating_mul(bound) {
            let c = (v2 as f64 * root).round() as i64;
            for v1 in [c - 1, c, c + 1] {
                if let Some(hit) = try_v(RealQuadInt::new(v1, v2, dl)) {
                    return Some(hit);
                }
            }
        }
        return None;
    }
    let bound = bound as i64;
    for r in 1..=bound {
        // the shell max(|v1|, |v2|) = r, in a fixed order
        for v1 in -r..=r {
            for v2 in -r..=r {
                if v1.abs().max(v2.abs()) != r || v2 < 0 || (v2 == 0 && v1 < 0) {
                    continue;
                }
                if let Some(hit) = try_v(RealQuadInt::new(v1, v2, dl)) {
                    return Some(hit);
                }
            }
        }
    }
    None
}

/// Exact square root in `Z[sqrt(delta)]`, if any.
pub fn ring_sqrt(x: &RealQuadInt) -> Option<RealQuadInt> {
    let n = x.norm();
    if n.is_negative() {
        return None;
    }
    let r = int_sqrt_exact(&n)?;
    let two = BigInt::from(2);
    for s in [r.clone(), -r] {
        let p2 = &x.a + &s;
        if p2.is_odd() || p2.is_negative() {
            continue;
        }
        let Some(p) = int_sqrt_exact(&(p2 / &two)) else {
            continue;
        };
        let q = if p.is_zero() {
            let d = BigInt::from(x.delta);
            if !(&x.a % &d).is_zero() {
                continue;
            }
            match int_sqrt_exact(&(&x.a / &d)) {
                Some(q) => q,
                None => continue,
            }
        } else {
            if !(&x.b % (&two * &p)).is_zero() {
                continue;
            }
            &x.b / (&two * &p)
        };
        let cand = RealQuadInt::new(p, q, x.delta);
        if &(&cand * &cand) == x {
            return Some(cand);
        }
    }
    None
}

/// Further integral points on the branch of the hyperbola
/// `|YO| - |YP| = k` through `seed`, obtained from powers of an automorph.
///
/// With `n = |OP|^2`, `m = n - k^2`, `Z = |YO| - k/2` and `S = cross(Y, P)`,
/// the conic reads `S^2 - m Z^2 = -n m / 4`; the automorph multiplies
/// `S + Z sqrt(m)` by a solution of `U^2 - m V^2 = 1`.
pub fn realquad_confocal_extend(
    o: (&BigInt, &BigInt),
    p: (&BigInt, &BigInt),
    seed: &RealQuadPoint,
    count: usize,
    bound: u64,
) -> Result<Vec<RealQuadPoint>> {
    if count == 0 {
        return Ok(Vec::new());
    }
    let dl = seed.x.delta;
    let (a, b) = (p.0 - o.0, p.1 - o.1);
    let rq = |n: &BigInt| RealQuadInt::int(n.clone(), dl);
    let x = &seed.x - &rq(o.0);
    let y = &seed.y - &rq(o.1);
    let n = &a * &a + &b * &b;
    let k = &seed.d_o - &seed.d_p;
    let m = &rq(&n) - &(&k * &k);
    let s0 = &(&x * &rq(&b)) - &(&y * &rq(&a));
    if s0.is_zero() || m.is_zero() {
        return Err(Error::DegenerateParameter("seed on the axis through O and P".into()));
    }
    let (u, v) = pell_in_ring(&m, bound).ok_or(Error::AutomorphNotFound(bound))?;
    // doubled coordinates S2 = 2S, Z2 = 2|YO| - k keep the recurrence integral
    let two = BigInt::from(2);
    let two_r = RealQuadInt::int(2, dl);
    let mut s2 = &s0 * &two_r;
    let mut z2 = &(&seed.d_o * &two_r) - &k;
    let mut out = Vec::with_capacity(count);
    let max_steps = (count as u32).saturating_mul(8).max(16);
    for step in 1..=max_steps {
        if out.len() >= count {
            break;
        }
        let s2_next = &(&s2 * &u) + &(&(&m * &z2) * &v);
        z2 = &(&s2 * &v) + &(&z2 * &u);
        s2 = s2_next;
        // |YO| = (Z2 + k)/2, Y.P = k |YO| + m/2, n Y = (Y.P) P + S (b, -a)
        let (Some(s), Some(d_o)) = (s2.div_exact(&two), (&z2 + &k).div_exact(&two)) else {
            continue;
        };
        let Some(ydotp) = (&(&(&k * &d_o) * &two_r) + &m).div_exact(&two) else {
            continue;
        };
        let nx = &(&ydotp * &rq(&a)) + &(&s * &rq(&b));
        let ny = &(&ydotp * &rq(&b)) - &(&s * &rq(&a));
        let (Some(qx), Some(qy)) = (nx.div_exact(&n), ny.div_exact(&n)) else {
            continue;
        };
        let d_p = &d_o - &k;
        let pt = RealQuadPoint {
            x: &qx + &rq(o.0),
            y: &qy + &rq(o.1),
            d_o: d_o.abs(),
            d_p: d_p.abs(),
            omega: None,
            step: Some(step),
            degenerate: d_o.is_zero() || d_p.is_zero(),
        };
        if pt.verify(o, p) {
            out.push(pt);
        }
    }
    Ok(out)
}
