//! Points with coordinates and distances in `Z[i]`.
//!
//! For `P = (a, b)` and `alpha = a + ib`, write `w1 = x + iy`,
//! `w2 = x - iy`. Then `|Q|^2 = w1 w2` and `|Q - P|^2 = (w1 - alpha)(w2 - conj alpha)`,
//! so solutions of `d1 r^2 - d2 s^2 = alpha`, `d1 u^2 - d2 v^2 = conj alpha`
//! give `w1 = d1 r^2`, `w2 = d1 u^2` with both products squares.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{factorize, int_sqrt_exact};
use crate::error::{Error, Result};
use crate::quadforms::bigint_str;

use super::realquad::fundamental_unit;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GaussianInt {
    #[serde(with = "bigint_str")]
    pub re: BigInt,
    #[serde(with = "bigint_str")]
    pub im: BigInt,
}

impl GaussianInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        GaussianInt {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn zero() -> Self {
        GaussianInt::new(0, 0)
    }

    pub fn one() -> Self {
        GaussianInt::new(1, 0)
    }

    pub fn i() -> Self {
        GaussianInt::new(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianInt::new(self.re.clone(), -&self.im)
    }

    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(GaussianInt::one(), |acc, _| &acc * self)
    }

    /// Exact quotient, if `d` divides `self`.
    pub fn div_exact(&self, d: &GaussianInt) -> Option<Self> {
        let n = d.norm();
        if n.is_zero() {
            return None;
        }
        let num = self * &d.conj();
        if !(&num.re % &n).is_zero() || !(&num.im % &n).is_zero() {
            return None;
        }
        Some(GaussianInt::new(num.re / &n, num.im / n))
    }

    /// Quotient rounded to the nearest Gaussian integer.
    fn div_round(&self, d: &GaussianInt) -> Self {
        let n = d.norm();
        let num = self * &d.conj();
        let two_n = BigInt::from(2) * &n;
        let round = |x: &BigInt| (BigInt::from(2) * x + &n).div_floor(&two_n);
        GaussianInt::new(round(&num.re), round(&num.im))
    }

    /// Exact square root, if `self` is a square in `Z[i]`.
    pub fn sqrt(&self) -> Option<Self> {
        let r = int_sqrt_exact(&self.norm())?;
        let p2 = &r + &self.re;
        let q2 = &r - &self.re;
        if p2.is_odd() {
            return None;
        }
        let p = int_sqrt_exact(&(p2 / 2))?;
        let q = int_sqrt_exact(&(q2 / 2))?;
        [GaussianInt::new(p.clone(), q.clone()), GaussianInt::new(p, -q)]
            .into_iter()
            .find(|c| &c.square() == self)
    }

    pub fn is_square(&self) -> bool {
        self.sqrt().is_some()
    }

    /// Real (`im = 0`) or purely imaginary (`re = 0`).
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_imaginary(&self) -> bool {
        self.re.is_zero()
    }
}

impl fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            _ => {
                let sign = if self.im.is_negative() { "-" } else { "+" };
                write!(f, "{} {sign} {}i", self.re, self.im.abs())
            }
        }
    }
}

impl Add for &GaussianInt {
    type Output = GaussianInt;
    fn add(self, o: &GaussianInt) -> GaussianInt {
        GaussianInt::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub for &GaussianInt {
    type Output = GaussianInt;
    fn sub(self, o: &GaussianInt) -> GaussianInt {
        GaussianInt::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Mul for &GaussianInt {
    type Output = GaussianInt;
    fn mul(self, o: &GaussianInt) -> GaussianInt {
        GaussianInt::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Neg for GaussianInt {
    type Output = GaussianInt;
    fn neg(self) -> GaussianInt {
        GaussianInt::new(-self.re, -self.im)
    }
}

fn gcd(a: &GaussianInt, b: &GaussianInt) -> GaussianInt {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let r = &a - &(&a.div_round(&b) * &b);
        a = std::mem::replace(&mut b, r);
    }
    a
}

/// The Gaussian primes above the rational prime `p` (one for 2 and for
/// inert primes, two conjugates for `p = 1 mod 4`).
fn primes_above(p: &BigInt) -> Vec<GaussianInt> {
    let four = BigInt::from(4);
    if *p == BigInt::from(2) {
        return vec![GaussianInt::new(1, 1)];
    }
    if (p % &four) == BigInt::from(3) {
        return vec![GaussianInt::new(p.clone(), 0)];
    }
    // x^2 = -1 mod p from a quadratic nonresidue c: x = c^((p-1)/4)
    let e = (p - 1) / &four;
    let mut c = BigInt::from(2);
    loop {
        let x = c.modpow(&e, p);
        if (&x * &x + 1) % p == BigInt::zero() {
            let pi = gcd(&GaussianInt::new(p.clone(), 0), &GaussianInt::new(x, 1));
            return vec![pi.clone(), pi.conj()];
        }
        c += 1;
    }
}

/// `alpha = rho * xi^2` with `rho` squarefree in `Z[i]`.
pub fn squarefree_decomposition(alpha: &GaussianInt) -> Result<(GaussianInt, GaussianInt)> {
    if alpha.is_zero() {
        return Err(Error::ZeroInput);
    }
    let fz = factorize(&alpha.norm())?;
    let mut rho = alpha.clone();
    let mut xi = GaussianInt::one();
    for p in fz.primes() {
        for pi in primes_above(p) {
            let pi2 = pi.square();
            while let Some(q) = rho.div_exact(&pi2) {
                rho = q;
                xi = &xi * &pi;
            }
        }
    }
    Ok((rho, xi))
}

/// A base system for `P = (Re alpha, Im alpha)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaussianSystem {
    pub alpha: GaussianInt,
    pub d1: GaussianInt,
    pub d2: GaussianInt,
    pub r: GaussianInt,
    pub s: GaussianInt,
    pub u: GaussianInt,
    pub v: GaussianInt,
}

impl GaussianSystem {
    /// `d1 r^2 - d2 s^2 = alpha`, `d1 u^2 - d2 v^2 = conj alpha`, and
    /// `d1 d2` is not a square.
    pub fn verify(&self) -> bool {
        let lhs = |x: &GaussianInt, y: &GaussianInt| &(&self.d1 * &x.square()) - &(&self.d2 * &y.square());
        lhs(&self.r, &self.s) == self.alpha
            && lhs(&self.u, &self.v) == self.alpha.conj()
            && !(&self.d1 * &self.d2).is_square()
    }
}

pub fn gaussian_decompose(alpha: &GaussianInt) -> Result<GaussianSystem> {
    if alpha.is_zero() {
        return Err(Error::ZeroInput);
    }
    if int_sqrt_exact(&alpha.norm()).is_none() {
        return Ok(GaussianSystem {
            alpha: alpha.clone(),
            d1: alpha.clone(),
            d2: alpha.conj(),
            r: GaussianInt::one(),
            s: GaussianInt::zero(),
            u: GaussianInt::zero(),
            v: GaussianInt::i(),
        });
    }
    let (rho, xi) = squarefree_decomposition(alpha)?;
    // a square norm forces rho to be real or purely imaginary
    let (step, uv) = if rho.is_real() {
        (GaussianInt::one(), xi.conj())
    } else if rho.is_imaginary() {
        (GaussianInt::i(), &GaussianInt::i() * &xi.conj())
    } else {
        return Err(Error::DegenerateParameter(format!("squarefree part {rho} is neither real nor imaginary")));
    };
    let mut j = 2i64;
    loop {
        let d2 = &step * &GaussianInt::new(j, 0);
        let d1 = &rho + &d2;
        j += 1;
        if d1.is_zero() || (&d1 * &d2).is_square() {
            continue;
        }
        let sys = GaussianSystem {
            alpha: alpha.clone(),
            d1,
            d2,
            r: xi.clone(),
            s: xi.clone(),
            u: uv.clone(),
            v: uv.clone(),
        };
        debug_assert!(sys.verify());
        return Ok(sys);
    }
}

/// `(A, B)` with `A^2 - D B^2 = 1`, `B != 0`.
pub fn gaussian_automorph(d: &GaussianInt, bound: u64) -> Result<(GaussianInt, GaussianInt)> {
    if d.is_real() {
        let n = d.re.abs();
        if let Some(n64) = n.to_u64() {
            if int_sqrt_exact(&n).is_none() {
                let mut eps = fundamental_unit(n64)?;
                if !eps.norm().is_one() {
                    eps = &eps * &eps;
                }
                let a = GaussianInt::new(eps.a, 0);
                let b = if d.re.is_positive() {
                    GaussianInt::new(eps.b, 0)
                } else {
                    GaussianInt::new(0, eps.b)
                };
                return Ok((a, b));
            }
        }
    }
    let bnd = bound as i64;
    for r in 1..=bnd {
        for b1 in -r..=r {
            for b2 in -r..=r {
                if b1.abs().max(b2.abs()) != r {
                    continue;
                }
                let b = GaussianInt::new(b1, b2);
                let a2 = &GaussianInt::one() + &(d * &b.square());
                if let Some(a) = a2.sqrt() {
                    return Ok((a, b));
                }
            }
        }
    }
    Err(Error::AutomorphNotFound(bound))
}

/// One pair of orbit elements and, when the parity condition holds, the
/// plane point it gives.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaussianSolution {
    /// Powers of the automorph applied to `(r, s)` and `(u, v)`.
    pub steps: (u32, u32),
    pub w1: GaussianInt,
    pub w2: GaussianInt,
    /// `|QO|`
    pub z: GaussianInt,
    /// `|QO| - |QP|`
    pub k: GaussianInt,
    pub point: Option<(GaussianInt, GaussianInt)>,
}

impl GaussianSolution {
    /// The norm relations `w1 w2 = z^2` and `(w1 - alpha)(w2 - conj alpha) = (z - k)^2`,
    /// which hold whether or not the plane point has integral coordinates.
    pub fn verify_norms(&self, alpha: &GaussianInt) -> bool {
        let zk = &self.z - &self.k;
        &self.w1 * &self.w2 == self.z.square()
            && &(&self.w1 - alpha) * &(&self.w2 - &alpha.conj()) == zk.square()
    }

    /// `x^2 + y^2 = z^2` and `(x-a)^2 + (y-b)^2 = (z-k)^2`.
    pub fn verify(&self, alpha: &GaussianInt) -> bool {
        let Some((x, y)) = &self.point else {
            return false;
        };
        let a = GaussianInt::new(alpha.re.clone(), 0);
        let b = GaussianInt::new(alpha.im.clone(), 0);
        let zk = &self.z - &self.k;
        &x.square() + &y.square() == self.z.square()
            && &(x - &a).square() + &(y - &b).square() == zk.square()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaussianOrbit {
    pub system: GaussianSystem,
    pub automorph: Option<(GaussianInt, GaussianInt)>,
    pub note: Option<String>,
    /// Plane points, in order of `steps.0 + steps.1`.
    pub points: Vec<GaussianSolution>,
    /// Orbit pairs failing the parity filter.
    pub filtered: Vec<GaussianSolution>,
}

/// Up to `count` plane points from the automorph orbits of the two base
/// pairs.
pub fn gaussian_orbit(sys: &GaussianSystem, count: usize, bound: u64) -> Result<GaussianOrbit> {
    let dd = &sys.d1 * &sys.d2;
    let (auto, note) = match gaussian_automorph(&dd, bound) {
        Ok(ab) => (Some(ab), None),
        Err(e @ Error::AutomorphNotFound(_)) => (None, Some(e.to_string())),
        Err(e) => return Err(e),
    };
    let act = |(r, s): &(GaussianInt, GaussianInt)| -> (GaussianInt, GaussianInt) {
        let (a, b) = auto.as_ref().expect("automorph");
        (&(a * r) + &(&(&sys.d2 * b) * s), &(&(&sys.d1 * b) * r) + &(a * s))
    };
    let len = if auto.is_some() { count + 4 } else { 1 };
    let mut rs = vec![(sys.r.clone(), sys.s.clone())];
    let mut uv = vec![(sys.u.clone(), sys.v.clone())];
    for _ in 1..len {
        let next_rs = act(rs.last().expect("nonempty"));
        let next_uv = act(uv.last().expect("nonempty"));
        rs.push(next_rs);
        uv.push(next_uv);
    }
    let check = |x: &GaussianInt, y: &GaussianInt, rhs: &GaussianInt| {
        &(&sys.d1 * &x.square()) - &(&sys.d2 * &y.square()) == *rhs
    };
    let conj = sys.alpha.conj();
    if !rs.iter().all(|(r, s)| check(r, s, &sys.alpha)) || !uv.iter().all(|(u, v)| check(u, v, &conj)) {
        return Err(Error::DegenerateParameter("automorph does not preserve the system".into()));
    }
    let two = GaussianInt::new(2, 0);
    let two_i = GaussianInt::new(0, 2);
    let mut out = GaussianOrbit {
        system: sys.clone(),
        automorph: auto.clone(),
        note,
        points: Vec::new(),
        filtered: Vec::new(),
    };
    'outer: for total in 0..(2 * len - 1) {
        for j in 0..=total.min(len - 1) {
            let l = total - j;
            if l >= len {
                continue;
            }
            if out.points.len() >= count {
                break 'outer;
            }
            let (r, s) = &rs[j];
            let (u, v) = &uv[l];
            let w1 = &sys.d1 * &r.square();
            let w2 = &sys.d1 * &u.square();
            let z = &(&sys.d1 * r) * u;
            let k = &z - &(&(&sys.d2 * s) * v);
            let point = match ((&w1 + &w2).div_exact(&two), (&w1 - &w2).div_exact(&two_i)) {
                (Some(x), Some(y)) => Some((x, y)),
                _ => None,
            };
            let sol = GaussianSolution {
                steps: (j as u32, l as u32),
                w1,
                w2,
                z,
                k,
                point,
            };
            if sol.verify(&sys.alpha) && sol.verify_norms(&sys.alpha) {
                out.points.push(sol);
            } else {
                out.filtered.push(sol);
            }
        }
    }
    Ok(out)
}
