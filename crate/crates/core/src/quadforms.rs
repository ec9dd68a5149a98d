//! Local-global machinery for the ternary forms `a*x^2 + b*y^2 - z^2`:
//! Hilbert symbols, isotropy, explicit points and conic parametrization.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{factorize, rational_sqrt, squarefree_part, Rational};
use crate::arith::rational::{from_bigint, int_sqrt_exact};
use crate::error::{Error, Result};

/// A place of Q.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Infinity,
    Prime(BigInt),
}

impl Place {
    pub fn prime(p: i64) -> Self {
        Place::Prime(BigInt::from(p))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => write!(f, "inf"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Place {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        if s == "inf" {
            Ok(Place::Infinity)
        } else {
            s.parse().map(Place::Prime).map_err(serde::de::Error::custom)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaceSymbolReport {
    pub place: Place,
    pub symbol: i8,
}

/// Primitive integral solution of `a*x^2 + b*y^2 = z^2` where `a`, `b` are
/// the squarefree coefficients the search ran on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConicPoint {
    #[serde(with = "bigint_str")]
    pub x: BigInt,
    #[serde(with = "bigint_str")]
    pub y: BigInt,
    #[serde(with = "bigint_str")]
    pub z: BigInt,
    #[serde(with = "bigint_str")]
    pub a: BigInt,
    #[serde(with = "bigint_str")]
    pub b: BigInt,
}

impl ConicPoint {
    pub fn satisfies(&self) -> bool {
        &self.a * &self.x * &self.x + &self.b * &self.y * &self.y == &self.z * &self.z
    }

    pub fn is_primitive(&self) -> bool {
        self.x.gcd(&self.y).gcd(&self.z).is_one()
    }
}

pub(crate) mod bigint_str {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(n)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

fn squarefree_coeff(q: &Rational) -> Result<BigInt> {
    if q.is_zero() {
        return Err(Error::ZeroInput);
    }
    Ok(squarefree_part(q)?.0)
}

/// Splits off the power of `p` from a squarefree integer.
fn split_prime(n: &BigInt, p: &BigInt) -> (u32, BigInt) {
    if n.is_multiple_of(p) {
        (1, n / p)
    } else {
        (0, n.clone())
    }
}

/// Legendre symbol `(u/p)` for odd prime `p` not dividing `u`.
fn legendre(u: &BigInt, p: &BigInt) -> i8 {
    let u = u.mod_floor(p);
    let e = (p - 1u32) >> 1;
    if u.modpow(&e, p).is_one() {
        1
    } else {
        -1
    }
}

fn mod8(u: &BigInt) -> u32 {
    let r = u.mod_floor(&BigInt::from(8));
    r.try_into().unwrap()
}

/// Local Hilbert symbol `(a, b)_v`.
pub fn hilbert_symbol(a: &Rational, b: &Rational, place: &Place) -> Result<i8> {
    let a = squarefree_coeff(a)?;
    let b = squarefree_coeff(b)?;
    Ok(hilbert_squarefree(&a, &b, place))
}

fn hilbert_squarefree(a: &BigInt, b: &BigInt, place: &Place) -> i8 {
    match place {
        Place::Infinity => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Prime(p) if *p == BigInt::from(2) => {
            let (alpha, u) = split_prime(a, p);
            let (beta, v) = split_prime(b, p);
            let (u8_, v8) = (mod8(&u), mod8(&v));
            let eps = |w: u32| ((w - 1) / 2) % 2;
            let omega = |w: u32| ((w * w - 1) / 8) % 2;
            let e = eps(u8_) * eps(v8) + alpha * omega(v8) + beta * omega(u8_);
            if e % 2 == 0 {
                1
            } else {
                -1
            }
        }
        Place::Prime(p) => {
            let (alpha, u) = split_prime(a, p);
            let (beta, v) = split_prime(b, p);
            let mut s: i8 = 1;
            if alpha * beta == 1 && mod8(p) % 4 == 3 {
                s = -s;
            }
            if beta == 1 {
                s *= legendre(&u, p);
            }
            if alpha == 1 {
                s *= legendre(&v, p);
            }
            s
        }
    }
}

/// The places where `(a, b)_v` can differ from `+1`: infinity, 2, and the
/// odd primes dividing the squarefree parts.
pub fn relevant_places(a: &Rational, b: &Rational) -> Result<Vec<Place>> {
    let a = squarefree_coeff(a)?;
    let b = squarefree_coeff(b)?;
    relevant_places_sf(&a, &b)
}

fn relevant_places_sf(a: &BigInt, b: &BigInt) -> Result<Vec<Place>> {
    let mut places = vec![Place::Infinity, Place::prime(2)];
    let mut primes: Vec<BigInt> = Vec::new();
    for n in [a, b] {
        for p in factorize(n)?.primes() {
            if *p != BigInt::from(2) && !primes.contains(p) {
                primes.push(p.clone());
            }
        }
    }
    primes.sort();
    places.extend(primes.into_iter().map(Place::Prime));
    Ok(places)
}

/// Symbols at every relevant place.
pub fn local_symbols(a: &Rational, b: &Rational) -> Result<Vec<PlaceSymbolReport>> {
    let sa = squarefree_coeff(a)?;
    let sb = squarefree_coeff(b)?;
    Ok(relevant_places_sf(&sa, &sb)?
        .into_iter()
        .map(|place| {
            let symbol = hilbert_squarefree(&sa, &sb, &place);
            PlaceSymbolReport { place, symbol }
        })
        .collect())
}

/// Places where the symbol is `-1`.
pub fn failing_places(a: &Rational, b: &Rational) -> Result<Vec<Place>> {
    Ok(local_symbols(a, b)?
        .into_iter()
        .filter(|r| r.symbol == -1)
        .map(|r| r.place)
        .collect())
}

/// Whether `a*x^2 + b*y^2 = z^2` has a nontrivial rational solution.
pub fn is_isotropic(a: &Rational, b: &Rational) -> Result<bool> {
    Ok(local_symbols(a, b)?.iter().all(|r| r.symbol == 1))
}

/// Primitive integral point on `A*x^2 + B*y^2 = z^2`, `A`, `B` the
/// squarefree parts of `a`, `b`.
///
/// The search scans `z = 0, 1, ...` inside the Holzer box (`|z| <= sqrt|AB| + 1`,
/// `|y| <= sqrt|A| + 1`), returns coordinates with `x, y >= 0`, prefers
/// witnesses with `x*y != 0`, and otherwise keeps the scan order `(z, y)`.
pub fn conic_point(a: &Rational, b: &Rational) -> Result<ConicPoint> {
    if !is_isotropic(a, b)? {
        return Err(Error::NoSolution);
    }
    let sa = squarefree_coeff(a)?;
    let sb = squarefree_coeff(b)?;
    let mut zb: BigInt = (&sa * &sb).abs().sqrt() + 1u32;
    let mut yb: BigInt = sa.abs().sqrt() + 1u32;
    if &zb * &yb > BigInt::from(BOX_SEARCH_LIMIT) {
        return descent_point(&sa, &sb);
    }
    for _ in 0..4 {
        if let Some(pt) = search_box(&sa, &sb, &zb, &yb) {
            return Ok(pt);
        }
        // should be unreachable: the Holzer box always holds a solution
        zb *= 2u32;
        yb *= 2u32;
    }
    Err(Error::SearchExhausted(format!("{sa}*x^2 + {sb}*y^2 = z^2")))
}

/// Above this many box cells, points come from Legendre descent instead of
/// the ordered scan.
const BOX_SEARCH_LIMIT: u64 = 40_000;

fn descent_point(a: &BigInt, b: &BigInt) -> Result<ConicPoint> {
    let (x, y, z) = legendre_descent(a, b)?.ok_or(Error::NoSolution)?;
    let g = x.gcd(&y).gcd(&z);
    Ok(ConicPoint {
        x: (x / &g).abs(),
        y: (y / &g).abs(),
        z: (z / &g).abs(),
        a: a.clone(),
        b: b.clone(),
    })
}

/// Nontrivial `(x, y, z)` with `a x^2 + b y^2 = z^2`, for squarefree `a`, `b`.
///
/// Lagrange descent: with `t^2 = a + b k^2 b'`, a solution for `(a, b')`
/// lifts through multiplication by `t + sqrt(a)` in `Q(sqrt a)`.
fn legendre_descent(a: &BigInt, b: &BigInt) -> Result<Option<(BigInt, BigInt, BigInt)>> {
    let one = BigInt::one();
    if a.is_one() {
        return Ok(Some((one.clone(), BigInt::zero(), one)));
    }
    if b.is_one() {
        return Ok(Some((BigInt::zero(), one.clone(), one)));
    }
    if a.abs() > b.abs() {
        return Ok(legendre_descent(b, a)?.map(|(x, y, z)| (y, x, z)));
    }
    if b.abs().is_one() {
        return Ok(None);
    }
    let n = b.abs();
    let Some(mut t) = sqrt_mod_squarefree(a, &n)? else {
        return Ok(None);
    };
    if &t * 2u32 > n {
        t -= &n;
    }
    let m = (&t * &t - a) / b;
    if m.is_zero() {
        return Ok(None);
    }
    let (b2, k) = crate::arith::squarefree_int(&m)?;
    let Some((x0, y0, z0)) = legendre_descent(a, &b2)? else {
        return Ok(None);
    };
    let z = &z0 * &t + a * &x0;
    let x = &z0 + &x0 * &t;
    let y = &b2 * &k * &y0;
    Ok(Some((x, y, z)))
}

/// Some `t` with `t^2 = a (mod n)`, `n` squarefree and positive.
fn sqrt_mod_squarefree(a: &BigInt, n: &BigInt) -> Result<Option<BigInt>> {
    let mut acc = BigInt::zero();
    let mut modulus = BigInt::one();
    for q in factorize(n)?.primes() {
        let Some(r) = sqrt_mod_prime(&a.mod_floor(q), q) else {
            return Ok(None);
        };
        // CRT: acc + modulus*h = r (mod q)
        let inv = modinv(&modulus.mod_floor(q), q);
        let h = ((&r - &acc) * inv).mod_floor(q);
        acc += &modulus * h;
        modulus *= q;
    }
    Ok(Some(acc.mod_floor(&modulus)))
}

fn modinv(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    e.x.mod_floor(m)
}

/// Tonelli-Shanks.
fn sqrt_mod_prime(a: &BigInt, p: &BigInt) -> Option<BigInt> {
    let two = BigInt::from(2);
    if a.is_zero() || p == &two {
        return Some(a.mod_floor(p));
    }
    if legendre(a, p) != 1 {
        return None;
    }
    let pm1: BigInt = p - 1u32;
    let mut q = pm1.clone();
    let mut s = 0u32;
    while q.is_even() {
        q >>= 1;
        s += 1;
    }
    let mut z = two;
    while legendre(&z, p) != -1 {
        z += 1u32;
    }
    let mut m = s;
    let mut c = z.modpow(&q, p);
    let mut t = a.modpow(&q, p);
    let mut r = a.modpow(&((&q + 1u32) >> 1), p);
    while !t.is_one() {
        let mut i = 0u32;
        let mut t2 = t.clone();
        while !t2.is_one() {
            t2 = (&t2 * &t2).mod_floor(p);
            i += 1;
        }
        let b = c.modpow(&(BigInt::one() << (m - i - 1)), p);
        m = i;
        c = (&b * &b).mod_floor(p);
        t = (&t * &c).mod_floor(p);
        r = (&r * &b).mod_floor(p);
    }
    Some(r)
}

fn search_box(a: &BigInt, b: &BigInt, zb: &BigInt, yb: &BigInt) -> Option<ConicPoint> {
    let mut fallback: Option<ConicPoint> = None;
    let mut z = BigInt::zero();
    while &z <= zb {
        let mut best: Option<ConicPoint> = None;
        let mut y = BigInt::zero();
        while &y <= yb {
            let num = &z * &z - b * &y * &y;
            if num.is_multiple_of(a) {
                if let Some(x) = int_sqrt_exact(&(&num / a)) {
                    let nontrivial = !(x.is_zero() && y.is_zero() && z.is_zero());
                    if nontrivial && x.gcd(&y).gcd(&z).is_one() {
                        let cand = ConicPoint {
                            x,
                            y: y.clone(),
                            z: z.clone(),
                            a: a.clone(),
                            b: b.clone(),
                        };
                        let better = match &best {
                            None => true,
                            Some(cur) => {
                                let key = |p: &ConicPoint| {
                                    (p.x.is_zero() || p.y.is_zero(), p.y.clone(), p.x.clone())
                                };
                                key(&cand) < key(cur)
                            }
                        };
                        if better {
                            best = Some(cand);
                        }
                    }
                }
            }
            y += 1u32;
        }
        if let Some(pt) = best {
            if !pt.x.is_zero() && !pt.y.is_zero() {
                return Some(pt);
            }
            fallback.get_or_insert(pt);
        }
        z += 1u32;
    }
    fallback
}

/// A rational solution `(X, Y, Z)` of `a*X^2 + b*Y^2 = Z^2` obtained by
/// rescaling [`conic_point`].
pub fn rational_witness(a: &Rational, b: &Rational) -> Result<(Rational, Rational, Rational)> {
    let pt = conic_point(a, b)?;
    let (_, ca) = squarefree_part(a)?;
    let (_, cb) = squarefree_part(b)?;
    Ok((
        from_bigint(pt.x) / ca,
        from_bigint(pt.y) / cb,
        from_bigint(pt.z),
    ))
}

/// `axx*x^2 + axy*x*y + ayy*y^2 + ax*x + ay*y + a0 = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineConic {
    #[serde(with = "crate::arith::serde_rational")]
    pub axx: Rational,
    #[serde(with = "crate::arith::serde_rational")]
    pub axy: Rational,
    #[serde(with = "crate::arith::serde_rational")]
    pub ayy: Rational,
    #[serde(with = "crate::arith::serde_rational")]
    pub ax: Rational,
    #[serde(with = "crate::arith::serde_rational")]
    pub ay: Rational,
    #[serde(with = "crate::arith::serde_rational")]
    pub a0: Rational,
}

impl AffineConic {
    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        &self.axx * x * x + &self.axy * x * y + &self.ayy * y * y + &self.ax * x + &self.ay * y
            + &self.a0
    }

    pub fn gradient(&self, x: &Rational, y: &Rational) -> (Rational, Rational) {
        let two = Rational::from_integer(2.into());
        (
            &two * &self.axx * x + &self.axy * y + &self.ax,
            &self.axy * x + &two * &self.ayy * y + &self.ay,
        )
    }

    /// Determinant of the symmetric 3x3 matrix of the projective conic.
    pub fn discriminant(&self) -> Rational {
        let half = Rational::new(1.into(), 2.into());
        let (a, b, c) = (&self.axx, &self.axy * &half, &self.ayy);
        let (d, e, f) = (&self.ax * &half, &self.ay * &half, &self.a0);
        a * (c * f - &e * &e) - &b * (&b * f - &e * &d) + &d * (&b * &e - c * &d)
    }
}

/// Line-pencil parametrization of a conic through a rational point:
/// the line of slope `t` through `(x0, y0)` meets the conic again at
/// `point(t)`.
#[derive(Debug, Clone)]
pub struct ConicParametrization {
    pub conic: AffineConic,
    pub x0: Rational,
    pub y0: Rational,
}

impl ConicParametrization {
    /// Second intersection for slope `t`, or `None` for the finitely many
    /// exceptional slopes (asymptotic directions).
    pub fn point(&self, t: &Rational) -> Option<(Rational, Rational)> {
        let c = &self.conic;
        let q = &c.axx + &c.axy * t + &c.ayy * t * t;
        if q.is_zero() {
            return None;
        }
        let (gx, gy) = c.gradient(&self.x0, &self.y0);
        let l = gx + gy * t;
        let s = -l / q;
        Some((&self.x0 + &s, &self.y0 + &s * t))
    }

    /// Point on the vertical line through the base point.
    pub fn point_vertical(&self) -> Option<(Rational, Rational)> {
        let c = &self.conic;
        if c.ayy.is_zero() {
            return None;
        }
        let (_, gy) = c.gradient(&self.x0, &self.y0);
        let s = -gy / &c.ayy;
        Some((self.x0.clone(), &self.y0 + s))
    }

    /// Rational slopes where [`point`](Self::point) is undefined.
    pub fn exceptional(&self) -> Vec<Rational> {
        let c = &self.conic;
        quadratic_rational_roots(&c.ayy, &c.axy, &c.axx)
    }
}

/// Rational roots of `a*t^2 + b*t + c`.
fn quadratic_rational_roots(a: &Rational, b: &Rational, c: &Rational) -> Vec<Rational> {
    if a.is_zero() {
        if b.is_zero() {
            return Vec::new();
        }
        return vec![-c / b];
    }
    let disc = b * b - Rational::from_integer(4.into()) * a * c;
    match rational_sqrt(&disc) {
        None => Vec::new(),
        Some(r) => {
            let two_a = a * Rational::from_integer(2.into());
            let mut roots = vec![(-b - &r) / &two_a, (-b + &r) / &two_a];
            roots.sort();
            roots.dedup();
            roots
        }
    }
}

pub fn conic_parametrize(
    conic: &AffineConic,
    x0: &Rational,
    y0: &Rational,
) -> Result<ConicParametrization> {
    if conic.discriminant().is_zero() {
        return Err(Error::DegenerateConic);
    }
    if !conic.eval(x0, y0).is_zero() {
        return Err(Error::DegenerateParameter(format!(
            "({x0}, {y0}) is not on the conic"
        )));
    }
    let (gx, gy) = conic.gradient(x0, y0);
    if gx.is_zero() && gy.is_zero() {
        return Err(Error::DegenerateConic);
    }
    Ok(ConicParametrization {
        conic: conic.clone(),
        x0: x0.clone(),
        y0: y0.clone(),
    })
}
