//! Points at rational distance from three collinear points `O`, `P`,
//! `P' = qP` with `|P|^2 = p`. Write `Q = tP + uR` with `R` orthogonal
//! to `P`, `|R|^2 = p`, and `v = u^2`.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{serde_rational, QuadExt, Rational};
use crate::error::{Error, Result};
use crate::geometry::PlanePoint;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollinearSolution {
    #[serde(with = "serde_rational")]
    pub k: Rational,
    #[serde(with = "serde_rational")]
    pub kprime: Rational,
    #[serde(with = "serde_rational")]
    pub z: Rational,
    #[serde(with = "serde_rational")]
    pub t: Rational,
    #[serde(with = "serde_rational")]
    pub v: Rational,
    /// `sqrt(v)`; absent when `v < 0`.
    pub u: Option<QuadExt>,
    #[serde(with = "serde_rational")]
    pub d0: Rational,
    #[serde(with = "serde_rational")]
    pub d: Rational,
    #[serde(with = "serde_rational")]
    pub dprime: Rational,
}

impl CollinearSolution {
    /// Exact check of `t^2 + v = p z^2`, `(t-1)^2 + v = p (z+k)^2`,
    /// `(t-q)^2 + v = p (z+k')^2` and of the distances.
    pub fn verify(&self, p: &Rational, q: &Rational) -> bool {
        let one = Rational::from_integer(1.into());
        let sq = |a: &Rational| a * a;
        let e0 = sq(&self.t) + &self.v == p * sq(&self.z);
        let e1 = sq(&(&self.t - &one)) + &self.v == p * sq(&(&self.z + &self.k));
        let e2 = sq(&(&self.t - q)) + &self.v == p * sq(&(&self.z + &self.kprime));
        let dist = self.d0 == (p * &self.z).abs()
            && self.d == (p * (&self.z + &self.k)).abs()
            && self.dprime == (p * (&self.z + &self.kprime)).abs();
        let u_ok = match &self.u {
            Some(u) => u.square() == QuadExt::rational(self.v.clone()),
            None => self.v.is_negative(),
        };
        e0 && e1 && e2 && dist && u_ok
    }

    /// The ambient point `origin + t P + u R`, where `R` is `P` turned by
    /// a right angle.
    pub fn ambient(&self, origin: &PlanePoint, pvec: &PlanePoint) -> Result<PlanePoint> {
        let u = self.u.as_ref().ok_or(Error::NotRealizable)?;
        let rvec = PlanePoint::new(-pvec.y.clone(), pvec.x.clone());
        let tp = pvec.scale(&self.t);
        let ur = PlanePoint::new(rvec.x.try_mul(u)?, rvec.y.try_mul(u)?);
        origin.try_add(&tp)?.try_add(&ur)
    }
}

/// The solution for one pair `(k, k')`.
pub fn collinear_solution(p: &Rational, q: &Rational, k: &Rational, kp: &Rational) -> Result<CollinearSolution> {
    let one = Rational::from_integer(1.into());
    let two = Rational::from_integer(2.into());
    if !p.is_positive() {
        return Err(Error::DegenerateParameter("p must be positive".into()));
    }
    if q.is_zero() || *q == one {
        return Err(Error::CoincidentPoints);
    }
    let den = &two * p * (q * k - kp);
    if den.is_zero() {
        return Err(Error::DegeneratePair);
    }
    let z = (p * kp * kp - p * q * k * k - q * q + q) / den;
    let t = (&one - p * k * k - &two * p * &z * k) / &two;
    let v = p * &z * &z - &t * &t;
    let u = if v.is_negative() { None } else { Some(QuadExt::sqrt_of(&v)?) };
    let sol = CollinearSolution {
        d0: (p * &z).abs(),
        d: (p * (&z + k)).abs(),
        dprime: (p * (&z + kp)).abs(),
        k: k.clone(),
        kprime: kp.clone(),
        z,
        t,
        v,
        u,
    };
    debug_assert!(sol.verify(p, q));
    Ok(sol)
}

/// Solutions for each pair; degenerate pairs are skipped, and with
/// `realonly` so are pairs with `v < 0`.
pub fn generate3_collinear<I>(p: &Rational, q: &Rational, pairs: I, realonly: bool) -> Result<Vec<CollinearSolution>>
where
    I: IntoIterator<Item = (Rational, Rational)>,
{
    let mut out = Vec::new();
    for (k, kp) in pairs {
        match collinear_solution(p, q, &k, &kp) {
            Ok(s) if realonly && s.u.is_none() => {}
            Ok(s) => {
                if !out.contains(&s) {
                    out.push(s);
                }
            }
            Err(Error::DegeneratePair) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}
