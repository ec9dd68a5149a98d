//! Exact distance checks for arbitrary configurations and a bounded search
//! for points at rational distance from every point of a configuration.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::arith::{int_sqrt_exact, rational_sqrt, serde_rational, QuadExt, Rational};
use crate::error::{Error, Result};
use crate::geometry::{orthogonal_basis, PlanePoint, Triangle};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceReport {
    pub index: usize,
    pub dist_sq: QuadExt,
    /// The distance, when the squared distance is a rational square.
    #[serde(with = "serde_rational::option")]
    pub distance: Option<Rational>,
}

/// Squared distance from `q` to each point and whether it is a rational
/// square.
pub fn verify_distances(points: &[PlanePoint], q: &PlanePoint) -> Result<Vec<DistanceReport>> {
    points
        .iter()
        .enumerate()
        .map(|(index, p)| {
            let dist_sq = q.dist_sq(p)?;
            let distance = dist_sq.to_rational().and_then(|r| rational_sqrt(&r));
            Ok(DistanceReport {
                index,
                dist_sq,
                distance,
            })
        })
        .collect()
}

/// A lattice point `base + t v1 + u v2` at rational distance from every
/// configuration point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchHit {
    #[serde(with = "serde_rational")]
    pub t: Rational,
    #[serde(with = "serde_rational")]
    pub u: Rational,
    pub q: PlanePoint,
    pub distances: Vec<DistanceReport>,
}

/// Rationals of height `max(|n|, d) <= h`, ordered by denominator then numerator.
pub fn rationals_of_height(h: u64) -> Vec<(i64, i64)> {
    let h = h as i64;
    let mut out = Vec::new();
    for d in 1..=h {
        for n in -h..=h {
            if n.gcd(&d) == 1 || (n == 0 && d == 1) {
                out.push((n, d));
            }
        }
    }
    out
}

/// `|Q - P_i|^2 = c0 + 2 c1 t + 2 c2 u + c3 t^2 + 2 c4 t u + c5 u^2`,
/// scaled to integers: `scale * |Q - P_i|^2 * (dt du)^2` is an integer
/// polynomial in `(nt, dt, nu, du)`.
struct DistForm {
    c: [BigInt; 6],
    scale: BigInt,
    fast: Option<[i128; 6]>,
    fast_scale: i128,
}

impl DistForm {
    fn new(coeffs: [Rational; 6]) -> Self {
        let l = coeffs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let c = coeffs.map(|q| (q * Rational::from_integer(l.clone())).to_integer());
        let fast = c.iter().map(|x| x.to_i128()).collect::<Option<Vec<_>>>().map(|v| {
            let mut a = [0i128; 6];
            a.copy_from_slice(&v);
            a
        });
        DistForm {
            fast_scale: l.to_i128().unwrap_or(0),
            c,
            scale: l,
            fast,
        }
    }

    fn value_big(&self, nt: i64, dt: i64, nu: i64, du: i64) -> BigInt {
        let (nt, dt, nu, du) = (BigInt::from(nt), BigInt::from(dt), BigInt::from(nu), BigInt::from(du));
        let c = &self.c;
        let two = BigInt::from(2);
        &c[0] * &dt * &dt * &du * &du
            + &two * &c[1] * &nt * &dt * &du * &du
            + &two * &c[2] * &nu * &du * &dt * &dt
            + &c[3] * &nt * &nt * &du * &du
            + &two * &c[4] * &nt * &nu * &dt * &du
            + &c[5] * &nu * &nu * &dt * &dt
    }

    fn value_fast(&self, nt: i64, dt: i64, nu: i64, du: i64) -> Option<i128> {
        let c = self.fast?;
        let (nt, dt, nu, du) = (nt as i128, dt as i128, nu as i128, du as i128);
        let terms = [
            c[0].checked_mul(dt * dt * du * du)?,
            c[1].checked_mul(2 * nt * dt * du * du)?,
            c[2].checked_mul(2 * nu * du * dt * dt)?,
            c[3].checked_mul(nt * nt * du * du)?,
            c[4].checked_mul(2 * nt * nu * dt * du)?,
            c[5].checked_mul(nu * nu * dt * dt)?,
        ];
        let mut acc: i128 = 0;
        for t in terms {
            acc = acc.checked_add(t)?;
        }
        acc.checked_mul(self.fast_scale)
    }

    /// Whether `|Q - P_i|^2` is a rational square at `(nt/dt, nu/du)`.
    fn is_square_at(&self, nt: i64, dt: i64, nu: i64, du: i64) -> bool {
        if let Some(v) = self.value_fast(nt, dt, nu, du) {
            if v < 0 {
                return false;
            }
            let r = v.sqrt();
            return r * r == v;
        }
        let v = self.value_big(nt, dt, nu, du) * &self.scale;
        !v.is_negative() && int_sqrt_exact(&v).is_some()
    }
}

/// Points `Q` of the lattice of the first three points, with coordinates
/// `(t, u)` of height at most `h`, at rational distance from every point.
///
/// All pairwise squared distances must be rational; otherwise no sub-triple
/// is dense and the result is empty.
pub fn search4(points: &[PlanePoint], h: u64) -> Result<Vec<SearchHit>> {
    if points.len() < 3 {
        return Err(Error::DegenerateParameter("at least three points are needed".into()));
    }
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if points[i] == points[j] {
                return Err(Error::CoincidentPoints);
            }
            if !points[i].dist_sq(&points[j])?.is_rational() {
                return Ok(Vec::new());
            }
        }
    }
    let tri = Triangle::from_points([points[0].clone(), points[1].clone(), points[2].clone()])?;
    let g = tri.gram_frame(0)?;
    if g.is_collinear() {
        return Err(Error::Collinear);
    }
    let lat = orthogonal_basis(&g, &tri, 0)?;
    let rat = |x: QuadExt| x.to_rational().ok_or_else(|| Error::NotRationalGram("lattice data".into()));
    let v11 = rat(lat.v1.try_dot(&lat.v1)?)?;
    let v12 = rat(lat.v1.try_dot(&lat.v2)?)?;
    let v22 = rat(lat.v2.try_dot(&lat.v2)?)?;
    let forms = points
        .iter()
        .map(|p| {
            let w = lat.base.try_sub(p)?;
            Ok(DistForm::new([
                rat(w.try_dot(&w)?)?,
                rat(w.try_dot(&lat.v1)?)?,
                rat(w.try_dot(&lat.v2)?)?,
                v11.clone(),
                v12.clone(),
                v22.clone(),
            ]))
        })
        .collect::<Result<Vec<_>>>()?;
    let vals = rationals_of_height(h);
    let mut hits = Vec::new();
    for &(nt, dt) in &vals {
        for &(nu, du) in &vals {
            if forms.iter().all(|f| f.is_square_at(nt, dt, nu, du)) {
                let (t, u) = (Rational::new(nt.into(), dt.into()), Rational::new(nu.into(), du.into()));
                let q = lat.point(&t, &u);
                let distances = verify_distances(points, &q)?;
                if distances.iter().all(|d| d.distance.is_some()) {
                    hits.push(SearchHit { t, u, q, distances });
                }
            }
        }
    }
    Ok(hits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn rp(x: i64, y: i64) -> PlanePoint {
        PlanePoint::rational(int(x), int(y))
    }

    #[test]
    fn verify_examples() {
        let square = [rp(0, 0), rp(1, 0), rp(1, 1), rp(0, 1)];
        let q = PlanePoint::rational(rat(1, 2), rat(1, 2));
        let rep = verify_distances(&square, &q).unwrap();
        assert!(rep.iter().all(|r| r.dist_sq == QuadExt::rational(rat(1, 2)) && r.distance.is_none()));
        let q = PlanePoint::rational(int(1), rat(-3, 4));
        let rep = verify_distances(&[rp(0, 0), rp(1, 0)], &q).unwrap();
        assert_eq!(rep[0].distance, Some(rat(5, 4)));
        assert_eq!(rep[1].distance, Some(rat(3, 4)));
        assert!(verify_distances(&[], &q).unwrap().is_empty());
    }

    #[test]
    fn small_square_search_is_empty() {
        let square = [rp(0, 0), rp(1, 0), rp(1, 1), rp(0, 1)];
        assert!(search4(&square, 8).unwrap().is_empty());
    }

    #[test]
    fn three_points_find_known_solutions() {
        let hits = search4(&[rp(0, 0), rp(3, 0), rp(0, 4)], 6).unwrap();
        // the vertices themselves lie in the lattice
        assert!(hits.iter().any(|h| h.q == rp(0, 0)));
        assert!(hits.iter().all(|h| h.distances.iter().all(|d| d.distance.is_some())));
        assert!(matches!(search4(&[rp(0, 0), rp(0, 0), rp(1, 1)], 3), Err(Error::CoincidentPoints)));
    }

    #[test]
    fn irrational_pair_gives_empty() {
        let pts = [rp(0, 0), rp(1, 0), PlanePoint::new(QuadExt::from_int(0), QuadExt::new(int(0), int(1), 2).unwrap()), rp(1, 1)];
        assert!(search4(&pts, 3).unwrap().is_empty());
    }
}
