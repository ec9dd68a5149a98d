//! Decision procedures for density of points at rational (or rational
//! squared) distance from three given points.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{factorize, serde_rational, squarefree_part, QuadExt, Rational};
use crate::error::{Error, Result};
use crate::geometry::{iwasawa_data, GramFrame, IwasawaData, PlanePoint, Triangle};
use crate::quadforms::{conic_point, failing_places, rational_witness, ConicPoint, Place};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Reason {
    RationalGramAndRepresentsSquare,
    GramIrrational,
    SquareNotRepresented,
    CollinearRational,
    CollinearIrrational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// The rational Gram entries themselves.
    RationalGram {
        #[serde(with = "serde_rational")]
        p: Rational,
        #[serde(with = "serde_rational")]
        pprime: Rational,
        #[serde(with = "serde_rational")]
        s: Rational,
    },
    /// `p*x^2 + r*y^2 = z^2` with `z != 0`, plus the primitive integral
    /// point on the squarefree model it came from.
    SquareWitness {
        #[serde(with = "serde_rational")]
        p: Rational,
        #[serde(with = "serde_rational")]
        r: Rational,
        #[serde(with = "serde_rational")]
        x: Rational,
        #[serde(with = "serde_rational")]
        y: Rational,
        #[serde(with = "serde_rational")]
        z: Rational,
        conic: ConicPoint,
    },
    /// `r*x^2 + s*y^2 = 1` for the Iwasawa data of the Gram matrix.
    RepresentsOne {
        data: IwasawaData,
        #[serde(with = "serde_rational")]
        x: Rational,
        #[serde(with = "serde_rational")]
        y: Rational,
    },
    FailingPlaces { places: Vec<Place> },
    IrrationalEntry { entry: String, value: QuadExt },
    Collinear { p: QuadExt, q: QuadExt },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub dense: bool,
    pub reason: Reason,
    pub certificate: Certificate,
}

fn irrational(g: &GramFrame, reason: Reason) -> Option<Verdict> {
    let (name, v) = g.irrational_entry()?;
    Some(Verdict {
        dense: false,
        reason,
        certificate: Certificate::IrrationalEntry {
            entry: name.to_string(),
            value: v.clone(),
        },
    })
}

fn collinear_verdict(g: &GramFrame) -> Verdict {
    if let Some(v) = irrational(g, Reason::CollinearIrrational) {
        return v;
    }
    Verdict {
        dense: true,
        reason: Reason::CollinearRational,
        certificate: Certificate::Collinear {
            p: g.p.clone(),
            q: g.c.clone(),
        },
    }
}

/// Density of points whose squared distances to all three vertices are
/// rational, using the given origin vertex.
pub fn decide_square_density_at(t: &Triangle, origin: usize) -> Result<Verdict> {
    let g = t.gram_frame(origin)?;
    if g.is_collinear() {
        return Ok(collinear_verdict(&g));
    }
    if let Some(v) = irrational(&g, Reason::GramIrrational) {
        return Ok(v);
    }
    let rg = g.rational_entries()?;
    Ok(Verdict {
        dense: true,
        reason: Reason::RationalGramAndRepresentsSquare,
        certificate: Certificate::RationalGram {
            p: rg.p,
            pprime: rg.pprime,
            s: rg.s,
        },
    })
}

pub fn decide_square_density(t: &Triangle) -> Result<Verdict> {
    decide_square_density_at(t, 0)
}

/// Density of points at rational distance from all three vertices.
pub fn decide_rational_density_at(t: &Triangle, origin: usize) -> Result<Verdict> {
    let g = t.gram_frame(origin)?;
    if g.is_collinear() {
        return Ok(collinear_verdict(&g));
    }
    if let Some(v) = irrational(&g, Reason::GramIrrational) {
        return Ok(v);
    }
    let rg = g.rational_entries()?;
    let bad = failing_places(&rg.p, &rg.r)?;
    if !bad.is_empty() {
        return Ok(Verdict {
            dense: false,
            reason: Reason::SquareNotRepresented,
            certificate: Certificate::FailingPlaces { places: bad },
        });
    }
    let conic = conic_point(&rg.p, &rg.r)?;
    let (x, y, z) = rational_witness(&rg.p, &rg.r)?;
    Ok(Verdict {
        dense: true,
        reason: Reason::RationalGramAndRepresentsSquare,
        certificate: Certificate::SquareWitness {
            p: rg.p,
            r: rg.r,
            x,
            y,
            z,
            conic,
        },
    })
}

pub fn decide_rational_density(t: &Triangle) -> Result<Verdict> {
    decide_rational_density_at(t, 0)
}

/// The Iwasawa form of the criterion: `r x^2 + s y^2` represents 1 and
/// the unipotent part is rational.
pub fn check_condition_iv_at(t: &Triangle, origin: usize) -> Result<Verdict> {
    let g = t.gram_frame(origin)?;
    if g.is_collinear() {
        return Err(Error::Collinear);
    }
    if let Some(v) = irrational(&g, Reason::GramIrrational) {
        return Ok(v);
    }
    let data = iwasawa_data(&g)?;
    let bad = failing_places(&data.r, &data.s)?;
    if !bad.is_empty() {
        return Ok(Verdict {
            dense: false,
            reason: Reason::SquareNotRepresented,
            certificate: Certificate::FailingPlaces { places: bad },
        });
    }
    // positive definite, so the witness has z != 0
    let (x, y, z) = rational_witness(&data.r, &data.s)?;
    Ok(Verdict {
        dense: true,
        reason: Reason::RationalGramAndRepresentsSquare,
        certificate: Certificate::RepresentsOne {
            data,
            x: x / &z,
            y: y / &z,
        },
    })
}

pub fn check_condition_iv(t: &Triangle) -> Result<Verdict> {
    check_condition_iv_at(t, 0)
}

/// Whether `q > 0` is a sum of two rational squares.
pub fn is_sum_of_two_squares(q: &Rational) -> Result<bool> {
    if !q.is_positive() {
        return Ok(false);
    }
    let (s, _) = squarefree_part(q)?;
    let f = factorize(&s)?;
    let three = BigInt::from(3);
    let ok = f.primes().all(|p| p.mod_floor(&BigInt::from(4)) != three);
    Ok(ok)
}

/// Whether `x -> T x + shift` is `lambda * A` with `A` rational and
/// `lambda^2` a sum of two rational squares.
pub fn is_admissible_transform(m: &[[QuadExt; 2]; 2], _shift: &PlanePoint) -> Result<bool> {
    let entries = [&m[0][0], &m[0][1], &m[1][0], &m[1][1]];
    if QuadExt::common_field(entries).is_err() {
        // entries of lambda*A all lie in Q(lambda)
        return Ok(false);
    }
    let det = m[0][0].try_mul(&m[1][1])?.try_sub(&m[0][1].try_mul(&m[1][0])?)?;
    if det.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let lead = entries.iter().find(|e| !e.is_zero()).expect("nonsingular");
    for e in entries.iter().filter(|e| !e.is_zero()) {
        if !e.try_div(lead)?.is_rational() {
            return Ok(false);
        }
    }
    match lead.square().to_rational() {
        Some(l2) => is_sum_of_two_squares(&l2),
        None => Ok(false),
    }
}

/// Small positive integer view of a place, used by report formatting.
pub fn place_value(p: &Place) -> Option<u64> {
    match p {
        Place::Infinity => None,
        Place::Prime(q) => q.to_u64(),
    }
}

impl Verdict {
    /// Re-checks the certificate against the triangle it was issued for.
    pub fn certificate_holds(&self, t: &Triangle, origin: usize) -> bool {
        let Ok(g) = t.gram_frame(origin) else {
            return false;
        };
        match &self.certificate {
            Certificate::RationalGram { p, pprime, s } => {
                g.p == QuadExt::from(p.clone())
                    && g.pprime == QuadExt::from(pprime.clone())
                    && g.s == QuadExt::from(s.clone())
            }
            Certificate::SquareWitness { p, r, x, y, z, conic } => {
                g.p == QuadExt::from(p.clone())
                    && g.r == QuadExt::from(r.clone())
                    && !z.is_zero()
                    && p * x * x + r * y * y == z * z
                    && conic.satisfies()
            }
            Certificate::RepresentsOne { data, x, y } => {
                &data.r * x * x + &data.s * y * y == Rational::from_integer(1.into())
            }
            Certificate::FailingPlaces { places } => !places.is_empty() && !self.dense,
            Certificate::IrrationalEntry { value, .. } => !value.is_rational() && !self.dense,
            Certificate::Collinear { p, q } => g.is_collinear() && *p == g.p && *q == g.c,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn q(n: i64) -> QuadExt {
        QuadExt::from_int(n)
    }

    fn sqrt(n: i64) -> QuadExt {
        QuadExt::sqrt_of(&int(n)).unwrap()
    }

    fn rp(x: i64, y: i64) -> PlanePoint {
        PlanePoint::rational(int(x), int(y))
    }

    fn pentagon() -> Triangle {
        Triangle::from_sides_sq(q(1), q(1), QuadExt::new(rat(3, 2), rat(1, 2), 5).unwrap()).unwrap()
    }

    fn root3() -> Triangle {
        Triangle::from_points([PlanePoint::origin(), rp(1, 0), PlanePoint::new(q(0), sqrt(3))])
            .unwrap()
    }

    fn root3_root5() -> Triangle {
        Triangle::from_sides_sq(q(3), q(5), q(8)).unwrap()
    }

    #[test]
    fn square_density_examples() {
        let t = Triangle::from_points([rp(0, 0), rp(3, 0), rp(0, 4)]).unwrap();
        assert!(decide_square_density(&t).unwrap().dense);
        let v = decide_square_density(&pentagon()).unwrap();
        assert!(!v.dense);
        assert_eq!(v.reason, Reason::GramIrrational);
        // the irrational entry is s = (1 - sqrt5)/4, coming from the diagonal (3+sqrt5)/2
        match v.certificate {
            Certificate::IrrationalEntry { value, .. } => {
                assert_eq!(value, QuadExt::new(rat(1, 4), rat(-1, 4), 5).unwrap())
            }
            other => panic!("{other:?}"),
        }
        assert!(decide_square_density(&root3_root5()).unwrap().dense);
    }

    #[test]
    fn rational_density_examples() {
        let v = decide_rational_density(&root3()).unwrap();
        assert!(v.dense);
        match &v.certificate {
            Certificate::SquareWitness { conic, .. } => {
                assert_eq!((conic.x.clone(), conic.y.clone(), conic.z.clone()), (1.into(), 1.into(), 2.into()))
            }
            other => panic!("{other:?}"),
        }
        assert!(v.certificate_holds(&root3(), 0));

        let v = decide_rational_density(&root3_root5()).unwrap();
        assert!(!v.dense);
        assert_eq!(
            v.certificate,
            Certificate::FailingPlaces {
                places: vec![Place::prime(3), Place::prime(5)]
            }
        );
        let t = Triangle::from_points([rp(0, 0), rp(3, 0), rp(0, 4)]).unwrap();
        assert!(decide_rational_density(&t).unwrap().dense);
    }

    #[test]
    fn condition_iv_examples() {
        let v = check_condition_iv(&root3()).unwrap();
        assert!(v.dense);
        let Certificate::RepresentsOne { data, .. } = &v.certificate else {
            panic!()
        };
        assert_eq!((data.r.clone(), data.s.clone(), data.xi.clone()), (int(1), int(3), int(0)));
        assert!(v.certificate_holds(&root3(), 0));

        assert!(!check_condition_iv(&root3_root5()).unwrap().dense);
        let t = Triangle::from_points([rp(0, 0), rp(1, 0), rp(1, 1)]).unwrap();
        let v = check_condition_iv(&t).unwrap();
        assert!(v.dense);
        let Certificate::RepresentsOne { data, .. } = &v.certificate else {
            panic!()
        };
        assert_eq!((data.r.clone(), data.s.clone(), data.xi.clone()), (int(1), int(1), int(1)));
    }

    #[test]
    fn collinear_branches() {
        let t = Triangle::from_points([rp(0, 0), rp(1, 0), rp(2, 0)]).unwrap();
        let v = decide_rational_density(&t).unwrap();
        assert_eq!((v.dense, v.reason), (true, Reason::CollinearRational));
        let t = Triangle::from_points([
            PlanePoint::origin(),
            PlanePoint::new(sqrt(2), q(0)),
            PlanePoint::new(q(1), q(0)),
        ])
        .unwrap();
        let v = decide_square_density(&t).unwrap();
        assert_eq!((v.dense, v.reason), (false, Reason::CollinearIrrational));
        assert_eq!(check_condition_iv(&t), Err(Error::Collinear));
    }

    #[test]
    fn admissible_examples() {
        let id = [[q(1), q(0)], [q(0), q(1)]];
        assert!(is_admissible_transform(&id, &rp(7, -3)).unwrap());
        let r2 = [[sqrt(2), q(0)], [q(0), sqrt(2)]];
        assert!(is_admissible_transform(&r2, &PlanePoint::origin()).unwrap());
        let d = [[q(1), q(0)], [q(0), sqrt(3)]];
        assert!(!is_admissible_transform(&d, &PlanePoint::origin()).unwrap());
        let r3 = [[sqrt(3), q(0)], [q(0), sqrt(3)]];
        assert!(!is_admissible_transform(&r3, &PlanePoint::origin()).unwrap());
        let sing = [[q(1), q(2)], [q(2), q(4)]];
        assert_eq!(
            is_admissible_transform(&sing, &PlanePoint::origin()),
            Err(Error::SingularMatrix)
        );
    }

    #[test]
    fn verdict_json_shape() {
        let v = decide_rational_density(&root3_root5()).unwrap();
        let js = serde_json::to_value(&v).unwrap();
        assert_eq!(js["dense"], false);
        assert_eq!(js["reason"], "SquareNotRepresented");
        assert_eq!(js["certificate"]["kind"], "failing_places");
    }
}
