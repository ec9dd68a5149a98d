//! Plane configurations and their exact invariants: Gram frames, the
//! orthogonal basis of the rational lattice they span, and the
//! upper-triangular (Iwasawa) data of the Gram matrix.

use serde::{Deserialize, Serialize};

use crate::arith::{QuadExt, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PlanePoint {
    pub x: QuadExt,
    pub y: QuadExt,
}

impl PlanePoint {
    pub fn new(x: QuadExt, y: QuadExt) -> Self {
        PlanePoint { x, y }
    }

    pub fn rational(x: Rational, y: Rational) -> Self {
        PlanePoint::new(x.into(), y.into())
    }

    pub fn origin() -> Self {
        PlanePoint::new(QuadExt::zero(), QuadExt::zero())
    }

    pub fn is_rational(&self) -> bool {
        self.x.is_rational() && self.y.is_rational()
    }

    pub fn field(&self) -> Result<u64> {
        QuadExt::common_field([&self.x, &self.y])
    }

    pub fn try_sub(&self, o: &PlanePoint) -> Result<PlanePoint> {
        Ok(PlanePoint::new(self.x.try_sub(&o.x)?, self.y.try_sub(&o.y)?))
    }

    pub fn try_add(&self, o: &PlanePoint) -> Result<PlanePoint> {
        Ok(PlanePoint::new(self.x.try_add(&o.x)?, self.y.try_add(&o.y)?))
    }

    pub fn try_dot(&self, o: &PlanePoint) -> Result<QuadExt> {
        self.x.try_mul(&o.x)?.try_add(&self.y.try_mul(&o.y)?)
    }

    pub fn scale(&self, q: &Rational) -> PlanePoint {
        PlanePoint::new(self.x.scale(q), self.y.scale(q))
    }

    /// `m * self + shift`.
    pub fn transform(&self, m: &[[QuadExt; 2]; 2], shift: &PlanePoint) -> Result<PlanePoint> {
        let x = m[0][0].try_mul(&self.x)?.try_add(&m[0][1].try_mul(&self.y)?)?;
        let y = m[1][0].try_mul(&self.x)?.try_add(&m[1][1].try_mul(&self.y)?)?;
        PlanePoint::new(x, y).try_add(shift)
    }

    pub fn dist_sq(&self, o: &PlanePoint) -> Result<QuadExt> {
        let v = self.try_sub(o)?;
        v.try_dot(&v)
    }
}

impl std::fmt::Display for PlanePoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum TriangleRepr {
    Points([PlanePoint; 3]),
    SidesSq([QuadExt; 3]),
}

/// Three plane points, given by coordinates or by squared side lengths
/// `(d12^2, d13^2, d23^2)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TriangleRepr", into = "TriangleRepr")]
pub struct Triangle {
    repr: TriangleRepr,
    field: u64,
}

impl TryFrom<TriangleRepr> for Triangle {
    type Error = Error;
    fn try_from(r: TriangleRepr) -> Result<Self> {
        match r {
            TriangleRepr::Points(p) => Triangle::from_points(p),
            TriangleRepr::SidesSq([a, b, c]) => Triangle::from_sides_sq(a, b, c),
        }
    }
}

impl From<Triangle> for TriangleRepr {
    fn from(t: Triangle) -> Self {
        t.repr
    }
}

impl Triangle {
    pub fn from_points(pts: [PlanePoint; 3]) -> Result<Self> {
        let field = QuadExt::common_field(pts.iter().flat_map(|p| [&p.x, &p.y]))?;
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            if pts[i] == pts[j] {
                return Err(Error::CoincidentPoints);
            }
        }
        Ok(Triangle {
            repr: TriangleRepr::Points(pts),
            field,
        })
    }

    pub fn from_rational_points(pts: [(Rational, Rational); 3]) -> Result<Self> {
        Triangle::from_points(pts.map(|(x, y)| PlanePoint::rational(x, y)))
    }

    /// Squared lengths of sides `P1P2`, `P1P3`, `P2P3`.
    pub fn from_sides_sq(d12: QuadExt, d13: QuadExt, d23: QuadExt) -> Result<Self> {
        let field = QuadExt::common_field([&d12, &d13, &d23])?;
        for s in [&d12, &d13, &d23] {
            match s.signum() {
                0 => return Err(Error::CoincidentPoints),
                -1 => return Err(Error::NotRealizable),
                _ => {}
            }
        }
        let t = Triangle {
            repr: TriangleRepr::SidesSq([d12, d13, d23]),
            field,
        };
        if t.gram_frame(0)?.deltasq.signum() < 0 {
            return Err(Error::NotRealizable);
        }
        Ok(t)
    }

    pub fn points(&self) -> Option<&[PlanePoint; 3]> {
        match &self.repr {
            TriangleRepr::Points(p) => Some(p),
            TriangleRepr::SidesSq(_) => None,
        }
    }

    /// Radicand shared by all inputs (`1` when everything is rational).
    pub fn field(&self) -> u64 {
        self.field
    }

    /// `[d12^2, d13^2, d23^2]`.
    pub fn squared_sides(&self) -> [QuadExt; 3] {
        match &self.repr {
            TriangleRepr::SidesSq(s) => s.clone(),
            TriangleRepr::Points(p) => {
                let d = |i: usize, j: usize| p[i].dist_sq(&p[j]).expect("validated field");
                [d(0, 1), d(0, 2), d(1, 2)]
            }
        }
    }

    /// The two non-origin vertices, in increasing index order.
    pub fn others(origin: usize) -> (usize, usize) {
        match origin {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        }
    }

    fn side_sq(sides: &[QuadExt; 3], i: usize, j: usize) -> &QuadExt {
        match (i.min(j), i.max(j)) {
            (0, 1) => &sides[0],
            (0, 2) => &sides[1],
            _ => &sides[2],
        }
    }

    pub fn gram_frame(&self, origin: usize) -> Result<GramFrame> {
        if origin > 2 {
            return Err(Error::DegenerateParameter(format!("origin index {origin}")));
        }
        let (i, j) = Triangle::others(origin);
        let (p, pprime, s) = match &self.repr {
            TriangleRepr::Points(pts) => {
                let v = pts[i].try_sub(&pts[origin])?;
                let w = pts[j].try_sub(&pts[origin])?;
                (v.try_dot(&v)?, w.try_dot(&w)?, v.try_dot(&w)?)
            }
            TriangleRepr::SidesSq(sides) => {
                let p = Triangle::side_sq(sides, origin, i).clone();
                let pp = Triangle::side_sq(sides, origin, j).clone();
                let opp = Triangle::side_sq(sides, i, j);
                // polarization: v.w = (|v|^2 + |w|^2 - |v-w|^2) / 2
                let s = p
                    .try_add(&pp)?
                    .try_sub(opp)?
                    .scale(&Rational::new(1.into(), 2.into()));
                (p, pp, s)
            }
        };
        GramFrame::from_entries(p, pprime, s)
    }

    pub fn is_collinear(&self) -> bool {
        self.gram_frame(0).map(|g| g.is_collinear()).unwrap_or(false)
    }
}

/// Inner-product data of the two side vectors from a chosen origin vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramFrame {
    pub p: QuadExt,
    pub pprime: QuadExt,
    pub s: QuadExt,
    pub r: QuadExt,
    pub c: QuadExt,
    pub deltasq: QuadExt,
}

impl GramFrame {
    pub fn from_entries(p: QuadExt, pprime: QuadExt, s: QuadExt) -> Result<Self> {
        if p.is_zero() || pprime.is_zero() {
            return Err(Error::CoincidentPoints);
        }
        let deltasq = p.try_mul(&pprime)?.try_sub(&s.square())?;
        let r = deltasq.try_div(&p)?;
        let c = s.try_div(&p)?;
        Ok(GramFrame {
            p,
            pprime,
            s,
            r,
            c,
            deltasq,
        })
    }

    pub fn is_collinear(&self) -> bool {
        self.deltasq.is_zero()
    }

    /// First Gram entry `(p, p', s)` that is irrational, if any.
    pub fn irrational_entry(&self) -> Option<(&'static str, &QuadExt)> {
        [("p", &self.p), ("pprime", &self.pprime), ("s", &self.s)]
            .into_iter()
            .find(|(_, v)| !v.is_rational())
    }

    pub fn is_rational(&self) -> bool {
        self.irrational_entry().is_none()
    }

    /// Rational `(p, p', s, r, c)`, or `NotRationalGram`.
    pub fn rational_entries(&self) -> Result<RationalGram> {
        if let Some((name, v)) = self.irrational_entry() {
            return Err(Error::NotRationalGram(format!("{name} = {v}")));
        }
        let get = |v: &QuadExt| v.to_rational().expect("checked rational");
        Ok(RationalGram {
            p: get(&self.p),
            pprime: get(&self.pprime),
            s: get(&self.s),
            r: get(&self.r),
            c: get(&self.c),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalGram {
    pub p: Rational,
    pub pprime: Rational,
    pub s: Rational,
    pub r: Rational,
    pub c: Rational,
}

/// The rational span `base + Q*v1 + Q*v2` with `v1 . v2 = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JLattice {
    pub base: PlanePoint,
    pub v1: PlanePoint,
    pub v2: PlanePoint,
}

impl JLattice {
    /// `base + t*v1 + u*v2`.
    pub fn point(&self, t: &Rational, u: &Rational) -> PlanePoint {
        self.base
            .try_add(&self.v1.scale(t))
            .and_then(|q| q.try_add(&self.v2.scale(u)))
            .expect("lattice vectors share a field")
    }

    pub fn norms(&self) -> Result<(Rational, Rational)> {
        let n1 = self.v1.try_dot(&self.v1)?;
        let n2 = self.v2.try_dot(&self.v2)?;
        match (n1.to_rational(), n2.to_rational()) {
            (Some(a), Some(b)) => Ok((a, b)),
            _ => Err(Error::NotRationalGram("basis norm".into())),
        }
    }
}

/// `R = P' - (s/p) P` completes `P` to an orthogonal basis.
pub fn orthogonal_basis(g: &GramFrame, t: &Triangle, origin: usize) -> Result<JLattice> {
    if g.is_collinear() {
        return Err(Error::Collinear);
    }
    let rg = g.rational_entries()?;
    let pts = t.points().ok_or(Error::MissingCoordinates)?;
    let (i, j) = Triangle::others(origin);
    let base = pts[origin].clone();
    let v1 = pts[i].try_sub(&base)?;
    let w = pts[j].try_sub(&base)?;
    let v2 = w.try_sub(&v1.scale(&rg.c))?;
    Ok(JLattice { base, v1, v2 })
}

/// Coordinates `(t, u)` of `q` in the lattice basis, or `None` when `q`
/// is not in the rational span.
pub fn j_membership(q: &PlanePoint, l: &JLattice) -> Option<(Rational, Rational)> {
    let (n1, n2) = l.norms().ok()?;
    let d = q.try_sub(&l.base).ok()?;
    let t = d.try_dot(&l.v1).ok()?.to_rational()? / n1;
    let u = d.try_dot(&l.v2).ok()?.to_rational()? / n2;
    (l.point(&t, &u) == *q).then_some((t, u))
}

/// Diagonal and unipotent parts of the Gram matrix: `G = U^T D U` with
/// `D = diag(r, s)` and `U = [[1, xi], [0, 1]]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IwasawaData {
    #[serde(with = "crate::arith::serde_rational")]
    pub r: Rational,
    #[serde(with = "crate::arith::serde_rational")]
    pub s: Rational,
    #[serde(with = "crate::arith::serde_rational")]
    pub xi: Rational,
}

pub fn iwasawa_data(g: &GramFrame) -> Result<IwasawaData> {
    if g.is_collinear() {
        return Err(Error::Collinear);
    }
    let rg = g.rational_entries()?;
    Ok(IwasawaData {
        r: rg.p.clone(),
        s: rg.r,
        xi: rg.c,
    })
}

/// For a collinear triangle with `P' = qP` (from the chosen origin),
/// returns `(p, q)` with `p = |P|^2`.
pub fn collinear_data(t: &Triangle, origin: usize) -> Result<(QuadExt, QuadExt)> {
    let g = t.gram_frame(origin)?;
    if !g.is_collinear() {
        return Err(Error::NotCollinear);
    }
    Ok((g.p.clone(), g.c.clone()))
}
