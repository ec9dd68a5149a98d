//! Points at rational distance from three points: the cubic fibration
//! over the conic `mu^2 = p + r lambda^2`, its sections and group law,
//! an alternative section, and the collinear generator.

mod alt;
mod collinear;
mod cubic;

use std::collections::HashSet;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

pub use alt::{alt_section, unit_conic_points};
pub use collinear::{collinear_solution, generate3_collinear, CollinearSolution};
pub use cubic::{
    cubic_add, cubic_eval, cubic_neg, cubic_third_intersection, section_a_plus_b, Cubic, CubicPoint,
};

use crate::arith::{rational_sqrt, serde_rational, QuadExt, Rational};
use crate::density::decide_rational_density_at;
use crate::enumerate::RationalEnumerator;
use crate::error::{Error, Result};
use crate::geometry::{orthogonal_basis, JLattice, PlanePoint, Triangle};
use crate::quadforms::{conic_parametrize, rational_witness, AffineConic};

/// Rational Gram data in the orthogonal basis `(P, R)`, in which the
/// squared norm is `p x^2 + r y^2` and `P' = (c, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreePointFrame {
    #[serde(with = "serde_rational")]
    pub p: Rational,
    #[serde(with = "serde_rational")]
    pub pprime: Rational,
    #[serde(with = "serde_rational")]
    pub s: Rational,
    #[serde(with = "serde_rational")]
    pub r: Rational,
    #[serde(with = "serde_rational")]
    pub c: Rational,
    pub origin: usize,
    /// Present when the triangle was given by coordinates.
    pub lattice: Option<JLattice>,
}

impl ThreePointFrame {
    /// A frame from bare Gram data (no ambient coordinates).
    pub fn from_gram(p: Rational, r: Rational, c: Rational) -> Result<Self> {
        if !p.is_positive() || !r.is_positive() {
            return Err(Error::NotAdmissible("p and r must be positive".into()));
        }
        Ok(ThreePointFrame {
            pprime: &p * &c * &c + &r,
            s: &c * &p,
            p,
            r,
            c,
            origin: 0,
            lattice: None,
        })
    }
}

pub fn frame(t: &Triangle, origin: usize) -> Result<ThreePointFrame> {
    let g = t.gram_frame(origin)?;
    if g.is_collinear() {
        return Err(Error::Collinear);
    }
    let v = decide_rational_density_at(t, origin)?;
    if !v.dense {
        return Err(Error::NotAdmissible(format!("{:?}", v.reason)));
    }
    let rg = g.rational_entries()?;
    debug_assert_eq!(rg.pprime, &rg.p * &rg.c * &rg.c + &rg.r);
    let lattice = match t.points() {
        Some(_) => Some(orthogonal_basis(&g, t, origin)?),
        None => None,
    };
    Ok(ThreePointFrame {
        p: rg.p,
        pprime: rg.pprime,
        s: rg.s,
        r: rg.r,
        c: rg.c,
        origin,
        lattice,
    })
}

/// A rational point of `mu^2 = p + r lambda^2`, with `eta = p c + r lambda`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiberPoint {
    #[serde(with = "serde_rational")]
    pub lambda: Rational,
    #[serde(with = "serde_rational")]
    pub mu: Rational,
    #[serde(with = "serde_rational")]
    pub eta: Rational,
}

impl FiberPoint {
    pub fn new(f: &ThreePointFrame, lambda: Rational, mu: Rational) -> Result<Self> {
        if &mu * &mu != &f.p + &f.r * &lambda * &lambda {
            return Err(Error::DegenerateParameter(format!(
                "({lambda}, {mu}) is not on mu^2 = p + r lambda^2"
            )));
        }
        Ok(FiberPoint {
            eta: &f.p * &f.c + &f.r * &lambda,
            lambda,
            mu,
        })
    }
}

/// Why a fiber's cubic is reducible (or otherwise excluded), if it is.
pub fn bad_fiber_reason(f: &ThreePointFrame, fp: &FiberPoint) -> Option<&'static str> {
    let one = Rational::from_integer(1.into());
    if fp.mu.is_zero() {
        return Some("mu = 0");
    }
    if fp.lambda.is_zero() {
        return Some("lambda = 0");
    }
    if &f.c * &fp.lambda == one {
        return Some("c lambda = 1");
    }
    if f.p == f.pprime && (&f.c + &one) * &fp.lambda == one {
        return Some("p = p' and (c + 1) lambda = 1");
    }
    let distinct = f.p != f.pprime && f.p != f.s && f.pprime != f.s;
    if fp.eta == f.p && !distinct {
        return Some("eta = p with p, p', s not pairwise distinct");
    }
    None
}

/// A rational point `(lambda0, mu0)` of `mu^2 = p + r lambda^2`.
fn base_point(f: &ThreePointFrame) -> Result<(Rational, Rational)> {
    let (x, y, z) =
        rational_witness(&f.p, &f.r).map_err(|_| Error::NotAdmissible("p x^2 + r y^2 = z^2 has no point".into()))?;
    if !x.is_zero() {
        return Ok((y / &x, z / x));
    }
    // r is a square rho^2: (mu - rho lambda)(mu + rho lambda) = p
    let rho = rational_sqrt(&f.r).expect("r x^2 = z^2 forces r square");
    let two = Rational::from_integer(2.into());
    let one = Rational::from_integer(1.into());
    Ok(((&f.p - &one) / (&two * rho), (&f.p + one) / two))
}

fn conic_s(f: &ThreePointFrame) -> AffineConic {
    let z = Rational::zero();
    AffineConic {
        axx: f.r.clone(),
        axy: z.clone(),
        ayy: Rational::from_integer((-1).into()),
        ax: z.clone(),
        ay: z,
        a0: f.p.clone(),
    }
}

/// The point of `S` on the line of slope `t` through the base point.
pub fn fiber_point_at(f: &ThreePointFrame, t: &Rational) -> Result<Option<FiberPoint>> {
    let (l0, m0) = base_point(f)?;
    let param = conic_parametrize(&conic_s(f), &l0, &m0)?;
    match param.point(t) {
        Some((l, m)) => Ok(Some(FiberPoint::new(f, l, m)?)),
        None => Ok(None),
    }
}

/// `count` distinct good fibers (both signs of `mu` for each slope).
pub fn fiber_points(f: &ThreePointFrame, count: usize, seed: u64) -> Result<Vec<FiberPoint>> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    let (l0, m0) = base_point(f)?;
    let param = conic_parametrize(&conic_s(f), &l0, &m0)?;
    for t in RationalEnumerator::new(seed).take(count.saturating_mul(20) + 100) {
        if out.len() >= count {
            break;
        }
        let Some((l, m)) = param.point(&t) else {
            continue;
        };
        for mu in [m.clone(), -m] {
            let fp = FiberPoint::new(f, l.clone(), mu)?;
            if out.len() < count && bad_fiber_reason(f, &fp).is_none() && seen.insert(fp.clone()) {
                out.push(fp);
            }
        }
    }
    Ok(out)
}

/// A point at rational distances `d0`, `d`, `d'` from `O`, `P`, `P'`.
///
/// `(x, y)` are coordinates in the basis `(P, R)`; `z`, `k`, `k'` are the
/// signed quantities with `d0 = |z|`, `d = |z - k|`, `d' = |z - k'|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Solution3 {
    #[serde(with = "serde_rational")]
    pub x: Rational,
    #[serde(with = "serde_rational")]
    pub y: Rational,
    #[serde(with = "serde_rational")]
    pub z: Rational,
    #[serde(with = "serde_rational")]
    pub k: Rational,
    #[serde(with = "serde_rational")]
    pub kprime: Rational,
    #[serde(with = "serde_rational")]
    pub d0: Rational,
    #[serde(with = "serde_rational")]
    pub d: Rational,
    #[serde(with = "serde_rational")]
    pub dprime: Rational,
    pub q: Option<PlanePoint>,
    pub fiber: Option<FiberPoint>,
    pub multiple: Option<u32>,
}

impl Solution3 {
    fn build(f: &ThreePointFrame, x: Rational, y: Rational, z: Rational, k: Rational, kprime: Rational) -> Self {
        let q = f.lattice.as_ref().map(|l| l.point(&x, &y));
        Solution3 {
            d0: z.abs(),
            d: (&z - &k).abs(),
            dprime: (&z - &kprime).abs(),
            x,
            y,
            z,
            k,
            kprime,
            q,
            fiber: None,
            multiple: None,
        }
    }

    /// Exact check of the three distance equations in the frame metric,
    /// and of the ambient squared distances when coordinates are known.
    pub fn verify(&self, f: &ThreePointFrame) -> bool {
        let one = Rational::from_integer(1.into());
        let phi = |x: &Rational, y: &Rational| &f.p * x * x + &f.r * y * y;
        let sq = |q: &Rational| q * q;
        let e1 = phi(&self.x, &self.y) == sq(&self.d0);
        let e2 = phi(&(&self.x - &one), &self.y) == sq(&self.d);
        let e3 = phi(&(&self.x - &f.c), &(&self.y - &one)) == sq(&self.dprime);
        let signs = self.d0 == self.z.abs()
            && self.d == (&self.z - &self.k).abs()
            && self.dprime == (&self.z - &self.kprime).abs();
        let roots = [&self.d0, &self.d, &self.dprime]
            .iter()
            .all(|d| rational_sqrt(&sq(d)).as_ref() == Some(*d));
        let ambient = match (&self.q, &f.lattice) {
            (Some(q), Some(l)) => {
                let pp = l.point(&f.c, &one);
                let p1 = l.point(&one, &Rational::zero());
                let ok = |a: &PlanePoint, d: &Rational| q.dist_sq(a).ok() == Some(QuadExt::from(sq(d)));
                ok(&l.base, &self.d0) && ok(&p1, &self.d) && ok(&pp, &self.dprime)
            }
            (None, _) => true,
            (Some(_), None) => false,
        };
        e1 && e2 && e3 && signs && roots && ambient
    }
}

/// Back-substitution: `k = K/H`, `k' = K'/H`,
/// `x = (p - k^2) / (2(p - mu k))`, `y = lambda x`, `z = mu x`.
pub fn solution_from_point(f: &ThreePointFrame, fp: &FiberPoint, pt: &CubicPoint) -> Result<Solution3> {
    let (k, kp) = pt.affine().ok_or(Error::PointAtInfinity)?;
    let den = &f.p - &fp.mu * &k;
    if den.is_zero() {
        return Err(Error::ExcludedDenominator("p = mu k"));
    }
    if fp.eta == &fp.mu * &kp {
        return Err(Error::ExcludedDenominator("eta = mu k'"));
    }
    let two = Rational::from_integer(2.into());
    let x = (&f.p - &k * &k) / (two * den);
    let y = &fp.lambda * &x;
    let z = &fp.mu * &x;
    let mut sol = Solution3::build(f, x, y, z, k, kp);
    sol.fiber = Some(fp.clone());
    if !sol.verify(f) {
        return Err(Error::DegenerateParameter(format!("point {pt} fails verification")));
    }
    Ok(sol)
}

/// What happened on one fiber during [`generate3`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberReport {
    pub fiber: FiberPoint,
    /// The multiples `n A`, `n <= multiples`, are pairwise distinct and
    /// differ from the origin `N`.
    pub non_torsion_evidence: bool,
    pub used: bool,
    pub solutions: usize,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generate3Output {
    pub solutions: Vec<Solution3>,
    pub fibers: Vec<FiberReport>,
}

/// `n A` for `n = 1..=m`, plus whether they look non-torsion.
pub fn multiples_of_a(cubic: &Cubic, m: u32) -> Result<(Vec<CubicPoint>, bool)> {
    let a = Cubic::a();
    let mut out: Vec<CubicPoint> = Vec::with_capacity(m as usize);
    let mut cur = a.clone();
    for n in 1..=m {
        if n > 1 {
            cur = cubic.add(&cur, &a)?;
        }
        out.push(cur.clone());
    }
    let n_pt = cubic.n();
    let distinct = out.iter().collect::<HashSet<_>>().len() == out.len() && !out.contains(&n_pt);
    Ok((out, distinct))
}

/// Solutions from `n A`, `n = 2..=multiples`, on `fibers` good fibers whose
/// multiples pass the non-torsion check.
pub fn generate3(t: &Triangle, origin: usize, fibers: usize, multiples: u32, seed: u64) -> Result<Generate3Output> {
    let f = frame(t, origin)?;
    generate3_in_frame(&f, fibers, multiples, seed)
}

pub fn generate3_in_frame(f: &ThreePointFrame, fibers: usize, multiples: u32, seed: u64) -> Result<Generate3Output> {
    let mut out = Generate3Output {
        solutions: Vec::new(),
        fibers: Vec::new(),
    };
    let mut seen = HashSet::new();
    let mut used = 0;
    let mut lambdas = HashSet::new();
    let candidates = fiber_points(f, fibers.saturating_mul(8) + 16, seed)?;
    for fp in candidates {
        if used >= fibers {
            break;
        }
        // (lambda, -mu) is isomorphic via (K, K') -> (-K, -K') and yields the same points
        if !lambdas.insert(fp.lambda.clone()) {
            continue;
        }
        let cubic = Cubic::new(f, &fp);
        let mut report = FiberReport {
            fiber: fp.clone(),
            non_torsion_evidence: false,
            used: false,
            solutions: 0,
            note: None,
        };
        match multiples_of_a(&cubic, multiples.max(2)) {
            Err(e) => report.note = Some(e.to_string()),
            Ok((_, false)) => report.note = Some("multiples of A repeat".into()),
            Ok((pts, true)) => {
                report.non_torsion_evidence = true;
                report.used = true;
                used += 1;
                for (i, pt) in pts.iter().enumerate().take(multiples as usize) {
                    let Ok(mut sol) = solution_from_point(f, &fp, pt) else {
                        continue;
                    };
                    if seen.insert((sol.x.clone(), sol.y.clone())) {
                        sol.multiple = Some(i as u32 + 1);
                        report.solutions += 1;
                        out.solutions.push(sol);
                    }
                }
            }
        }
        out.fibers.push(report);
    }
    Ok(out)
}
