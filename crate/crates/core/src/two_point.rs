//! Points at rational distance from two rational points `O` and `P`.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{rational_sqrt, serde_rational, Rational};
use crate::enumerate::RationalEnumerator;
use crate::error::{Error, Result};
use crate::quadforms::{conic_parametrize, AffineConic, ConicParametrization};

/// `O = (ox, oy)` and `P = (ox + a, oy + b)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoPointConfig {
    #[serde(with = "serde_rational")]
    pub ox: Rational,
    #[serde(with = "serde_rational")]
    pub oy: Rational,
    #[serde(with = "serde_rational")]
    pub px: Rational,
    #[serde(with = "serde_rational")]
    pub py: Rational,
}

impl TwoPointConfig {
    pub fn new(o: (Rational, Rational), p: (Rational, Rational)) -> Result<Self> {
        if o == p {
            return Err(Error::CoincidentPoints);
        }
        Ok(TwoPointConfig {
            ox: o.0,
            oy: o.1,
            px: p.0,
            py: p.1,
        })
    }

    /// `P - O`.
    pub fn offset(&self) -> (Rational, Rational) {
        (&self.px - &self.ox, &self.py - &self.oy)
    }
}

/// A point `Q` with `|Q - O| = d0`, `|Q - P| = d1`.
///
/// `z` and `k` are the signed fiber data: `z^2 = |Q - O|^2`,
/// `(z - k)^2 = |Q - P|^2`, so `d0 = |z|`, `d1 = |z - k|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Solution2 {
    #[serde(with = "serde_rational")]
    pub x: Rational,
    #[serde(with = "serde_rational")]
    pub y: Rational,
    #[serde(with = "serde_rational")]
    pub d0: Rational,
    #[serde(with = "serde_rational")]
    pub d1: Rational,
    #[serde(with = "serde_rational")]
    pub k: Rational,
    #[serde(with = "serde_rational")]
    pub z: Rational,
    /// `Q` coincides with `O` or `P`.
    pub degenerate: bool,
}

impl Solution2 {
    /// Recomputes both distances with exact square roots.
    pub fn verify(&self, cfg: &TwoPointConfig) -> bool {
        let d0 = rational_sqrt(&(sq(&(&self.x - &cfg.ox)) + sq(&(&self.y - &cfg.oy))));
        let d1 = rational_sqrt(&(sq(&(&self.x - &cfg.px)) + sq(&(&self.y - &cfg.py))));
        d0.as_ref() == Some(&self.d0)
            && d1.as_ref() == Some(&self.d1)
            && self.z.abs() == self.d0
            && (&self.z - &self.k).abs() == self.d1
    }
}

fn sq(q: &Rational) -> Rational {
    q * q
}

/// `x = 2 lambda p`, `y = lambda (p^2 - 1)`, `z = lambda (p^2 + 1)`.
pub fn pythagorean_point(lambda: &Rational, p: &Rational) -> (Rational, Rational, Rational) {
    let two = Rational::from_integer(2.into());
    let one = Rational::from_integer(1.into());
    (
        &two * lambda * p,
        lambda * (p * p - &one),
        lambda * (p * p + &one),
    )
}

/// Builds the solution for the relative point `(x, y)` (relative to `O`)
/// on fiber `k`, with `z` from `2kz = 2ax + 2by - delta`.
fn solution_on_fiber(cfg: &TwoPointConfig, k: &Rational, x: Rational, y: Rational) -> Option<Solution2> {
    let (a, b) = cfg.offset();
    let delta = &a * &a + &b * &b - k * k;
    let two = Rational::from_integer(2.into());
    let z = (&two * &a * &x + &two * &b * &y - delta) / (&two * k);
    let sol = Solution2 {
        d0: z.abs(),
        d1: (&z - k).abs(),
        x: x + &cfg.ox,
        y: y + &cfg.oy,
        k: k.clone(),
        degenerate: false,
        z,
    };
    let sol = Solution2 {
        degenerate: sol.d0.is_zero() || sol.d1.is_zero(),
        ..sol
    };
    sol.verify(cfg).then_some(sol)
}

/// The rational section of the fiber `C_k`: the point of `C_k` on the
/// line through `P` perpendicular to the first axis (or, when that line
/// passes through `O`, the second axis).
pub fn section_point(cfg: &TwoPointConfig, k: &Rational) -> Result<Solution2> {
    if k.is_zero() {
        return Err(Error::DegenerateParameter("k = 0".into()));
    }
    let (a, b) = cfg.offset();
    let swap = a.is_zero();
    let (a, b) = if swap { (b, a) } else { (a, b) };
    let kb = k - &b;
    if kb.is_zero() {
        return Err(Error::DegenerateParameter(format!("k = {k} makes the section pass through infinity")));
    }
    // x = a and z - k = y - b on the Pythagorean cone
    let two = Rational::from_integer(2.into());
    let lambda = &kb / &two;
    let p = &a / &kb;
    let (x, y, _) = pythagorean_point(&lambda, &p);
    let (x, y) = if swap { (y, x) } else { (x, y) };
    solution_on_fiber(cfg, k, x, y)
        .ok_or_else(|| Error::DegenerateParameter(format!("section at k = {k} fails verification")))
}

/// The fiber `C_k: (2ax + 2by - delta)^2 = 4k^2 (x^2 + y^2)` in coordinates
/// relative to `O`, with a flag for degenerate (line-pair) fibers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfocalConic {
    pub conic: AffineConic,
    pub degenerate: bool,
}

pub fn confocal_conic(cfg: &TwoPointConfig, k: &Rational) -> Result<ConfocalConic> {
    if k.is_zero() {
        return Err(Error::DegenerateParameter("k = 0".into()));
    }
    let (a, b) = cfg.offset();
    let delta = &a * &a + &b * &b - k * k;
    let n = |v: i64| Rational::from_integer(v.into());
    let conic = AffineConic {
        axx: n(4) * (&a * &a - k * k),
        axy: n(8) * &a * &b,
        ayy: n(4) * (&b * &b - k * k),
        ax: n(-4) * &a * &delta,
        ay: n(-4) * &b * &delta,
        a0: &delta * &delta,
    };
    let degenerate = conic.discriminant().is_zero();
    Ok(ConfocalConic { conic, degenerate })
}

/// `count` distinct verified solutions, deterministic in `seed`.
///
/// The first solution is the section point of the fiber
/// `k0 = 2 max(|a|, |b|)`. After that, each step draws a seeded target
/// `X` from a jittered grid over a window around the two points, picks the fiber `k` near
/// `|X - O| - |X - P|` (small denominator, refined near degenerate fibers), and parametrizes `C_k`
/// through its section point with a slope near the direction of `X`.
pub fn generate2(cfg: &TwoPointConfig, count: usize, seed: u64) -> Vec<Solution2> {
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return out;
    }
    let mut seen = HashSet::new();
    let mut push = |s: Solution2, out: &mut Vec<Solution2>| {
        if out.len() < count && seen.insert((s.x.clone(), s.y.clone())) {
            out.push(s);
        }
    };
    let (a, b) = cfg.offset();
    let scale = a.abs().max(b.abs());
    let k0 = Rational::from_integer(2.into()) * &scale;
    if let Ok(s) = section_point(cfg, &k0) {
        push(s, &mut out);
    }
    let (af, bf) = (to_f64(&a), to_f64(&b));
    let half = 3.0 * to_f64(&scale);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fibers: HashMap<Rational, Option<(Rational, Rational, ConicParametrization)>> =
        HashMap::new();
    let m = ((count as f64).sqrt().ceil() as usize).max(1);
    let mut order: Vec<usize> = (0..m * m).collect();
    order.shuffle(&mut rng);
    let mut step = 0usize;
    // bounded so a pathological configuration cannot loop forever
    for _ in 0..count.saturating_mul(40) + 100 {
        if out.len() >= count {
            break;
        }
        // jittered target in the next stratum of an m x m grid over the window
        let cell = order[step % order.len()];
        step += 1;
        let w = 2.0 * half / m as f64;
        let tx = af / 2.0 - half + w * ((cell % m) as f64 + rng.gen::<f64>());
        let ty = bf / 2.0 - half + w * ((cell / m) as f64 + rng.gen::<f64>());
        let kf = tx.hypot(ty) - (tx - af).hypot(ty - bf);
        // coarse denominators first; refine while the pencil point lands
        // far from the target (near-degenerate fibers, steep slopes)
        let mut den = rng.gen_range(16i64..=512);
        let mut tden = rng.gen_range(16i64..=512);
        let mut fallback = None;
        for _ in 0..4 {
            let k = approx(kf, den);
            den = 4 * den + 1;
            let slope_den = tden;
            tden = 4 * tden + 1;
            if k.is_zero() {
                continue;
            }
            let fiber = fibers
                .entry(k.clone())
                .or_insert_with(|| fiber_parametrization(cfg, &k));
            let Some((x0, y0, param)) = fiber else {
                continue;
            };
            let dx = tx - to_f64(x0);
            if dx.abs() < 1e-12 {
                continue;
            }
            let t = approx((ty - to_f64(y0)) / dx, slope_den);
            let Some(sol) = param
                .point(&t)
                .and_then(|(x, y)| solution_on_fiber(cfg, &k, x, y))
            else {
                continue;
            };
            let miss = (to_f64(&sol.x) - to_f64(&cfg.ox) - tx)
                .hypot(to_f64(&sol.y) - to_f64(&cfg.oy) - ty);
            if miss < w / 2.0 {
                fallback = Some(sol);
                break;
            }
            fallback.get_or_insert(sol);
        }
        if let Some(sol) = fallback {
            push(sol, &mut out);
        }
    }
    out
}

fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// `round(v * den) / den`.
fn approx(v: f64, den: i64) -> Rational {
    Rational::new(BigInt::from((v * den as f64).round() as i64), BigInt::from(den))
}

/// Section point (relative to `O`) and pencil parametrization of `C_k`.
fn fiber_parametrization(
    cfg: &TwoPointConfig,
    k: &Rational,
) -> Option<(Rational, Rational, ConicParametrization)> {
    let base = section_point(cfg, k).ok()?;
    let cc = confocal_conic(cfg, k).ok()?;
    if cc.degenerate {
        return None;
    }
    let (x0, y0) = (&base.x - &cfg.ox, &base.y - &cfg.oy);
    let param = conic_parametrize(&cc.conic, &x0, &y0).ok()?;
    Some((x0, y0, param))
}

/// A rational point on a line with rational distance to `O`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinePoint {
    #[serde(with = "serde_rational")]
    pub x: Rational,
    #[serde(with = "serde_rational")]
    pub y: Rational,
    #[serde(with = "serde_rational")]
    pub d0: Rational,
    #[serde(with = "serde_rational")]
    pub t: Rational,
}

/// Point of `y = a x + b` for parameter `t`, with `O` at the origin:
/// `x = 2b(a - t) / (t^2 - a^2 - 1)`, `d0 = |t x + b|`.
pub fn line_point(a: &Rational, b: &Rational, t: &Rational) -> Option<(Rational, Rational, Rational)> {
    let one = Rational::from_integer(1.into());
    let den = t * t - a * a - one;
    if den.is_zero() {
        return None;
    }
    let two = Rational::from_integer(2.into());
    let x = two * b * (a - t) / den;
    let y = a * &x + b;
    let d0 = (t * &x + b).abs();
    Some((x, y, d0))
}

/// `count` distinct points of the line `y = a x + b` at rational distance
/// from `o`.
pub fn line_points(o: (&Rational, &Rational), a: &Rational, b: &Rational, count: usize) -> Result<Vec<LinePoint>> {
    // the line relative to O: y' = a x' + b'
    let b_rel = a * o.0 + b - o.1;
    if b_rel.is_zero() {
        return Err(Error::LineThroughOrigin);
    }
    let mut out = Vec::with_capacity(count);
    let mut seen = HashSet::new();
    for t in RationalEnumerator::new(0) {
        if out.len() >= count {
            break;
        }
        let Some((x, y, d0)) = line_point(a, &b_rel, &t) else {
            continue;
        };
        debug_assert_eq!(rational_sqrt(&(&x * &x + &y * &y)), Some(d0.clone()));
        if seen.insert(x.clone()) {
            out.push(LinePoint {
                x: x + o.0,
                y: y + o.1,
                d0,
                t,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn cfg(a: i64, b: i64) -> TwoPointConfig {
        TwoPointConfig::new((int(0), int(0)), (int(a), int(b))).unwrap()
    }

    #[test]
    fn pythagorean_examples() {
        assert_eq!(pythagorean_point(&int(1), &int(2)), (int(4), int(3), int(5)));
        assert_eq!(pythagorean_point(&int(1), &int(0)), (int(0), int(-1), int(1)));
        assert_eq!(pythagorean_point(&rat(1, 2), &int(3)), (int(3), int(4), int(5)));
    }

    #[test]
    fn section_examples() {
        let s = section_point(&cfg(1, 0), &int(2)).unwrap();
        assert_eq!((s.x.clone(), s.y.clone()), (int(1), rat(-3, 4)));
        assert_eq!((s.d0.clone(), s.d1.clone()), (rat(5, 4), rat(3, 4)));
        assert!(!s.degenerate);

        let s = section_point(&cfg(1, 0), &int(1)).unwrap();
        assert_eq!((s.x.clone(), s.y.clone(), s.d1.clone()), (int(1), int(0), int(0)));
        assert!(s.degenerate);

        // a = 0: the section lies on the horizontal line through P
        let s = section_point(&cfg(0, 1), &int(2)).unwrap();
        assert_eq!(s.y, int(1));
        assert!(s.verify(&cfg(0, 1)));

        assert!(section_point(&cfg(1, 0), &int(0)).is_err());
    }

    #[test]
    fn section_with_both_offsets() {
        let c = cfg(3, 4);
        for k in [rat(1, 2), int(2), int(-3), rat(7, 3)] {
            let s = section_point(&c, &k).unwrap();
            assert_eq!(s.x, int(3));
            assert!(s.verify(&c));
        }
    }

    #[test]
    fn confocal_examples() {
        let cc = confocal_conic(&cfg(1, 0), &rat(1, 2)).unwrap();
        // (2x - 3/4)^2 - (x^2 + y^2) scaled by 4k^2 = 1
        assert_eq!(
            (cc.conic.axx.clone(), cc.conic.axy.clone(), cc.conic.ayy.clone()),
            (int(3), int(0), int(-1))
        );
        assert_eq!((cc.conic.ax.clone(), cc.conic.a0.clone()), (int(-3), rat(9, 16)));
        assert!(!cc.degenerate);

        let cc = confocal_conic(&cfg(3, 4), &int(5)).unwrap();
        assert!(cc.conic.eval(&int(0), &int(0)).is_zero());

        let cc = confocal_conic(&cfg(0, 1), &int(1)).unwrap();
        assert!(cc.degenerate);
        assert_eq!(cc.conic.axx, int(-4));
        assert!(cc.conic.ayy.is_zero() && cc.conic.a0.is_zero());
    }

    #[test]
    fn generate_examples() {
        let c = cfg(1, 0);
        assert!(generate2(&c, 0, 1).is_empty());
        let sols = generate2(&c, 40, 1);
        assert_eq!(sols.len(), 40);
        assert!(sols.iter().all(|s| s.verify(&c)));
        let target = section_point(&c, &int(2)).unwrap();
        assert_eq!(generate2(&c, 1, 1), vec![target.clone()]);
        assert_eq!(generate2(&c, 1, 99), vec![target]);

        let c = cfg(3, 4);
        let sols = generate2(&c, 3, 5);
        assert_eq!(sols.len(), 3);
        assert!(sols.iter().all(|s| s.verify(&c)));
    }

    #[test]
    fn line_examples() {
        let (z, o) = (int(0), int(1));
        assert_eq!(line_point(&z, &o, &z), Some((int(0), int(1), int(1))));
        assert_eq!(line_point(&z, &o, &int(2)), Some((rat(-4, 3), int(1), rat(5, 3))));
        assert_eq!(line_points((&z, &z), &o, &z, 3), Err(Error::LineThroughOrigin));
        let pts = line_points((&int(1), &int(2)), &rat(1, 2), &int(3), 25).unwrap();
        assert_eq!(pts.len(), 25);
        for p in pts {
            assert_eq!(p.y, rat(1, 2) * &p.x + int(3));
            let d2 = (&p.x - int(1)) * (&p.x - int(1)) + (&p.y - int(2)) * (&p.y - int(2));
            assert_eq!(rational_sqrt(&d2), Some(p.d0));
        }
    }
}
