//! One function per subcommand. Every data record is re-verified here
//! before it is written.

use std::io::Write;
use std::path::PathBuf;

use num_bigint::BigInt;
use ratdist::arith::{FactorBudget, QuadExt, Rational};
use ratdist::density::{decide_rational_density, decide_square_density};
use ratdist::enumerate::RationalEnumerator;
use ratdist::geometry::{collinear_data, PlanePoint, Triangle};
use ratdist::kummer::{derive_quartic, quartic_eval, KummerQuartic};
use ratdist::rings::{
    gaussian_decompose, gaussian_orbit, realquad_confocal_extend, realquad_line_points, GaussianInt,
};
use ratdist::search::{search4 as run_search4, verify_distances};
use ratdist::three_point::{frame, generate3, generate3_collinear, CollinearSolution};
use ratdist::two_point::{generate2, TwoPointConfig};
use ratdist::Error;

use crate::parse::{parse_expr, parse_pairs, parse_point, parse_points, parse_rational};
use crate::records::{Config, PairSource, Record, SCHEMA};
use crate::{CliError, Outcome, TriangleInput};

pub struct Writer<W: Write> {
    out: W,
    budget: FactorBudget,
    records: usize,
    all_verified: bool,
}

impl<W: Write> Writer<W> {
    pub fn new(out: W, budget: FactorBudget) -> Self {
        Writer {
            out,
            budget,
            records: 0,
            all_verified: true,
        }
    }

    pub fn header(&mut self, config: Config) -> Result<(), CliError> {
        let command = serde_json::to_value(&config)?["command"].as_str().unwrap_or_default().to_string();
        self.write(&Record::Header {
            schema: SCHEMA,
            command,
            config,
            factor_budget: self.budget,
        })
    }

    pub fn write(&mut self, r: &Record) -> Result<(), CliError> {
        serde_json::to_writer(&mut self.out, r)?;
        self.out.write_all(b"\n")?;
        Ok(())
    }

    /// Writes a data record, tracking its verification flag.
    pub fn record(&mut self, r: Record, verified: bool) -> Result<(), CliError> {
        self.records += 1;
        self.all_verified &= verified;
        self.write(&r)
    }

    /// Counts a record checked elsewhere without writing it.
    pub fn tally(&mut self, ok: bool) {
        self.records += 1;
        self.all_verified &= ok;
    }

    pub fn note(&mut self, message: String) -> Result<(), CliError> {
        self.write(&Record::Note { message })
    }

    pub fn summary(&mut self, detail: String) -> Result<Outcome, CliError> {
        let all_verified = self.all_verified;
        self.write(&Record::Summary {
            records: self.records,
            all_verified,
            detail,
        })?;
        Ok(if all_verified { Outcome::Ok } else { Outcome::Negative })
    }

    pub fn flush(&mut self) -> Result<(), CliError> {
        self.out.flush()?;
        Ok(())
    }
}

fn three(points: Vec<PlanePoint>) -> Result<[PlanePoint; 3], Error> {
    let n = points.len();
    points
        .try_into()
        .map_err(|_| Error::Parse(format!("expected 3 points, got {n}")))
}

pub fn triangle(input: &TriangleInput) -> Result<Triangle, Error> {
    match (&input.points, &input.sides_sq) {
        (Some(p), _) => Triangle::from_points(three(parse_points(p)?)?),
        (None, Some(s)) => Triangle::from_sides_sq(parse_expr(&s[0])?, parse_expr(&s[1])?, parse_expr(&s[2])?),
        (None, None) => Err(Error::Parse("give --points or --sides-sq".into())),
    }
}

fn rational_point(p: &PlanePoint) -> Result<(Rational, Rational), Error> {
    match (p.x.to_rational(), p.y.to_rational()) {
        (Some(x), Some(y)) => Ok((x, y)),
        _ => Err(Error::Parse(format!("point {p} must have rational coordinates"))),
    }
}

pub fn decide<W: Write>(w: &mut Writer<W>, input: &TriangleInput) -> Result<Outcome, CliError> {
    let t = triangle(input)?;
    w.header(Config::Decide { triangle: t.clone() })?;
    for origin in 0..3 {
        let gram = t.gram_frame(origin)?;
        w.write(&Record::Frame { origin, gram })?;
    }
    let rational = decide_rational_density(&t)?;
    let square = decide_square_density(&t)?;
    let dense = rational.dense;
    let ok = rational.certificate_holds(&t, 0) && square.certificate_holds(&t, 0);
    w.record(
        Record::Verdict {
            test: "rational_distances".into(),
            verdict: rational,
        },
        ok,
    )?;
    w.record(
        Record::Verdict {
            test: "rational_squared_distances".into(),
            verdict: square,
        },
        ok,
    )?;
    if !ok {
        return Err(Error::DegenerateParameter("certificate failed re-verification".into()).into());
    }
    Ok(if dense { Outcome::Ok } else { Outcome::Negative })
}

pub fn gen2<W: Write>(w: &mut Writer<W>, points: &str, count: usize, seed: u64) -> Result<Outcome, CliError> {
    let pts = parse_points(points)?;
    let [o, p]: [PlanePoint; 2] = pts
        .try_into()
        .map_err(|v: Vec<PlanePoint>| Error::Parse(format!("expected 2 points, got {}", v.len())))?;
    let cfg = TwoPointConfig::new(rational_point(&o)?, rational_point(&p)?)?;
    w.header(Config::Gen2 { o, p, count, seed })?;
    for sol in generate2(&cfg, count, seed) {
        let verified = sol.verify(&cfg);
        w.record(Record::Solution2 { sol, verified }, verified)?;
    }
    w.summary(format!("{count} requested"))
}

pub fn gen3<W: Write>(
    w: &mut Writer<W>,
    input: &TriangleInput,
    origin: usize,
    fibers: usize,
    multiples: u32,
    seed: u64,
) -> Result<Outcome, CliError> {
    let t = triangle(input)?;
    let f = frame(&t, origin)?;
    w.header(Config::Gen3 {
        triangle: t.clone(),
        origin,
        fibers,
        multiples,
        seed,
    })?;
    let out = generate3(&t, origin, fibers, multiples, seed)?;
    let used = out.fibers.iter().filter(|r| r.used).count();
    for report in out.fibers {
        w.write(&Record::Fiber { report })?;
    }
    let n = out.solutions.len();
    for sol in out.solutions {
        let verified = sol.verify(&f);
        w.record(Record::Solution3 { sol, verified }, verified)?;
    }
    w.summary(format!("{n} solutions on {used} fibers"))
}

pub struct CollinearInput {
    pub points: Option<String>,
    pub p: Option<String>,
    pub q: Option<String>,
    pub origin: usize,
    pub pairs: Option<String>,
    pub count: usize,
    pub seed: u64,
    pub realonly: bool,
}

/// Ambient point of a collinear solution and its re-verification.
pub fn collinear_check(
    sol: &CollinearSolution,
    p: &Rational,
    q: &Rational,
    ambient: &Option<(PlanePoint, PlanePoint)>,
) -> (Option<PlanePoint>, bool) {
    let mut ok = sol.verify(p, q);
    let point = match ambient {
        Some((o, pv)) if sol.u.is_some() => match sol.ambient(o, pv) {
            Ok(pt) => {
                let targets = [Ok(o.clone()), o.try_add(pv), o.try_add(&pv.scale(q))];
                let dists = [&sol.d0, &sol.d, &sol.dprime];
                ok &= targets.iter().zip(dists).all(|(t, d)| match t {
                    Ok(t) => pt.dist_sq(t).ok() == Some(QuadExt::rational(d * d)),
                    Err(_) => false,
                });
                Some(pt)
            }
            Err(_) => None,
        },
        _ => None,
    };
    (point, ok)
}

pub fn gen3_collinear<W: Write>(w: &mut Writer<W>, input: CollinearInput) -> Result<Outcome, CliError> {
    let (p, q, ambient) = match (&input.points, &input.p, &input.q) {
        (Some(pts), _, _) => {
            let pts = three(parse_points(pts)?)?;
            let t = Triangle::from_points(pts.clone())?;
            let (pq, qq) = collinear_data(&t, input.origin)?;
            let (Some(p), Some(q)) = (pq.to_rational(), qq.to_rational()) else {
                return Err(Error::NotAdmissible(format!("p = {pq}, q = {qq} must be rational")).into());
            };
            let (i, _) = Triangle::others(input.origin);
            let o = pts[input.origin].clone();
            let pv = pts[i].try_sub(&o)?;
            (p, q, Some((o, pv)))
        }
        (None, Some(p), Some(q)) => (parse_rational(p)?, parse_rational(q)?, None),
        _ => return Err(Error::Parse("give --points or both --p and --q".into()).into()),
    };
    let (pairs, source) = match &input.pairs {
        Some(s) => {
            let pairs = parse_pairs(s)?;
            let strs = pairs.iter().map(|(a, b)| [a.to_string(), b.to_string()]).collect();
            (pairs, PairSource::Explicit(strs))
        }
        None => {
            let vals: Vec<Rational> = RationalEnumerator::new(input.seed).take(2 * input.count).collect();
            let pairs = vals.chunks(2).map(|c| (c[0].clone(), c[1].clone())).collect();
            (
                pairs,
                PairSource::Seeded {
                    count: input.count,
                    seed: input.seed,
                },
            )
        }
    };
    w.header(Config::Gen3Collinear {
        p: p.clone(),
        q: q.clone(),
        ambient: ambient.clone(),
        pairs: source,
        realonly: input.realonly,
    })?;
    let sols = generate3_collinear(&p, &q, pairs, input.realonly)?;
    let n = sols.len();
    for sol in sols {
        let (point, verified) = collinear_check(&sol, &p, &q, &ambient);
        w.record(Record::Collinear { sol, q: point, verified }, verified)?;
    }
    w.summary(format!("{n} solutions"))
}

/// The quartic has only even powers and vanishes at the squared distances
/// of sample points `(x, y)` to `(0,0)`, `(1,0)`, `(a,b)`.
pub fn quartic_check(kq: &KummerQuartic) -> bool {
    let even = kq.poly.terms().all(|(m, _)| m.iter().all(|e| e % 2 == 0));
    let r = |n: i64, d: i64| Rational::new(n.into(), d.into());
    let samples = [(r(0, 1), r(0, 1)), (r(1, 2), r(1, 3)), (r(-2, 1), r(5, 7)), (kq.a.clone(), kq.b.clone())];
    let on = samples.iter().all(|(x, y)| {
        let sq = |dx: Rational, dy: Rational| &dx * &dx + &dy * &dy;
        let zz = sq(x.clone(), y.clone());
        let uu = sq(x - r(1, 1), y.clone());
        let vv = sq(x - &kq.a, y - &kq.b);
        let pow = |b: &Rational, e: u32| (0..e / 2).fold(r(1, 1), |acc, _| acc * b);
        let total: Rational = kq
            .poly
            .terms()
            .map(|(m, c)| c * pow(&zz, m[0]) * pow(&uu, m[1]) * pow(&vv, m[2]))
            .sum();
        total == r(0, 1)
    });
    even && on
}

pub fn kummer<W: Write>(w: &mut Writer<W>, a: &str, b: &str, eval: Option<&[String]>) -> Result<Outcome, CliError> {
    let (a, b) = (parse_rational(a)?, parse_rational(b)?);
    let kq = derive_quartic(&a, &b)?;
    w.header(Config::Kummer { a, b })?;
    match eval {
        Some(vals) => {
            let [z, u, v] = [&vals[0], &vals[1], &vals[2]].map(|s| parse_rational(s));
            let (z, u, v) = (z?, u?, v?);
            let residual = quartic_eval(&kq, &z, &u, &v);
            let zero = residual == Rational::from_integer(0.into());
            w.write(&Record::Residual { z, u, v, residual })?;
            Ok(if zero { Outcome::Ok } else { Outcome::Negative })
        }
        None => {
            let verified = quartic_check(&kq);
            w.record(Record::Quartic { quartic: kq, verified }, verified)?;
            Ok(if verified { Outcome::Ok } else { Outcome::Negative })
        }
    }
}

pub fn ring_real<W: Write>(
    w: &mut Writer<W>,
    delta: u64,
    o: (i64, i64),
    p: (i64, i64),
    count: usize,
    extend: usize,
    bound: u64,
) -> Result<Outcome, CliError> {
    let (ob, pb) = ((BigInt::from(o.0), BigInt::from(o.1)), (BigInt::from(p.0), BigInt::from(p.1)));
    let pts = realquad_line_points((&ob.0, &ob.1), (&pb.0, &pb.1), delta, count)?;
    w.header(Config::RingReal {
        delta,
        o,
        p,
        count,
        extend,
        bound,
    })?;
    for point in &pts {
        let verified = realquad_verified(point, &ob, &pb);
        w.record(Record::RealquadLine { point: point.clone(), verified }, verified)?;
    }
    if extend > 0 {
        match pts.iter().position(|q| !q.degenerate) {
            None => w.note("no nondegenerate seed for the confocal extension".into())?,
            Some(seed_index) => {
                match realquad_confocal_extend((&ob.0, &ob.1), (&pb.0, &pb.1), &pts[seed_index], extend, bound) {
                    Ok(more) => {
                        for point in more {
                            let verified = point.verify((&ob.0, &ob.1), (&pb.0, &pb.1));
                            w.record(
                                Record::RealquadConfocal {
                                    seed_index,
                                    point,
                                    verified,
                                },
                                verified,
                            )?;
                        }
                    }
                    Err(e @ (Error::AutomorphNotFound(_) | Error::DegenerateParameter(_))) => {
                        w.note(format!("confocal extension skipped: {e}"))?
                    }
                    Err(e) => return Err(e.into()),
                }
            }
        }
    }
    w.summary(format!("delta {delta}"))
}

pub fn realquad_verified(
    point: &ratdist::rings::RealQuadPoint,
    o: &(BigInt, BigInt),
    p: &(BigInt, BigInt),
) -> bool {
    let unit_ok = point
        .omega
        .as_ref()
        .map_or(true, |w| w.is_unit() && w.is_one_mod_two());
    unit_ok && point.verify((&o.0, &o.1), (&p.0, &p.1))
}

pub fn ring_gauss<W: Write>(w: &mut Writer<W>, re: i64, im: i64, count: usize, bound: u64) -> Result<Outcome, CliError> {
    let alpha = GaussianInt::new(re, im);
    let system = gaussian_decompose(&alpha)?;
    w.header(Config::RingGauss {
        alpha: alpha.clone(),
        count,
        bound,
    })?;
    let verified = system.verify();
    w.record(Record::GaussianSystem { system: system.clone(), verified }, verified)?;
    let orbit = gaussian_orbit(&system, count, bound)?;
    if let Some(note) = &orbit.note {
        w.note(note.clone())?;
    }
    let filtered = orbit.filtered.len();
    for sol in orbit.points {
        let verified = sol.verify(&alpha) && sol.verify_norms(&alpha);
        w.record(Record::Gaussian { sol, verified }, verified)?;
    }
    // Pairs without an integral plane point are still orbit solutions.
    for sol in orbit.filtered.into_iter().take(count) {
        let verified = sol.verify_norms(&alpha);
        w.record(Record::Gaussian { sol, verified }, verified)?;
    }
    w.summary(format!("{filtered} orbit pairs failed the parity filter"))
}

pub fn verify_point<W: Write>(
    w: &mut Writer<W>,
    points: Option<String>,
    points_file: Option<PathBuf>,
    q: Option<String>,
) -> Result<Outcome, CliError> {
    let pts = match (points, points_file) {
        (Some(s), _) => parse_points(&s)?,
        (None, Some(path)) => parse_points(&std::fs::read_to_string(path)?)?,
        (None, None) => return Err(Error::Parse("give --points, --points-file or --file".into()).into()),
    };
    let q = parse_point(q.as_deref().ok_or_else(|| Error::Parse("--q is required".into()))?)?;
    w.header(Config::Verify {
        points: pts.clone(),
        q: Some(q.clone()),
    })?;
    let reports = verify_distances(&pts, &q)?;
    let n = reports.len();
    for report in reports {
        let rational = report.distance.is_some();
        w.record(Record::Distance { report }, rational)?;
    }
    w.summary(format!("{n} distances"))
}

pub fn search4<W: Write>(w: &mut Writer<W>, points: &str, height: u64) -> Result<Outcome, CliError> {
    let pts = parse_points(points)?;
    let hits = run_search4(&pts, height)?;
    w.header(Config::Search4 {
        points: pts.clone(),
        height,
    })?;
    let n = hits.len();
    for hit in hits {
        let verified = verify_distances(&pts, &hit.q)?.iter().all(|d| d.distance.is_some());
        w.record(Record::Hit { hit, verified }, verified)?;
    }
    w.summary(format!("{n} points found at height <= {height}"))?;
    Ok(Outcome::Ok)
}
