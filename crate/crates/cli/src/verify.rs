//! Re-verification of a JSON-lines file written by this tool.

use std::io::Write;
use std::path::Path;

use num_bigint::BigInt;
use ratdist::density::{decide_rational_density, decide_square_density};
use ratdist::kummer::{derive_quartic, quartic_eval};
use ratdist::search::verify_distances;
use ratdist::three_point::{frame, ThreePointFrame};
use ratdist::two_point::TwoPointConfig;
use ratdist::Error;

use crate::commands::{collinear_check, quartic_check, realquad_verified, Writer};
use crate::records::{Config, Record};
use crate::{CliError, Outcome};

/// Per-config state reused across records.
enum Context {
    Plain,
    Two(TwoPointConfig),
    Three(ThreePointFrame),
}

fn context(config: &Config) -> Result<Context, Error> {
    Ok(match config {
        Config::Gen2 { o, p, .. } => {
            let r = |q: &ratdist::geometry::PlanePoint| match (q.x.to_rational(), q.y.to_rational()) {
                (Some(x), Some(y)) => Ok((x, y)),
                _ => Err(Error::Parse("gen2 points must be rational".into())),
            };
            Context::Two(TwoPointConfig::new(r(o)?, r(p)?)?)
        }
        Config::Gen3 { triangle, origin, .. } => Context::Three(frame(triangle, *origin)?),
        _ => Context::Plain,
    })
}

/// `Ok(())` when the record re-verifies against the header's config.
fn check(record: &Record, config: &Config, ctx: &Context) -> Result<(), String> {
    let ok = |b: bool, what: &str| if b { Ok(()) } else { Err(what.to_string()) };
    let e = |e: Error| e.to_string();
    match (record, config, ctx) {
        (Record::Frame { origin, gram }, Config::Decide { triangle }, _) => {
            ok(&triangle.gram_frame(*origin).map_err(e)? == gram, "frame differs")
        }
        (Record::Verdict { test, verdict }, Config::Decide { triangle }, _) => {
            let fresh = match test.as_str() {
                "rational_distances" => decide_rational_density(triangle),
                "rational_squared_distances" => decide_square_density(triangle),
                _ => return Err(format!("unknown test {test}")),
            }
            .map_err(e)?;
            ok(&fresh == verdict && verdict.certificate_holds(triangle, 0), "verdict differs")
        }
        (Record::Solution2 { sol, .. }, _, Context::Two(cfg)) => ok(sol.verify(cfg), "solution fails"),
        (Record::Solution3 { sol, .. }, _, Context::Three(f)) => ok(sol.verify(f), "solution fails"),
        (Record::Fiber { .. }, Config::Gen3 { .. }, _) => Ok(()),
        (Record::Collinear { sol, q, .. }, Config::Gen3Collinear { p, q: qq, ambient, .. }, _) => {
            let (point, good) = collinear_check(sol, p, qq, ambient);
            ok(good && &point == q, "collinear solution fails")
        }
        (Record::Quartic { quartic, .. }, Config::Kummer { a, b }, _) => {
            let fresh = derive_quartic(a, b).map_err(e)?;
            ok(&fresh == quartic && quartic_check(quartic), "quartic differs")
        }
        (Record::Residual { z, u, v, residual }, Config::Kummer { a, b }, _) => {
            let kq = derive_quartic(a, b).map_err(e)?;
            ok(&quartic_eval(&kq, z, u, v) == residual, "residual differs")
        }
        (Record::RealquadLine { point, .. } | Record::RealquadConfocal { point, .. }, Config::RingReal { o, p, .. }, _) => {
            let ob = (BigInt::from(o.0), BigInt::from(o.1));
            let pb = (BigInt::from(p.0), BigInt::from(p.1));
            ok(realquad_verified(point, &ob, &pb), "ring point fails")
        }
        (Record::GaussianSystem { system, .. }, Config::RingGauss { alpha, .. }, _) => {
            ok(system.verify() && &system.alpha == alpha, "system fails")
        }
        (Record::Gaussian { sol, .. }, Config::RingGauss { alpha, .. }, _) => {
            let point_ok = sol.point.is_none() || sol.verify(alpha);
            ok(point_ok && sol.verify_norms(alpha), "orbit solution fails")
        },
        (Record::Distance { report }, Config::Verify { points, q: Some(q) }, _) => {
            let fresh = verify_distances(points, q).map_err(e)?;
            ok(fresh.get(report.index) == Some(report), "distance differs")
        }
        (Record::Hit { hit, .. }, Config::Search4 { points, .. }, _) => {
            let fresh = verify_distances(points, &hit.q).map_err(e)?;
            ok(
                fresh.iter().all(|d| d.distance.is_some()) && fresh == hit.distances,
                "hit fails",
            )
        }
        _ => Err("record kind does not belong to this command".into()),
    }
}

pub fn verify_file<W: Write>(w: &mut Writer<W>, path: &Path) -> Result<Outcome, CliError> {
    let text = std::fs::read_to_string(path)?;
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, first) = lines.next().ok_or_else(|| Error::Parse("empty file".into()))?;
    let config = match serde_json::from_str::<Record>(first)? {
        Record::Header { config, .. } => config,
        _ => return Err(Error::Parse("first record must be a header".into()).into()),
    };
    w.header(Config::VerifyFile {
        file: path.display().to_string(),
    })?;
    let ctx = context(&config)?;
    for (i, line) in lines {
        let record: Record = match serde_json::from_str(line) {
            Ok(r) => r,
            Err(err) => {
                w.tally(false);
                w.note(format!("line {}: {err}", i + 1))?;
                continue;
            }
        };
        if matches!(record, Record::Note { .. } | Record::Summary { .. }) {
            continue;
        }
        let mut result = check(&record, &config, &ctx);
        if result.is_ok() && serde_json::to_string(&record)? != line {
            result = Err("re-serialization differs".into());
        }
        w.tally(result.is_ok());
        if let Err(why) = result {
            w.note(format!("line {}: {why}", i + 1))?;
        }
    }
    w.summary(format!("checked {}", path.display()))
}
