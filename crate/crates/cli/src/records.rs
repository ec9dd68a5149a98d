//! JSON-lines records. Every file starts with a [`Record::Header`].

use ratdist::arith::{serde_rational, FactorBudget, Rational};
use ratdist::density::Verdict;
use ratdist::geometry::{GramFrame, PlanePoint, Triangle};
use ratdist::kummer::KummerQuartic;
use ratdist::rings::{GaussianInt, GaussianSolution, GaussianSystem, RealQuadPoint};
use ratdist::search::{DistanceReport, SearchHit};
use ratdist::three_point::{CollinearSolution, FiberReport, Solution3};
use ratdist::two_point::Solution2;
use serde::{Deserialize, Serialize};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Record {
    Header {
        schema: u32,
        command: String,
        config: Config,
        factor_budget: FactorBudget,
    },
    Frame {
        origin: usize,
        gram: GramFrame,
    },
    Verdict {
        test: String,
        #[serde(flatten)]
        verdict: Verdict,
    },
    Solution2 {
        #[serde(flatten)]
        sol: Solution2,
        verified: bool,
    },
    Solution3 {
        #[serde(flatten)]
        sol: Solution3,
        verified: bool,
    },
    Fiber {
        #[serde(flatten)]
        report: FiberReport,
    },
    Collinear {
        #[serde(flatten)]
        sol: CollinearSolution,
        q: Option<PlanePoint>,
        verified: bool,
    },
    Quartic {
        #[serde(flatten)]
        quartic: KummerQuartic,
        verified: bool,
    },
    Residual {
        #[serde(with = "serde_rational")]
        z: Rational,
        #[serde(with = "serde_rational")]
        u: Rational,
        #[serde(with = "serde_rational")]
        v: Rational,
        #[serde(with = "serde_rational")]
        residual: Rational,
    },
    RealquadLine {
        #[serde(flatten)]
        point: RealQuadPoint,
        verified: bool,
    },
    RealquadConfocal {
        seed_index: usize,
        #[serde(flatten)]
        point: RealQuadPoint,
        verified: bool,
    },
    GaussianSystem {
        #[serde(flatten)]
        system: GaussianSystem,
        verified: bool,
    },
    Gaussian {
        #[serde(flatten)]
        sol: GaussianSolution,
        verified: bool,
    },
    Distance {
        #[serde(flatten)]
        report: DistanceReport,
    },
    Hit {
        #[serde(flatten)]
        hit: SearchHit,
        verified: bool,
    },
    Note {
        message: String,
    },
    Summary {
        records: usize,
        all_verified: bool,
        detail: String,
    },
}

/// Inputs of a run, enough to re-verify every record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum Config {
    Decide {
        triangle: Triangle,
    },
    Gen2 {
        o: PlanePoint,
        p: PlanePoint,
        count: usize,
        seed: u64,
    },
    Gen3 {
        triangle: Triangle,
        origin: usize,
        fibers: usize,
        multiples: u32,
        seed: u64,
    },
    Gen3Collinear {
        #[serde(with = "serde_rational")]
        p: Rational,
        #[serde(with = "serde_rational")]
        q: Rational,
        /// Ambient origin and `P - O`, when the input had coordinates.
        ambient: Option<(PlanePoint, PlanePoint)>,
        pairs: PairSource,
        realonly: bool,
    },
    Kummer {
        #[serde(with = "serde_rational")]
        a: Rational,
        #[serde(with = "serde_rational")]
        b: Rational,
    },
    RingReal {
        delta: u64,
        o: (i64, i64),
        p: (i64, i64),
        count: usize,
        extend: usize,
        bound: u64,
    },
    RingGauss {
        alpha: GaussianInt,
        count: usize,
        bound: u64,
    },
    Verify {
        points: Vec<PlanePoint>,
        q: Option<PlanePoint>,
    },
    Search4 {
        points: Vec<PlanePoint>,
        height: u64,
    },
    VerifyFile {
        file: String,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairSource {
    Explicit(Vec<[String; 2]>),
    Seeded { count: usize, seed: u64 },
}
