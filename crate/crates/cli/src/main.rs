//! `ratdist`: deciders, generators and verifiers for points at rational
//! distance from plane configurations. Output is JSON lines; numbers are
//! exact strings.

mod commands;
mod parse;
mod records;
mod verify;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ratdist::arith::FactorBudget;

/// Environment variable holding the factorization budget,
/// `<trial_limit>:<rho_iterations>` or a bare iteration count.
pub const BUDGET_VAR: &str = "RATDIST_FACTOR_BUDGET";

#[derive(Parser, Debug)]
#[command(name = "ratdist", version, about = "Points at rational distance from plane configurations")]
struct Cli {
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct TriangleInput {
    /// Three points, e.g. "0,0 1,0 0,sqrt3".
    #[arg(long, allow_hyphen_values = true)]
    pub points: Option<String>,
    /// Three squared side lengths |P1P2|^2 |P1P3|^2 |P2P3|^2.
    #[arg(long, num_args = 3, allow_hyphen_values = true)]
    pub sides_sq: Option<Vec<String>>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether points at rational (squared) distance are dense.
    Decide {
        #[command(flatten)]
        input: TriangleInput,
    },
    /// Points at rational distance from two points.
    Gen2 {
        /// Two points "O P".
        #[arg(long, allow_hyphen_values = true)]
        points: String,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Points at rational distance from the vertices of a triangle.
    Gen3 {
        #[command(flatten)]
        input: TriangleInput,
        /// Index of the vertex used as origin.
        #[arg(long, default_value_t = 0)]
        origin: usize,
        #[arg(long, default_value_t = 5)]
        fibers: usize,
        #[arg(long, default_value_t = 6)]
        multiples: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Points at rational distance from three collinear points.
    Gen3Collinear {
        /// Three collinear points "O P P'" (alternative to --p/--q).
        #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["p", "q"])]
        points: Option<String>,
        /// |P|^2
        #[arg(long, allow_hyphen_values = true, requires = "q")]
        p: Option<String>,
        /// P' = q P
        #[arg(long, allow_hyphen_values = true, requires = "p")]
        q: Option<String>,
        #[arg(long, default_value_t = 0)]
        origin: usize,
        /// Explicit pairs "k,k' k,k' ...".
        #[arg(long, allow_hyphen_values = true)]
        pairs: Option<String>,
        /// Number of seeded pairs when --pairs is absent.
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Keep solutions with v < 0 (no real point).
        #[arg(long)]
        allow_complex: bool,
    },
    /// The quartic relating the distances to (0,0), (1,0), (a,b).
    Kummer {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        /// Evaluate at distances z u v instead of printing coefficients.
        #[arg(long, num_args = 3, allow_hyphen_values = true)]
        eval: Option<Vec<String>>,
    },
    /// Coordinates and distances in Z[sqrt(delta)].
    RingReal {
        #[arg(long)]
        delta: u64,
        #[arg(long, allow_hyphen_values = true)]
        px: i64,
        #[arg(long, allow_hyphen_values = true)]
        py: i64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        ox: i64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        oy: i64,
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// Further points on the confocal conic through the first
        /// nondegenerate line point.
        #[arg(long, default_value_t = 0)]
        extend: usize,
        #[arg(long, default_value_t = 200)]
        bound: u64,
    },
    /// Coordinates and distances in Z[i].
    RingGauss {
        #[arg(long, allow_hyphen_values = true)]
        alpha_re: i64,
        #[arg(long, allow_hyphen_values = true)]
        alpha_im: i64,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 200)]
        bound: u64,
    },
    /// Exact distances from a candidate point, or re-verification of a
    /// JSON-lines file.
    Verify {
        #[arg(long, allow_hyphen_values = true, conflicts_with = "file")]
        points: Option<String>,
        /// File with points, whitespace or newline separated.
        #[arg(long, conflicts_with_all = ["points", "file"])]
        points_file: Option<PathBuf>,
        /// Candidate point "x,y".
        #[arg(long, allow_hyphen_values = true)]
        q: Option<String>,
        /// A JSON-lines file written by this tool.
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Bounded search for a point at rational distance from every point.
    Search4 {
        #[arg(long, allow_hyphen_values = true)]
        points: String,
        /// Height bound on the lattice coordinates.
        #[arg(long, default_value_t = 20)]
        height: u64,
    },
}

/// How a command ended.
pub enum Outcome {
    /// Success (exit 0).
    Ok,
    /// A negative answer: not dense, not admissible, failed check (exit 1).
    Negative,
}

#[derive(Debug)]
pub enum CliError {
    Module(ratdist::Error),
    Io(io::Error),
    Json(serde_json::Error),
}

impl From<ratdist::Error> for CliError {
    fn from(e: ratdist::Error) -> Self {
        CliError::Module(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Json(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Module(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
            CliError::Json(e) => write!(f, "{e}"),
        }
    }
}

fn budget() -> Result<FactorBudget, CliError> {
    let b = match std::env::var(BUDGET_VAR) {
        Ok(s) => FactorBudget::parse(&s)?,
        Err(_) => FactorBudget::default(),
    };
    b.install();
    Ok(b)
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let budget = budget()?;
    let sink: Box<dyn Write> = match &cli.out {
        Some(path) => Box::new(File::create(path)?),
        None => Box::new(io::stdout().lock()),
    };
    let mut w = commands::Writer::new(BufWriter::new(sink), budget);
    let outcome = match cli.command {
        Command::Decide { input } => commands::decide(&mut w, &input),
        Command::Gen2 { points, count, seed } => commands::gen2(&mut w, &points, count, seed),
        Command::Gen3 {
            input,
            origin,
            fibers,
            multiples,
            seed,
        } => commands::gen3(&mut w, &input, origin, fibers, multiples, seed),
        Command::Gen3Collinear {
            points,
            p,
            q,
            origin,
            pairs,
            count,
            seed,
            allow_complex,
        } => commands::gen3_collinear(
            &mut w,
            commands::CollinearInput {
                points,
                p,
                q,
                origin,
                pairs,
                count,
                seed,
                realonly: !allow_complex,
            },
        ),
        Command::Kummer { a, b, eval } => commands::kummer(&mut w, &a, &b, eval.as_deref()),
        Command::RingReal {
            delta,
            px,
            py,
            ox,
            oy,
            count,
            extend,
            bound,
        } => commands::ring_real(&mut w, delta, (ox, oy), (px, py), count, extend, bound),
        Command::RingGauss {
            alpha_re,
            alpha_im,
            count,
            bound,
        } => commands::ring_gauss(&mut w, alpha_re, alpha_im, count, bound),
        Command::Verify {
            points,
            points_file,
            q,
            file,
        } => match file {
            Some(path) => verify::verify_file(&mut w, &path),
            None => commands::verify_point(&mut w, points, points_file, q),
        },
        Command::Search4 { points, height } => commands::search4(&mut w, &points, height),
    };
    w.flush()?;
    outcome
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Negative) => ExitCode::from(1),
        Err(CliError::Module(e @ (ratdist::Error::NotAdmissible(_) | ratdist::Error::Collinear))) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
