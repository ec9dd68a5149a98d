use thiserror::Error;

/// Errors raised by the arithmetic, geometry and generator modules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("factorization effort budget exceeded for {0}")]
    FactorizationLimitExceeded(String),
    #[error("zero is not allowed here")]
    ZeroInput,
    #[error("mixed quadratic fields: sqrt{0} and sqrt{1}")]
    MixedField(u64, u64),
    #[error("division by zero")]
    DivisionByZero,

    #[error("the form has no nontrivial rational zero")]
    NoSolution,
    #[error("conic point search exhausted its bound ({0})")]
    SearchExhausted(String),
    #[error("degenerate conic")]
    DegenerateConic,

    #[error("Gram entry {0} is not rational")]
    NotRationalGram(String),
    #[error("configuration is collinear")]
    Collinear,
    #[error("configuration is not collinear")]
    NotCollinear,
    #[error("coincident points")]
    CoincidentPoints,
    #[error("squared side lengths violate the triangle inequality")]
    NotRealizable,
    #[error("operation needs vertex coordinates, not squared side lengths")]
    MissingCoordinates,
    #[error("singular matrix")]
    SingularMatrix,

    #[error("degenerate parameter: {0}")]
    DegenerateParameter(String),
    #[error("line passes through the origin")]
    LineThroughOrigin,

    #[error("triangle is not admissible: {0}")]
    NotAdmissible(String),
    #[error("the chord lies on the cubic (reducible fiber)")]
    LineOnCurve,
    #[error("singular point on the cubic")]
    SingularPoint,
    #[error("eta equals p on this fiber")]
    EtaEqualsP,
    #[error("point at infinity (H = 0)")]
    PointAtInfinity,
    #[error("excluded denominator: {0}")]
    ExcludedDenominator(&'static str),
    #[error("B vanishes at this parameter")]
    BZero,
    #[error("k vanishes at this parameter")]
    KZero,
    #[error("degenerate pair: q*k = k'")]
    DegeneratePair,

    #[error("b = 0 gives a degenerate quartic")]
    BZeroDegenerate,

    #[error("delta = {0} is a perfect square")]
    PerfectSquareDelta(u64),
    #[error("no automorph found within bound {0}")]
    AutomorphNotFound(u64),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
