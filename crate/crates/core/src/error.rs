use thiserror::Error;

/// Everything that can go wrong while building, checking or analysing a
/// representation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed token `{0}` (expected a nonzero integer)")]
    MalformedToken(String),
    #[error("generator {letter} out of range for {strands} strands")]
    GeneratorOutOfRange { letter: i32, strands: usize },
    #[error("strand count must be at least 2, got {0}")]
    InvalidStrandCount(usize),
    #[error("theta = {theta} is inadmissible (b^2 = {b_squared})")]
    InadmissibleTheta { theta: f64, b_squared: f64 },
    #[error("conjugate tau3 choice needs a primitive 8th root of unity, theta = {theta}")]
    EighthRootRequired { theta: f64 },
    #[error("q = -1 makes the Jones matrices singular")]
    DegenerateQ,
    #[error("odd strand count {0}; the Majorana construction needs an even count")]
    OddStrandCount(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("{label}: braid relations violated (max residual {residual:e})")]
    RelationsViolated { label: String, residual: f64 },
    #[error("no proper common invariant subspace within tolerance")]
    NoProperInvariantSubspace,
    #[error("no positive definite invariant Hermitian form")]
    NotUnitarizable,
    #[error("strand mismatch: expected {expected}, found {found}")]
    StrandMismatch { expected: usize, found: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("layout is not a two-qubit layout of diagonal-tau1 qubit representations")]
    NotAQubitLayout,
    #[error("a single exchange eigenvalue forces an abelian representation")]
    AbelianForced,
    #[error("enumerated ball exceeds the configured limit of {limit} elements")]
    BallTooLarge { limit: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
