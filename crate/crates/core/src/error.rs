use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("line {line}: boundary of {k}-cell {cell} references nonexistent face {face}")]
    DanglingFace {
        line: usize,
        k: usize,
        cell: usize,
        face: usize,
    },

    #[error("line {line}: face {face} listed twice in the boundary of {k}-cell {cell}")]
    DuplicateFace {
        line: usize,
        k: usize,
        cell: usize,
        face: usize,
    },

    #[error("complex dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),

    #[error("complex failed validation: {0}")]
    InvalidComplex(String),

    #[error("unsupported generator `{0}`")]
    UnsupportedGenerator(String),

    #[error("bad generator parameters: {0}")]
    GeneratorParameters(String),

    #[error("chain degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("degree {degree} out of range 0..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },

    #[error("chain references {degree}-cell {cell} but only {count} exist")]
    ChainOutOfRange {
        degree: usize,
        cell: usize,
        count: usize,
    },

    #[error("complex mismatch: {0}")]
    ComplexMismatch(String),

    #[error("no consistent dual sign assignment: {0}")]
    DualInconsistent(String),

    #[error("operation requires a {expected}-dimensional complex, got {actual}")]
    WrongDimension { expected: usize, actual: usize },

    #[error("chain must have integer coefficients")]
    NonIntegralChain,

    #[error("chain is not rationally null-homologous: {0}")]
    NotNullHomologous(String),

    #[error("1/z is an eigenvalue of the transfer operator and the pairing is singular there")]
    EigenvalueCollision,

    #[error("linear system is inconsistent")]
    InconsistentSystem,

    #[error("zero polynomial has no well-defined root multiplicity")]
    ZeroPolynomial,

    #[error("requested order {requested} exceeds the enumeration cap {cap}")]
    EnumerationCap { requested: usize, cap: usize },

    #[error(
        "enumeration and matrix computations disagree at length {length}: {enumerated} vs {matrix}"
    )]
    InternalMismatch {
        length: usize,
        enumerated: String,
        matrix: String,
    },

    #[error("invalid rational `{0}` (expected p/q or an integer)")]
    BadRational(String),

    #[error("group action: {0}")]
    BadAction(String),

    #[error("operator does not commute with the deck group action")]
    NotEquivariant,

    #[error("operator is not positive semidefinite (eigenvalue {0})")]
    NotPositiveSemidefinite(f64),

    #[error("numerical spectrum inconsistent with exact kernel dimension: {0}")]
    SpectrumMismatch(String),

    #[error("cover parameters: {0}")]
    CoverParameters(String),
}

pub type Result<T> = std::result::Result<T, Error>;
