use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Two pairs of the same class with different counts for `p[i][j][k]`.
#[derive(Debug, Error, Clone, PartialEq)]
#[error("p[{i}][{j}][{k}] is not constant: {first} at ({x1},{y1}) but {second} at ({x2},{y2})")]
pub struct IntersectionMismatch {
    pub i: String,
    pub j: String,
    pub k: String,
    pub first: u64,
    pub second: u64,
    pub x1: String,
    pub y1: String,
    pub x2: String,
    pub y2: String,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("class `{0}` has no pairs")]
    EmptyClass(String),

    #[error("the diagonal of X×X is not a single class")]
    NoIdentityClass,

    #[error("transpose of class `{class}` is not a class")]
    NoInvolution { class: String },

    #[error("{0}")]
    InconsistentIntersection(Box<IntersectionMismatch>),

    #[error("invalid Cayley table: {0}")]
    InvalidCayleyTable(String),

    #[error("not a subgroup: {0}")]
    NotASubgroup(String),

    #[error("graph is not distance-regular: {0}")]
    NotDistanceRegular(String),

    #[error("map is not a bijection: {0}")]
    NotBijective(String),

    #[error("hypergroup is not commutative: {0}")]
    NotCommutative(String),

    #[error("joint diagonalization left a cluster of dimension {dim} unsplit (residual {residual:e})")]
    DegenerateSplitFailure { dim: usize, residual: f64 },

    #[error("dual coefficient {value:e} at ({alpha},{beta})->{gamma} is negative")]
    NegativeCoefficient {
        alpha: usize,
        beta: usize,
        gamma: usize,
        value: f64,
    },

    #[error("dual product ({alpha},{beta}) has a negative coefficient {value:e}")]
    DualNotPositive { alpha: usize, beta: usize, value: f64 },

    #[error("stochastic matrix of class `{class}` has wrong support at ({x},{y})")]
    SupportMismatch { class: String, x: String, y: String },

    #[error("matrix of class `{class}` is not stochastic at row `{row}` (row sum {sum})")]
    NotStochastic { class: String, row: String, sum: f64 },

    #[error("detailed balance fails for class `{class}` at ({x},{y}): relative residual {residual:e}")]
    DetailedBalanceViolation {
        class: String,
        x: String,
        y: String,
        residual: f64,
    },

    #[error("closure S_{i} S_{j} fails with residual {residual:e}")]
    ClosureResidual { i: String, j: String, residual: f64 },

    #[error("matrix is not square: {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },

    #[error("function is not a character (multiplicativity residual {residual:e})")]
    NotACharacter { residual: f64 },

    #[error("closed form is singular at x = {x}")]
    ClosedFormSingular { x: f64 },

    #[error("ball has {vertices} vertices, above the budget of {budget}")]
    BallTooLarge { vertices: usize, budget: usize },

    #[error("quadrature did not converge: doubling the cutoff changed the value by {change:e}")]
    QuadratureNotConverged { change: f64 },

    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),

    #[error("windowed scheme does not determine {0}")]
    IncompleteWindow(String),

    #[error("hypergroup axiom `{axiom}` fails: {witness}")]
    AxiomViolation { axiom: String, witness: String },
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "InvalidInput",
            Error::Parse(_) => "ParseError",
            Error::EmptyClass(_) => "EmptyClass",
            Error::NoIdentityClass => "NoIdentityClass",
            Error::NoInvolution { .. } => "NoInvolution",
            Error::InconsistentIntersection(_) => "InconsistentIntersection",
            Error::InvalidCayleyTable(_) => "InvalidCayleyTable",
            Error::NotASubgroup(_) => "NotASubgroup",
            Error::NotDistanceRegular(_) => "NotDistanceRegular",
            Error::NotBijective(_) => "NotBijective",
            Error::NotCommutative(_) => "NotCommutative",
            Error::DegenerateSplitFailure { .. } => "DegenerateSplitFailure",
            Error::NegativeCoefficient { .. } => "NegativeCoefficient",
            Error::DualNotPositive { .. } => "DualNotPositive",
            Error::SupportMismatch { .. } => "SupportMismatch",
            Error::NotStochastic { .. } => "NotStochastic",
            Error::DetailedBalanceViolation { .. } => "DetailedBalanceViolation",
            Error::ClosureResidual { .. } => "ClosureResidual",
            Error::NonSquare { .. } => "NonSquare",
            Error::NotACharacter { .. } => "NotACharacter",
            Error::ClosedFormSingular { .. } => "ClosedFormSingular",
            Error::BallTooLarge { .. } => "BallTooLarge",
            Error::QuadratureNotConverged { .. } => "QuadratureNotConverged",
            Error::ParameterOutOfRange(_) => "ParameterOutOfRange",
            Error::IncompleteWindow(_) => "IncompleteWindow",
            Error::AxiomViolation { .. } => "AxiomViolation",
        }
    }
}
