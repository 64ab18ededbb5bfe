use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarParseError {
    #[error("decimal literal `{0}` is not allowed in an exact field")]
    Decimal(String),
    #[error("malformed exact literal `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("shape mismatch: {0}x{1} times {2}x{3}")]
    Shape(usize, usize, usize, usize),
    #[error("matrix is singular")]
    Singular,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("bracket index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("[e_{0}, e_{0}] must vanish by antisymmetry")]
    SelfBracket(usize),
    #[error("conflicting values for [e_{i}, e_{j}] along e_{k}")]
    Conflict { i: usize, j: usize, k: usize },
    #[error("structure table has {got} entries, expected {expected}")]
    TableShape { got: usize, expected: usize },
    #[error("structure constants are not antisymmetric at ({i}, {j}, {k})")]
    NotAntisymmetric { i: usize, j: usize, k: usize },
    #[error("vector of length {got} does not live in ambient dimension {dim}")]
    AmbientMismatch { got: usize, dim: usize },
    #[error("Jacobi identity fails on ({0}, {1}, {2})")]
    Jacobi(usize, usize, usize),
    #[error("NotAnIdeal: [e_{basis}, h_{member}] leaves the subspace")]
    NotAnIdeal { basis: usize, member: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TorusError {
    #[error("InvalidSpec: {0}")]
    InvalidSpec(String),
    #[error("ModeKilled: mode {0:?} does not survive the basic and invariance constraints")]
    ModeKilled(Vec<i64>),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WitnessError {
    #[error("invalid bump family: {0}")]
    InvalidFamily(String),
    #[error("BoundViolated at k={k}, m={m}, t={t}: measured {measured} > bound {bound}")]
    BoundViolated { k: u32, m: usize, t: f64, measured: f64, bound: f64 },
}
