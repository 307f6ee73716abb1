use thiserror::Error;

use crate::numfield::SplitReport;
use crate::rat::Rat;

/// Everything that can go wrong in the exact engines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("cannot parse `{0}` as a polynomial")]
    PolyParse(String),
    #[error("modulus must be monic")]
    NonMonicModulus,
    #[error("modulus must have degree at least 1")]
    ConstantModulus,
    #[error("modulus must be square-free")]
    NonSquarefreeModulus,
    #[error("factorization is not supported beyond degree 6 (got degree {0})")]
    UnsupportedFactorDegree(usize),
    #[error("coefficients too large for the bundled factorizer")]
    FactorizationOverflow,
    #[error("zero divisor found, modulus splits: {0}")]
    FieldSplit(SplitReport),
    #[error("operands belong to different ground fields")]
    FieldMismatch,
    #[error("interval endpoint {0} is a root; perturb it rationally")]
    EndpointIsRoot(Rat),
    #[error("invalid interval: lower bound {lo} must be less than upper bound {hi}")]
    EmptyInterval { lo: Rat, hi: Rat },
    #[error("interval does not isolate exactly one real root")]
    NotIsolating,

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("exterior power {k} out of range for a {n}x{n} matrix")]
    ExteriorOutOfRange { k: usize, n: usize },
    #[error("vectors are linearly dependent")]
    DependentVectors,

    #[error("matrix must have integer entries")]
    NonIntegerMatrix,
    #[error("matrix is not unimodular (determinant must be +1 or -1)")]
    NotUnimodular,
    #[error("invalid Betti data: {0}")]
    BadBetti(String),
    #[error("the map in degree {degree} is singular")]
    SingularMap { degree: usize },
    #[error("bracket index out of range: [e{i},e{j}] -> e{k}")]
    BracketIndex { i: usize, j: usize, k: usize },
    #[error("Jacobi identity fails on (e{i},e{j},e{r}), component e{k}")]
    JacobiViolation { i: usize, j: usize, r: usize, k: usize },
    #[error("map is not a Lie algebra automorphism: bracket ({i},{j}) is not preserved")]
    NotAutomorphism { i: usize, j: usize },
    #[error("automorphism matrix must be invertible")]
    SingularAutomorphism,
    #[error("Lie algebra is not nilpotent")]
    NotNilpotent,

    #[error("twist scalar must be non-zero")]
    ZeroTwist,
    #[error("twist scalar 1 is only valid for mapping-torus Betti numbers")]
    UnitTwist,
    #[error("twist scalar must pin a positive real number")]
    MuNotPositive,
    #[error("alpha must be a non-zero vector")]
    AlphaZero,
    #[error("alpha is not an eigenvector for the given twist")]
    AlphaNotEigenvector,
    #[error("alpha entries do not live in the twist's ground field")]
    AlphaFieldMismatch,
    #[error("a model foliation needs dim H^1 of the fiber >= 2, got {b1}")]
    FiberTooSmall { b1: usize },
    #[error("degree {k} out of range (top degree {top})")]
    DegreeOutOfRange { k: usize, top: usize },

    #[error("oracle grid must have at least 8 points, got {grid}")]
    GridTooSmall { grid: usize },
    #[error("oracle tolerance must lie strictly between 0 and 1, got {tol}")]
    BadTolerance { tol: f64 },
    #[error("oracle requires mu > 0, got {mu}")]
    NonPositiveMu { mu: f64 },
    #[error("lambda = 0 admits no periodic solution for non-zero-mean data")]
    ZeroLambda,
    #[error("sampled function is not periodic within tolerance")]
    NotPeriodic,
}

pub type Result<T> = std::result::Result<T, Error>;
