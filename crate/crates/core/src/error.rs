use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("discriminant {0} is not in the Euclidean list {{1, 2, 3, 7, 11}}")]
    BadDiscriminant(i64),
    #[error("division by zero in Z[w_{0}]")]
    DivisionByZero(u8),
    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,
    #[error("(0, 0) does not represent a point of Q(sqrt(-d)) + infinity")]
    ZeroOverZero,
    #[error("infinity has no finite coordinates")]
    InfinityNotFinite,
    #[error("operation needs a nonzero argument")]
    ZeroArgument,
    #[error("matrix determinant {det} is not a unit")]
    NonUnitDeterminant { det: String },
    #[error("no unit u gives det(uA) = 1 for det = {det}; tried {tried:?}")]
    NoDetNormalization { det: String, tried: Vec<String> },
    #[error("continued fraction expansions need at least one digit")]
    EmptyExpansion,
    #[error("walk must start at infinity")]
    WalkMustStartAtInfinity,
    #[error("walk vertices {0} and {1} are not adjacent in the Farey graph")]
    NonAdjacentWalk(String, String),
    #[error("walk step {0} does not produce an integral digit")]
    NonIntegralDigit(usize),
    #[error("infinity has infinitely many neighbors; use integer_neighbors_of_infinity with a cap")]
    InfiniteNeighborhood,
    #[error("polygon kind {kind} is not defined for d = {d}")]
    IllegalPolygonKind { kind: &'static str, d: u8 },
    #[error("conjugated standard cells exist only for d = 3, 7, 11 (got d = {0})")]
    NoConjugatedCell(u8),
    #[error("tessellation generation is implemented for d = 7 only")]
    TessellationUnsupported,
    #[error("the nearest-integer algorithm is defined for d = 1, 2, 3 (got d = {0})")]
    NicfUnsupported(u8),
    #[error("wall expansions are defined for d = 2, 7, 11 (got d = {0})")]
    WallUnsupported(u8),
    #[error("value out of the map's domain: {0}")]
    OutOfDomain(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
