use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("field of order {p}^{degree} does not fit in machine words")]
    FieldTooLarge { p: u64, degree: usize },
    #[error("polynomial is not monic")]
    NonMonic,
    #[error("polynomial is reducible")]
    ReduciblePoly,
    #[error("invalid field element: {0}")]
    InvalidElement(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("characteristic polynomial does not split over the field")]
    DoesNotSplit,
    #[error("alpha must be nonzero")]
    ZeroAlpha,
    #[error("expected {expected} deltas, got {got}")]
    WrongDeltaCount { expected: usize, got: usize },
    #[error("image of z is not a nonzero scalar matrix")]
    NotScalarCenter,
    #[error("dimension {dim} differs from p^n = {expected}")]
    WrongDimension { dim: usize, expected: usize },
    #[error("minimal polynomial of {0} is not of the form X^p - delta")]
    MinPolyShape(String),
    #[error("bracket relations violated: {0}")]
    RelationViolated(String),
    #[error("element has degree {got} over the prime field, expected {expected}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("target field is not an extension of the source field")]
    NotExtension,
    #[error("search space too large: {0}")]
    TooLarge(String),
    #[error("irreducibility undecided after {0} Norton samples")]
    Undecided(usize),
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("{path}: {message}")]
    Schema { path: String, message: String },
}
