use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("zero has no multiplicative order")]
    ZeroOrder,
    #[error("{0} is not a root of unity")]
    NotRootOfUnity(String),
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("inconsistent presentation: 1 reduces to 0")]
    Inconsistent,
    #[error("degree {degree} exceeds cutoff {cutoff}")]
    CutoffExceeded { degree: u32, cutoff: u32 },
    #[error("cutoff {cutoff} is below relation degree {degree}")]
    CutoffTooSmall { degree: u32, cutoff: u32 },
    #[error("relation {index} is not homogeneous: {detail}")]
    NotHomogeneous { index: usize, detail: String },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("braiding is singular")]
    SingularBraiding,
    #[error("{0} is not group-like")]
    NotGroupLike(String),
    #[error("character is not an algebra map: {0}")]
    NotMultiplicative(String),
    #[error("action is not a module-algebra action: {0}")]
    NotModuleAlgebra(String),
    #[error("algebra is not certified finite-dimensional (Gröbner basis incomplete or infinite basis)")]
    NotFiniteDimensional,
    #[error("resolution computed to stage {have}, stage {need} required")]
    InsufficientDepth { have: usize, need: usize },
    #[error("not semisimple: {0}")]
    NotSemisimple(String),
    #[error("hypothesis violated at ({i}, {j}): {reason}")]
    Hypothesis { i: usize, j: usize, reason: String },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid subalgebra: {0}")]
    InvalidSubalgebra(String),
    #[error("twisting map is not invertible")]
    NotInvertible,
    #[error("unresolved name: {0}")]
    Unresolved(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("{0}")]
    Invalid(String),
}
