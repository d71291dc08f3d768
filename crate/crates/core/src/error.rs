use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate coordinate name `{0}`")]
    DuplicateCoordinate(String),
    #[error("unknown coordinate `{0}`")]
    UnknownCoordinate(String),
    #[error("operands live on different coordinate charts")]
    ContextMismatch,
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("structure constants are not antisymmetric: {0}")]
    NotAntisymmetric(String),
    #[error("invalid structure: {0}")]
    InvalidStructure(String),
    #[error("form is not closed; d(omega) = {0}")]
    NotClosed(String),
    #[error("nondegeneracy could not be certified: {0}")]
    NondegeneracyUnverified(String),
    #[error("form is degenerate: {0}")]
    Degenerate(String),
    #[error("vector field is not symplectic; L_X omega = {0}")]
    NotSymplectic(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("master equation fails; {{S,S}} = {0}")]
    MasterEquationFails(String),
    #[error("function is not reducible: {0}")]
    NotReducible(String),
    #[error("internal verification failed: {0}")]
    Verification(String),
}
