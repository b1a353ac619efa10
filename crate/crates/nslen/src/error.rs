use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("images of length {len} are not a bijection of 1..={len}")]
    NotAPermutation { len: usize },
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("group is not transitive on its moved points")]
    NotTransitive,
    #[error("element does not belong to the group")]
    NotAMember,
    #[error("exactness unavailable: {what} needs {needed} but the cap is {cap}")]
    CapExceeded {
        what: &'static str,
        needed: String,
        cap: String,
    },
    #[error("action is not invariant under the group")]
    ActionNotInvariant,
    #[error("no faithful quotient representation found within caps: {0}")]
    NoQuotientRepresentation(String),
    #[error("kernels do not intersect trivially")]
    NontrivialIntersection,
    #[error("{0} is not a prime power")]
    NotAPrimePower(u64),
    #[error("singular matrix over GF({0})")]
    SingularMatrix(u64),
    #[error("unsupported field GF({0}); only p^k with p in {{2,3,5,7}}, k <= 2")]
    UnsupportedField(u64),
    #[error("group is not solvable")]
    NotSolvable,
    #[error("inconsistent subdirect identifications: {0}")]
    BadIdentification(String),
    #[error("search exhausted its caps without a witness: {0}")]
    SearchExhausted(String),
    #[error("certificate check failed: {0}")]
    CertificateInvalid(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error("malformed input: {0}")]
    BadInput(String),
    #[error("unknown recipe: {0}")]
    UnknownRecipe(String),
}

pub type Result<T> = std::result::Result<T, Error>;
