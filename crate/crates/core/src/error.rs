use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("degree {0} is outside 1..={max}", max = crate::perm::MAX_DEGREE)]
    InvalidDegree(usize),
    #[error("image array is not a bijection of 1..={0}")]
    NotBijection(usize),
    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
    #[error("partition totals differ: {0} vs {1}")]
    TotalMismatch(usize, usize),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("element is not a member of the ambient group")]
    NotMember,
    #[error("group is not transitive")]
    NotTransitive,
    #[error("triple does not satisfy sigma_inf * sigma1 * sigma0 = 1")]
    ProductNotIdentity,
    #[error("invalid genus data: {0}")]
    Genus(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
