use thiserror::Error;

#[derive(Debug, Error)]
pub enum SeriesError {
    #[error("division by a series that is zero to truncation")]
    DivisionByZero,
    #[error("series square root needs an even valuation, got {0}")]
    OddValuation(i64),
    #[error("leading coefficient has no square root in the coefficient domain")]
    NotASquare,
    #[error("need at least {needed} terms, have {have}")]
    TooShort { needed: usize, have: usize },
    #[error("invalid model: {0}")]
    Model(String),
    #[error("point is 2-torsion; use the Hensel expansion")]
    TwoTorsion,
    #[error("point is not 2-torsion")]
    NotTwoTorsion,
    #[error("point is off the curve (residual 2^{0:.1})")]
    OffCurve(f64),
    #[error("system has {equations} equations in {variables} variables")]
    NonSquare { equations: usize, variables: usize },
    #[error("Jacobian is numerically singular")]
    Singular,
    #[error("Newton iteration diverged after {iterations} steps (residual 2^{residual_log2:.1})")]
    Diverged { iterations: usize, residual_log2: f64 },
    #[error("zero scaling factor")]
    ZeroScale,
    #[error("coefficients with equal weights cannot be normalized against each other")]
    EqualWeights,
    #[error("the map is constant")]
    ConstantMap,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, SeriesError>;
