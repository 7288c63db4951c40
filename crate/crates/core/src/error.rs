use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(&'static str),
    #[error("polynomial is negative on the unit circle (min {min:.3e})")]
    NotNonnegative { min: f64 },
    #[error("no spectral factor fits the support window [{lo}, {hi}]")]
    NoFactorInWindow { lo: i64, hi: i64 },
    #[error("|a(xi)|^2 + |a(xi+pi)|^2 exceeds 1 by {excess:.3e} at xi = {xi}")]
    ConditionViolated { xi: f64, excess: f64 },
    #[error("expected 2 high-pass filters, found {0}")]
    WrongArity(usize),
    #[error("banks have different low-pass filters")]
    MismatchedLowpass,
    #[error("B-spline order must be at least 1, got {0}")]
    BadOrder(i64),
    #[error("low-pass condition fails: {0}")]
    PreconditionFailed(&'static str),
    #[error("linear system has no nontrivial solution")]
    EmptyNullspace,
    #[error("recovered lambda {re} + {im}i is not positive real")]
    BadLambda { re: f64, im: f64 },
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("column violates the paraunitary constraint (residual {0:.3e})")]
    ConstraintViolated(f64),
    #[error("input bank is not tight (residual {0:.3e})")]
    NotTight(f64),
    #[error("low-pass symbol at 0 is {0}, expected 1")]
    BadLowpass(f64),
    #[error("grids have different levels ({0} vs {1})")]
    LevelMismatch(u32, u32),
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
}
