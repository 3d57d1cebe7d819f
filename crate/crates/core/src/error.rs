use thiserror::Error;

use crate::specfun::SpecFunError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoreError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("rank-deficient channel matrix")]
    RankDeficient,
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
}

pub type Result<T> = std::result::Result<T, CoreError>;
